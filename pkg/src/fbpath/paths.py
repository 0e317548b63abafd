"""Forrester-Baxter lattice paths: band structure, weights, striking sequences.

A path lives on the heights 1..p'-1 and makes unit steps.  Everything about
how it is *weighted* comes from two extra ingredients:

* the post-endpoint height ``c = b +- 1``, which fixes the shape of the last
  vertex, and
* the band parities of the model: the band between heights h and h+1 is odd
  exactly when floor(h*p/p') != floor((h+1)*p/p').

Two weight prescriptions are implemented.  ``wt`` is the local scoring-vertex
sum in the slanted xy-coordinates (x = (i-(h_i-a))/2, y = (i+(h_i-a))/2):

    vertex shape    band of right edge   score
    straight-up     odd                  x
    straight-down   odd                  y
    peak-up         even                 x
    peak-down       even                 y
    (all other shape/parity combinations score 0)

``wt_fb_quarter`` is the classical prescription: vertex i contributes
i*c_fb(h_{i-1}, h_i, h_{i+1}) where straight vertices give 1/2 and a peak
through height h gives -+ floor(h(p'-p)/p') keyed on the flanking height.
Both are returned in exact integer units (quarters for the latter).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator, Literal, Sequence


class PathError(ValueError):
    """Raised when raw data does not describe a valid path or model."""


Shape = Literal["straight-up", "straight-down", "peak-up", "peak-down"]


def _shape(hm: int, h: int, hp: int) -> Shape:
    if hm < h < hp:
        return "straight-up"
    if hm > h > hp:
        return "straight-down"
    if hm < h > hp:
        return "peak-up"
    return "peak-down"


@dataclass(frozen=True)
class ModelParams:
    """Coprime model labels (p, p') with the derived ground-line data.

    s0, r0 are the smallest non-negative integers with |p*s0 - p'*r0| = 1;
    the line h = s0 is the ground-line of the restricted path families.
    """

    p: int
    p_prime: int

    def __post_init__(self):
        p, pp = self.p, self.p_prime
        if not (0 < p < pp):
            raise PathError(f"need 0 < p < p', got ({p}, {pp})")
        if gcd(p, pp) != 1:
            raise PathError(f"p and p' must be coprime, got ({p}, {pp})")

    @property
    def ground(self) -> tuple[int, int]:
        """(s0, r0), the minimal solution of |p*s0 - p'*r0| = 1."""
        return _ground(self.p, self.p_prime)

    @property
    def s0(self) -> int:
        return self.ground[0]

    @property
    def r0(self) -> int:
        return self.ground[1]

    def band_is_odd(self, h: int) -> bool:
        """Parity of the band between heights h and h+1 (1 <= h <= p'-2)."""
        if not (1 <= h <= self.p_prime - 2):
            raise PathError(f"band {h} out of range for p'={self.p_prime}")
        p, pp = self.p, self.p_prime
        return (h * p) // pp != ((h + 1) * p) // pp

    def band_parities(self) -> tuple[bool, ...]:
        """Odd-flags for bands 1..p'-2, bottom to top."""
        return tuple(self.band_is_odd(h) for h in range(1, self.p_prime - 1))

    def odd_band_floor(self, r: int) -> int:
        """Lower edge of the r-th odd band, counted from below."""
        if not (1 <= r <= self.p - 1):
            raise PathError(f"odd band index {r} out of range")
        return (r * self.p_prime) // self.p

    def r_func(self, h: int) -> int:
        """r(h) = floor(p*h/p')."""
        return (self.p * h) // self.p_prime

    def r_hat(self, h: int) -> int:
        """r_hat(h) = floor((p'-p)*h/p')."""
        return ((self.p_prime - self.p) * h) // self.p_prime

    def dual(self) -> "ModelParams":
        """The model (p'-p, p') with all band parities swapped."""
        return ModelParams(self.p_prime - self.p, self.p_prime)

    def zone_data(self):
        """Continued-fraction zone data of p'/p (see :mod:`fbpath.cfmn`)."""
        from . import cfmn

        return cfmn.zones(cfmn.continued_fraction(self.p_prime, self.p))


@lru_cache(maxsize=None)
def _ground(p: int, pp: int) -> tuple[int, int]:
    for s0 in range(pp + 1):
        for r0 in range(s0 + 1):
            if abs(p * s0 - pp * r0) == 1:
                return s0, r0
    raise PathError(f"no ground line for ({p}, {pp})")  # unreachable for coprime


@dataclass(frozen=True)
class Path:
    """A validated path: heights h_0..h_L plus the weighting label c."""

    params: ModelParams
    a: int
    b: int
    c: int
    L: int
    heights: tuple[int, ...]

    def __str__(self) -> str:
        pp = self.params.p_prime
        seq = ",".join(map(str, self.heights))
        return f"P^{{{self.params.p},{pp}}}_{{{self.a},{self.b},{self.c}}}({self.L}): {seq}"


def validate(
    p: int, p_prime: int, a: int, b: int, c: int, heights: Sequence[int]
) -> Path:
    """Check raw integer data and build a Path, or raise PathError.

    The degenerate model p'=2 admits only the empty path at height 1, with
    the conventional label c=2; its band is never consulted since there are
    no vertices.
    """
    params = ModelParams(p, p_prime)
    hs = tuple(heights)
    if not hs:
        raise PathError("empty height sequence")
    L = len(hs) - 1
    if hs[0] != a:
        raise PathError(f"h_0 = {hs[0]} != a = {a}")
    if hs[-1] != b:
        raise PathError(f"h_L = {hs[-1]} != b = {b}")
    for h in hs:
        if not (1 <= h <= p_prime - 1):
            raise PathError(f"height {h} outside [1, {p_prime - 1}]")
    for i in range(L):
        if abs(hs[i + 1] - hs[i]) != 1:
            raise PathError(f"non-unit step at position {i}: {hs[i]} -> {hs[i+1]}")
    if c not in (b - 1, b + 1):
        raise PathError(f"c = {c} is not b +- 1 for b = {b}")
    if not (1 <= c <= p_prime - 1) and not (p_prime == 2 and c == 2):
        raise PathError(f"c = {c} outside [1, {p_prime - 1}]")
    if (L + a - b) % 2:
        raise PathError(f"L + a - b = {L + a - b} must be even")
    return Path(params, a, b, c, L, hs)


def make_path(params: ModelParams, heights: Sequence[int], c: int) -> Path:
    """Build a Path from a height sequence, inferring a, b, L."""
    hs = tuple(heights)
    return validate(params.p, params.p_prime, hs[0], hs[-1], c, hs)


@dataclass(frozen=True)
class VertexInfo:
    """One vertex: shape, right-edge parity, slanted coordinates, score."""

    index: int
    shape: Shape
    odd: bool
    x: int
    y: int
    scoring: bool
    score: int


def vertices(path: Path) -> list[VertexInfo]:
    """VertexInfo for v_1..v_L, using h_{L+1} = c for the last vertex."""
    hs = path.heights + (path.c,)
    a = path.a
    params = path.params
    out = []
    for i in range(1, path.L + 1):
        hm, h, hp = hs[i - 1], hs[i], hs[i + 1]
        sh = _shape(hm, h, hp)
        odd = params.band_is_odd(min(h, hp))
        straight = sh in ("straight-up", "straight-down")
        x = (i - (h - a)) // 2
        y = (i + (h - a)) // 2
        scoring = straight == odd
        if scoring:
            score = x if sh in ("straight-up", "peak-up") else y
        else:
            score = 0
        out.append(VertexInfo(i, sh, odd, x, y, scoring, score))
    return out


def _scoring_flags(p: int, pp: int, hs: Sequence[int], c: int) -> list[bool]:
    """flags[i] for vertices i = 1..L over a raw height sequence (flags[0] unused)."""
    seq = list(hs) + [c]
    L = len(hs) - 1
    flags = [False] * (L + 1)
    for i in range(1, L + 1):
        hm, h, hp = seq[i - 1], seq[i], seq[i + 1]
        straight = (hm < h < hp) or (hm > h > hp)
        band = h if hp > h else hp
        odd = (band * p) // pp != ((band + 1) * p) // pp
        flags[i] = straight == odd
    return flags


def wt(path: Path) -> int:
    """Scoring-vertex weight: the sum of the local x/y contributions."""
    return wt_heights(path.params.p, path.params.p_prime, path.a, path.heights, path.c)


def wt_heights(p: int, pp: int, a: int, hs: Sequence[int], c: int) -> int:
    """wt on raw data; the fast inner loop behind enumeration sweeps."""
    seq = list(hs) + [c]
    L = len(hs) - 1
    total = 0
    for i in range(1, L + 1):
        hm, h, hp = seq[i - 1], seq[i], seq[i + 1]
        up = hm < h
        straight = (h < hp) if up else (h > hp)
        band = h if hp > h else hp
        odd = (band * p) // pp != ((band + 1) * p) // pp
        if straight == odd:
            # scoring straight-up and peak-up take x, the two down shapes take y;
            # both x-shapes are exactly the ones entered by an up segment
            if up:
                total += (i - (h - a)) // 2
            else:
                total += (i + (h - a)) // 2
    return total


def wt_fb_quarter(path: Path) -> int:
    """Classical vertex weight: 4 * sum_i i*c_fb(h_{i-1}, h_i, h_{i+1}).

    Straight vertices contribute i/2; a peak flanked by height h contributes
    -+ i*floor(h(p'-p)/p'), negative for peaks pointing up.  Returned in
    quarter units so the result is an exact integer.
    """
    hs = path.heights + (path.c,)
    p, pp = path.params.p, path.params.p_prime
    total = 0
    for i in range(1, path.L + 1):
        hm, h, hp = hs[i - 1], hs[i], hs[i + 1]
        if hm != hp:  # straight vertex, c_fb = 1/2
            total += 2 * i
        elif hm == h - 1:  # peak-up, flanked by h-1
            total -= 4 * i * (((pp - p) * (h - 1)) // pp)
        else:  # peak-down, flanked by h+1
            total += 4 * i * (((pp - p) * (h + 1)) // pp)
    return total


@dataclass(frozen=True)
class StrikingSequence:
    """Run decomposition of a path into NE/SE lines.

    ``pairs[i] = (a_i, b_i)`` where the i-th maximal line has w_i = a_i + b_i
    segments and contains b_i scoring vertices (a line owns its last vertex
    but not its first).
    """

    first_direction: Literal["NE", "SE", ""]
    pairs: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        """Number of non-scoring vertices, sum of the a_i."""
        return sum(a for a, _ in self.pairs)

    @property
    def beta(self) -> int:
        """Alternating sum (b_1 + b_3 + ...) - (b_2 + b_4 + ...)."""
        bs = [b for _, b in self.pairs]
        return sum(bs[0::2]) - sum(bs[1::2])

    @property
    def length(self) -> int:
        return sum(a + b for a, b in self.pairs)


def striking_sequence(path: Path) -> StrikingSequence:
    """Decompose into maximal constant-direction lines with scoring counts."""
    L = path.L
    if L == 0:
        return StrikingSequence("", ())
    hs = path.heights
    dirs = [hs[i + 1] - hs[i] for i in range(L)]
    flags = _scoring_flags(path.params.p, path.params.p_prime, hs, path.c)
    pairs = []
    i = 0
    while i < L:
        j = i
        while j < L and dirs[j] == dirs[i]:
            j += 1
        # line owns vertices i+1 .. j
        b = sum(1 for k in range(i + 1, j + 1) if flags[k])
        pairs.append((j - i - b, b))
        i = j
    first = "NE" if dirs[0] > 0 else "SE"
    return StrikingSequence(first, tuple(pairs))


def path_from_striking(
    params: ModelParams, start: int, first_direction: str, widths: Sequence[int], c: int
) -> Path:
    """Rebuild a path from its start height, first direction and line widths."""
    heights = [start]
    d = 1 if first_direction == "NE" else -1
    for w in widths:
        for _ in range(w):
            heights.append(heights[-1] + d)
        d = -d
    return make_path(params, heights, c)


def wt_from_striking(seq: StrikingSequence) -> int:
    """Weight recomputed from the striking sequence alone:
    sum_i b_i (w_{i-1} + w_{i-3} + ... + w_{1 + i mod 2})."""
    widths = [a + b for a, b in seq.pairs]
    total = 0
    for i in range(1, len(widths) + 1):
        b = seq.pairs[i - 1][1]
        if b:
            total += b * sum(widths[j - 1] for j in range(i - 1, 0, -2))
    return total


def iter_height_sequences(
    pp: int, a: int, b: int, L: int
) -> Iterator[tuple[int, ...]]:
    """All height sequences h_0..h_L from a to b inside [1, p'-1].

    Depth-first, up-step first, so the order is reproducible.
    """
    if (L + a - b) % 2 or abs(a - b) > L:
        return
    seq = [a] + [0] * L

    def rec(i: int, h: int) -> Iterator[tuple[int, ...]]:
        if i == L:
            if h == b:
                yield tuple(seq)
            return
        rem = L - i - 1
        for nh in (h + 1, h - 1):
            if 1 <= nh <= pp - 1 and abs(nh - b) <= rem:
                seq[i + 1] = nh
                yield from rec(i + 1, nh)

    yield from rec(0, a)


def enumerate_paths(
    params: ModelParams, a: int, b: int, c: int, L: int
) -> Iterator[Path]:
    """Every path with the given labels exactly once (empty if incompatible)."""
    if c not in (b - 1, b + 1):
        return
    if not (1 <= c <= params.p_prime - 1) and not (params.p_prime == 2 and c == 2):
        return
    if not (1 <= a <= params.p_prime - 1 and 1 <= b <= params.p_prime - 1):
        return
    for hs in iter_height_sequences(params.p_prime, a, b, L):
        yield Path(params, a, b, c, L, hs)


def flip(path: Path, i: int) -> Path:
    """Exchange the peak at vertex i for the opposite peak.

    Only defined at peaks; the flipped height must stay inside [1, p'-1].
    An up-down flip at height 1 (or down-up at p'-1) is rejected.
    """
    if not (1 <= i <= path.L):
        raise PathError(f"vertex index {i} out of range")
    hs = path.heights + (path.c,)
    hm, h, hp = hs[i - 1], hs[i], hs[i + 1]
    if hm != hp:
        raise PathError(f"vertex {i} is not a peak")
    new_h = 2 * hm - h
    if not (1 <= new_h <= path.params.p_prime - 1):
        raise PathError(f"flip at {i} leaves the height range")
    if i == path.L:
        raise PathError("cannot flip the final vertex; c is fixed")
    new_heights = path.heights[:i] + (new_h,) + path.heights[i + 1 :]
    return Path(path.params, path.a, path.b, path.c, path.L, new_heights)


# -- JSON interchange -------------------------------------------------------

def path_to_json_dict(path: Path) -> dict:
    return {
        "p": path.params.p,
        "p'": path.params.p_prime,
        "a": path.a,
        "b": path.b,
        "c": path.c,
        "L": path.L,
        "heights": list(path.heights),
    }


def path_from_json_dict(d: dict) -> Path:
    try:
        return validate(d["p"], d["p'"], d["a"], d["b"], d["c"], d["heights"])
    except KeyError as exc:
        raise PathError(f"path JSON missing key {exc}") from exc
