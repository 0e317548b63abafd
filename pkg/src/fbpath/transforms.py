"""Path transforms: dilation, particle insertion, particle motion, duality.

All operations are value-to-value; a transform never mutates its input path.
The composite ``b_transform(h, k, lam)`` sends the ground family of model
(p, p') to that of (p, p'+p):

* ``b1`` stretches every line of the striking sequence by its scoring count
  (one extra same-direction segment in front of each scoring vertex),
* ``b2`` prepends k particles (peak pairs hugging the ground-line inside its
  even neighbouring band),
* ``b3`` moves the particles rightward, one unit of weight per move, as
  dictated by a partition with at most k parts.

``d_transform`` keeps the heights and swaps the model for its parity dual
(p'-p, p').  ``particle_content`` inverts the composite, and the sector
construct/decompose pair chains these maps down to the trivial (1, 3) model.

Local moves are *derived*, not hard-coded: a move is the unique rewrite of a
four-segment window, endpoints pinned, that flips the vertex pattern from
(scoring, scoring, non-scoring) to (non-scoring, scoring, scoring) while
staying inside the height range.  Uniqueness and the +1 weight shift are
asserted on every application, so any divergence from the intended local
rules fails fast instead of corrupting a chain.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iproduct

from . import cfmn
from .paths import (
    ModelParams,
    Path,
    PathError,
    _scoring_flags,
    make_path,
    striking_sequence,
    wt,
)


class TransformError(ValueError):
    pass


@dataclass(frozen=True)
class TransformRecord:
    """Particle count and motion partition of one composite step."""

    k: int
    lam: tuple[int, ...]

    def __post_init__(self):
        lam = self.lam
        if list(lam) != sorted(lam, reverse=True) or any(x <= 0 for x in lam):
            raise TransformError(f"not a partition: {lam}")
        if len(lam) > self.k:
            raise TransformError(f"partition {lam} has more than k={self.k} parts")


@dataclass(frozen=True)
class SectorLabel:
    """Particle counts n-hat plus the motion partitions of each level."""

    n_hat: tuple[int, ...]
    lambdas: tuple[tuple[int, ...], ...]


def _require_ground_family(path: Path) -> None:
    s0 = path.params.s0
    if not (path.a == path.b == s0 and path.c == s0 + 1):
        raise TransformError(
            f"path must be in the ground family a=b={s0}, c={s0 + 1}; "
            f"got a={path.a}, b={path.b}, c={path.c}"
        )


def b1(path: Path) -> Path:
    """Dilation (p, p') -> (p, p'+p): one extra segment per scoring vertex.

    The image starts at the new ground-line s0+r0, its striking sequence is
    (a_i + b_i over b_i), and afterwards no two scoring vertices are adjacent
    and the first vertex is non-scoring.
    """
    _require_ground_family(path)
    params = path.params
    target = ModelParams(params.p, params.p_prime + params.p)
    s0t = params.s0 + params.r0
    assert target.s0 == s0t and target.r0 == params.r0
    if path.L == 0:
        return make_path(target, [s0t], s0t + 1)
    seq = striking_sequence(path)
    widths = [a + 2 * b for a, b in seq.pairs]
    out = _rebuild(target, s0t, seq.first_direction, widths, s0t + 1)
    # consistency with the stated image properties
    new_seq = striking_sequence(out)
    assert [b for _, b in new_seq.pairs] == [b for _, b in seq.pairs]
    assert new_seq.m == path.L
    flags = _flags(out)
    assert not flags[1] and all(
        not (flags[i] and flags[i + 1]) for i in range(1, out.L)
    )
    return out


def b1_inverse(path: Path) -> Path:
    """Strip one segment per scoring vertex: (p, p') -> (p, p'-p).

    Requires no two adjacent scoring vertices and a non-scoring first vertex
    (every b1 image qualifies).
    """
    _require_ground_family(path)
    params = path.params
    if params.p_prime - params.p <= params.p:
        raise TransformError("b1_inverse target needs p < p' - p")
    target = ModelParams(params.p, params.p_prime - params.p)
    s0t = params.s0 - params.r0
    if path.L == 0:
        return make_path(target, [s0t], s0t + 1)
    seq = striking_sequence(path)
    if any(a < b for a, b in seq.pairs):
        raise TransformError("path is not a b1 image (a_i < b_i in some line)")
    widths = [a for a, _ in seq.pairs]
    out = _rebuild(target, s0t, seq.first_direction, widths, s0t + 1)
    assert b1(out).heights == path.heights
    return out


def _rebuild(params, start, first_direction, widths, c) -> Path:
    heights = [start]
    d = 1 if first_direction == "NE" else -1
    for w in widths:
        for _ in range(w):
            heights.append(heights[-1] + d)
        d = -d
    try:
        return make_path(params, heights, c)
    except PathError as exc:
        raise TransformError(f"rebuilt path is invalid: {exc}") from exc


def _flags(path: Path) -> list[bool]:
    return _scoring_flags(
        path.params.p, path.params.p_prime, path.heights, path.c
    )


def _particle_steps(params: ModelParams) -> tuple[int, int]:
    """The two height offsets of an inserted particle at the ground-line.

    The pair dips into whichever band adjacent to s0 is even; exactly one is
    when 1 < s0 < p'-1, and for s0 = 1 (p = 1) the band above is even.
    """
    s0 = params.s0
    below_even = s0 > 1 and not params.band_is_odd(s0 - 1)
    above_even = s0 <= params.p_prime - 2 and not params.band_is_odd(s0)
    if below_even:
        return (s0 - 1, s0)
    if above_even:
        return (s0 + 1, s0)
    raise TransformError(f"no even band borders the ground-line of {params}")


def b2(path: Path, k: int) -> Path:
    """Insert k particles in front of the path (p' > 2p required)."""
    _require_ground_family(path)
    params = path.params
    if params.p_prime <= 2 * params.p:
        raise TransformError("b2 requires p' > 2p")
    if k < 0:
        raise TransformError("particle count must be non-negative")
    if k == 0:
        return path
    lo, hi = _particle_steps(params)
    heights = (path.heights[0],) + (lo, hi) * k + path.heights[1:]
    return Path(params, path.a, path.b, path.c, path.L + 2 * k, heights)


def particle_move(path: Path, j: int, reverse: bool = False) -> Path:
    """Move the particle at vertices (j, j+1) one step right (or left).

    Forward precondition: v_j, v_{j+1} scoring and v_{j+2} non-scoring; the
    four segments j..j+3 are rewritten with h_{j-1} and h_{j+3} pinned (the
    latter may be the virtual edge to c).  Exactly one rewrite pattern
    exists; the weight rises by exactly 1 and L, m, and the endpoints are
    untouched.  ``reverse=True`` undoes such a move.
    """
    params = path.params
    if params.p_prime <= 2 * params.p:
        raise TransformError("moves are defined only for p' > 2p")
    L = path.L
    if not (1 <= j <= L - 2):
        raise TransformError(f"move window at {j} out of range")
    hs = list(path.heights) + [path.c]
    flags = _flags(path)
    if not reverse:
        if not (flags[j] and flags[j + 1] and not flags[j + 2]):
            raise TransformError(f"no particle with headroom at ({j}, {j + 1})")
    else:
        if not (not flags[j] and flags[j + 1] and flags[j + 2]):
            raise TransformError(f"no particle to pull back at ({j + 1}, {j + 2})")
    lo, hi = hs[j - 1], hs[j + 3]
    survivors = []
    for dirs in _iproduct((1, -1), repeat=4):
        if sum(dirs) != hi - lo:
            continue
        window = [lo]
        for d in dirs:
            window.append(window[-1] + d)
        if any(not (1 <= h <= params.p_prime - 1) for h in window[1:4]):
            continue
        if window[1:4] == hs[j : j + 3]:
            continue
        trial = hs[:j] + window[1:4] + hs[j + 3 :]
        sc = _scoring_flags(params.p, params.p_prime, trial[:-1], path.c)
        if reverse:
            ok = sc[j] and sc[j + 1] and not sc[j + 2]
        else:
            ok = (not sc[j]) and sc[j + 1] and sc[j + 2]
        if ok:
            survivors.append(trial[:-1])
    if len(survivors) != 1:
        raise TransformError(
            f"move at {j} has {len(survivors)} candidate rewrites, expected 1"
        )
    assert survivors[0][-1] == path.b, "move may not disturb the endpoint"
    out = Path(params, path.a, path.b, path.c, L, tuple(survivors[0]))
    delta = wt(out) - wt(path)
    expected = -1 if reverse else 1
    assert delta == expected, f"move changed weight by {delta}"
    assert striking_sequence(out).m == striking_sequence(path).m
    return out


def b3(path: Path, lam: tuple[int, ...], k: int) -> Path:
    """Move the i-th rightmost particle lam[i-1] steps right.

    lam must be a partition with at most k parts, none exceeding m(path).
    A particle crosses one non-scoring vertex per move; when it bumps into a
    lone scoring vertex followed by a non-scoring one, the pair re-forms on
    the far side (still one move, one unit of weight).
    """
    m_bound = striking_sequence(path).m
    rec = TransformRecord(k, tuple(lam))
    if rec.lam and rec.lam[0] > m_bound:
        raise TransformError(f"lambda part {rec.lam[0]} exceeds m = {m_bound}")
    out = path
    starts = [2 * i - 1 for i in range(k, 0, -1)]
    for idx, moves in enumerate(list(rec.lam) + [0] * (k - len(rec.lam))):
        s = starts[idx]
        for _ in range(moves):
            flags = _flags(out)
            if not flags[s + 2]:
                out = particle_move(out, s)
                s += 1
            else:
                out = particle_move(out, s + 1)
                s += 2
    return out


def b_transform(path: Path, k: int, lam: tuple[int, ...]) -> Path:
    """The composite b3(lam) . b2(k) . b1, model (p, p') -> (p, p'+p)."""
    h0 = b1(path)
    hk = b2(h0, k)
    return b3(hk, lam, k)


def d_transform(path: Path) -> Path:
    """Same heights, dual model (p'-p, p'): band parities all swap.

    Involution; swaps the rows of the striking sequence, so m |-> L - m,
    and wt(h) + wt(d(h)) = L^2/4 on the a = b families.
    """
    dual = path.params.dual()
    return Path(dual, path.a, path.b, path.c, path.L, path.heights)


def particle_content(path: Path) -> tuple[Path, int, tuple[int, ...]]:
    """Invert the composite b_transform: unique (h, k, lam) mapping to path.

    Requires p' > 2p; for p' < 2p apply d_transform first.  The returned
    path lives in the smaller model (p, p'-p).
    """
    params = path.params
    if params.p_prime <= 2 * params.p:
        raise TransformError("particle_content requires p' > 2p")
    parked, k, lam = _park_particles(path)
    # drop the k leading particles
    trimmed = make_path(
        ModelParams(params.p, params.p_prime), parked.heights[2 * k :], parked.c
    )
    inner = b1_inverse(trimmed)
    assert b_transform(inner, k, lam).heights == path.heights
    return inner, k, lam


def _park_particles(path: Path) -> tuple[Path, int, tuple[int, ...]]:
    """Pull every particle to the left margin, leftmost pair first."""
    out = path
    lam_asc: list[int] = []
    parked = 0
    while True:
        flags = _flags(out)
        pos = None
        for i in range(2 * parked + 1, out.L):
            if flags[i] and flags[i + 1]:
                pos = i
                break
        if pos is None:
            break
        moves = 0
        while pos > 2 * parked + 1:
            flags = _flags(out)
            if flags[pos - 1]:
                # lone scoring vertex on the left joins the pair instead
                pos -= 1
                continue
            out = particle_move(out, pos - 1, reverse=True)
            pos -= 1
            moves += 1
        lam_asc.append(moves)
        parked += 1
    # leftmost particles moved the least, so the counts come out ascending
    assert all(lam_asc[i] <= lam_asc[i + 1] for i in range(len(lam_asc) - 1))
    lam = tuple(x for x in reversed(lam_asc) if x)
    return out, parked, lam


# ---------------------------------------------------------------------------
# Sectors
# ---------------------------------------------------------------------------

def _sector_zone_data(params: ModelParams) -> cfmn.ZoneData:
    """Zone data steering the transform chain; for p' < 2p the chain acts on
    the dual model, whose mn-system rows j >= 1 coincide."""
    p, pp = params.p, params.p_prime
    if pp < 2 * p:
        p = pp - p
    return cfmn.zones(cfmn.continued_fraction(pp, p))


def trivial_path(n1: int) -> Path:
    """The unique ground path of P^{1,3} with n1 particles (length 2*n1)."""
    params = ModelParams(1, 3)
    heights = (1,) + (2, 1) * n1
    return Path(params, 1, 1, 2, 2 * n1, heights)


def sector_construct(params: ModelParams, label: SectorLabel) -> Path:
    """Chain B(n_j, lam^(j)) transforms (D-prefixed at zone boundaries) from
    the trivial (1, 3) path up to the target model."""
    p, pp = params.p, params.p_prime
    if pp < 2 * p:
        return d_transform(sector_construct(params.dual(), label))
    zd = _sector_zone_data(params)
    t = zd.rank
    n_hat = label.n_hat
    lambdas = label.lambdas
    if len(n_hat) != t:
        raise TransformError(f"n-hat must have length {t}")
    if len(lambdas) != max(t - 1, 0):
        raise TransformError(f"need {t - 1} motion partitions")
    bnd = zd.boundaries
    path = trivial_path(n_hat[t - 1])
    for j in range(t - 1, 0, -1):
        if j in bnd:
            path = d_transform(path)
        path = b_transform(path, n_hat[j - 1], lambdas[j - 1])
    if path.params != params:
        raise TransformError(f"chain ended at {path.params}, expected {params}")
    return path


def sector_decompose(path: Path) -> SectorLabel:
    """The unique sector label whose construct reproduces the path."""
    params = path.params
    _require_ground_family(path)
    if params.p_prime < 2 * params.p:
        return sector_decompose(d_transform(path))
    zd = _sector_zone_data(params)
    t = zd.rank
    bnd = zd.boundaries
    n_hat = [0] * t
    lambdas: list[tuple[int, ...]] = [()] * max(t - 1, 0)
    cur = path
    for j in range(1, t):
        cur, k, lam = particle_content(cur)
        n_hat[j - 1] = k
        lambdas[j - 1] = lam
        if j in bnd:
            cur = d_transform(cur)
    if cur.params != ModelParams(1, 3):
        raise TransformError(f"decomposition ended at {cur.params}")
    n_hat[t - 1] = cur.L // 2
    return SectorLabel(tuple(n_hat), tuple(lambdas))
