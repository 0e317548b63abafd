"""Partitions with prescribed hook differences and the path correspondence.

``dki``-class partitions: for parameters (K, i, N, M, alpha, beta) in the
window 1 <= i <= K/2, alpha + beta < K, beta - i <= N - M <= K - alpha - i,
the class holds partitions with at most M parts, each at most N, whose hook
differences mu_r - mu'_c satisfy

    >= beta - i + 1   on diagonal 1 - beta,
    <= K - i - alpha - 1   on diagonal alpha - 1.

The weight-preserving path map scans vertices left to right keeping the
slanted coordinates (x, y) = (M, N); every vertex bumps N (entered by a NE
segment) or M (SE segment), and a *scoring* vertex additionally glues on a
column of the current M or a row of the current N:

    vertex                    action
    straight-up    odd        add column of M, bump N
    straight-down  odd        add row of N, bump M
    peak-up        even       add column of M, bump N
    peak-down      even       add row of N, bump M
    (non-scoring shapes only bump N or M)

The inverse peels the partition from the right end of the path; at every
step exactly one of the two candidate left edges is consistent with the
current box, which is what makes the map a bijection.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .paths import ModelParams, Path, PathError, validate


class BijectionError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; the empty partition is allowed."""

    parts: tuple[int, ...]

    def __post_init__(self):
        ps = self.parts
        if any(x <= 0 for x in ps) or list(ps) != sorted(ps, reverse=True):
            raise BijectionError(f"not a partition: {ps}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """mu_i with the convention mu_i = 0 for i beyond the last part."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(tuple(cols))


@dataclass(frozen=True)
class HookConstraints:
    """The D-class parameters (K, i, N, M, alpha, beta)."""

    K: int
    i: int
    N: int
    M: int
    alpha: int
    beta: int

    def in_window(self) -> bool:
        return (
            1 <= self.i <= self.K // 2
            and self.alpha + self.beta < self.K
            and self.beta - self.i <= self.N - self.M <= self.K - self.alpha - self.i
        )


def hook_difference(mu: Partition, row: int, col: int) -> int:
    """mu_row - mu'_col at a cell of the Young diagram."""
    if not (1 <= row <= len(mu.parts)) or not (1 <= col <= mu.part(row)):
        raise BijectionError(f"cell ({row}, {col}) outside the diagram")
    return mu.part(row) - mu.conjugate().part(col)


def hook_differences_on_diagonal(mu: Partition, d: int) -> list[int]:
    """All hook differences at diagram cells (r, c) with r - c = d."""
    conj = mu.conjugate()
    out = []
    for r in range(1, len(mu.parts) + 1):
        c = r - d
        if 1 <= c <= mu.part(r):
            out.append(mu.part(r) - conj.part(c))
    return out


def satisfies_dki(mu: Partition, hc: HookConstraints) -> bool:
    """Membership in the D-class; only the alpha, beta >= 1 cases are defined.

    The alpha = 0 and beta = 0 variants impose extra part conditions that are
    not needed anywhere downstream, so they are rejected rather than guessed.
    """
    if hc.alpha < 1 or hc.beta < 1:
        raise BijectionError("satisfies_dki supports alpha >= 1 and beta >= 1 only")
    if not hc.in_window():
        raise BijectionError(f"{hc} violates the parameter window")
    if len(mu.parts) > hc.M or (mu.parts and mu.parts[0] > hc.N):
        return False
    lo = hook_differences_on_diagonal(mu, 1 - hc.beta)
    if any(v < hc.beta - hc.i + 1 for v in lo):
        return False
    hi = hook_differences_on_diagonal(mu, hc.alpha - 1)
    return all(v <= hc.K - hc.i - hc.alpha - 1 for v in hi)


def box_partitions(n: int, m: int) -> Iterator[Partition]:
    """All partitions with at most m parts, each at most n."""

    def rec(maxpart: int, slots: int) -> Iterator[tuple[int, ...]]:
        yield ()
        if slots == 0:
            return
        for first in range(1, maxpart + 1):
            for rest in rec(first, slots - 1):
                yield (first,) + rest

    for parts in rec(n, m):
        yield Partition(parts)


def enumerate_dki(hc: HookConstraints) -> Iterator[Partition]:
    """Stream the D-class members inside the N x M box, each exactly once."""
    for mu in box_partitions(hc.N, hc.M):
        if satisfies_dki(mu, hc):
            yield mu


# ---------------------------------------------------------------------------
# Path <-> partition
# ---------------------------------------------------------------------------

def box_shape(path_a: int, path_b: int, length: int) -> tuple[int, int]:
    """(N, M) = ((L-a+b)/2, (L+a-b)/2), the final slanted coordinates."""
    return (length - path_a + path_b) // 2, (length + path_a - path_b) // 2


def path_to_partition(path: Path) -> Partition:
    """Scan vertices left to right accumulating rows and columns."""
    hs = path.heights + (path.c,)
    params = path.params
    mu: list[int] = []
    n_cur = m_cur = 0
    for i in range(1, path.L + 1):
        hm, h, hp = hs[i - 1], hs[i], hs[i + 1]
        up = hm < h
        straight = (h < hp) if up else (h > hp)
        odd = params.band_is_odd(min(h, hp))
        scoring = straight == odd
        if up:
            if scoring:
                # column of the current height m_cur on the left
                assert len(mu) <= m_cur
                mu = [x + 1 for x in mu] + [1] * (m_cur - len(mu))
            n_cur += 1
        else:
            if scoring:
                # row of the current width n_cur on top
                assert not mu or mu[0] <= n_cur
                if n_cur:
                    mu.insert(0, n_cur)
            m_cur += 1
    assert (n_cur, m_cur) == box_shape(path.a, path.b, path.L)
    return Partition(tuple(mu))


def partition_to_path(
    mu: Partition, p: int, p_prime: int, a: int, b: int, c: int, length: int
) -> Path:
    """Peel the partition from the right end of the path.

    At each vertex the right edge is known; of the two candidate left edges
    exactly one is consistent with the current (N, M) box, which dictates
    whether a row/column is removed or only a bound shrinks.
    """
    params = ModelParams(p, p_prime)
    n_cur, m_cur = box_shape(a, b, length)
    if n_cur < 0 or m_cur < 0 or (length + a - b) % 2:
        raise BijectionError("labels do not admit any path")
    parts = [x for x in mu.parts]
    if len(parts) > m_cur or (parts and parts[0] > n_cur):
        raise BijectionError(f"partition does not fit the {n_cur} x {m_cur} box")
    heights = [0] * (length + 1)
    heights[length] = b
    hnext = c
    for i in range(length, 0, -1):
        h = heights[i]
        band = min(h, hnext)
        if not (1 <= band <= p_prime - 2):
            raise BijectionError("no band for the right edge; malformed input")
        odd = params.band_is_odd(band)
        up = hnext > h
        first = parts[0] if parts else 0
        if up:
            # candidates: straight-up (prev = h-1) / peak-down (prev = h+1)
            if odd:
                if len(parts) == m_cur:  # scoring straight-up: remove column
                    parts = [x - 1 for x in parts if x > 1]
                    n_cur -= 1
                    prev = h - 1
                else:
                    m_cur -= 1
                    prev = h + 1
            else:
                if first == n_cur:  # scoring peak-down: remove row
                    parts = parts[1:]
                    m_cur -= 1
                    prev = h + 1
                else:
                    n_cur -= 1
                    prev = h - 1
        else:
            # candidates: straight-down (prev = h+1) / peak-up (prev = h-1)
            if odd:
                if first == n_cur:  # scoring straight-down: remove row
                    parts = parts[1:]
                    m_cur -= 1
                    prev = h + 1
                else:
                    n_cur -= 1
                    prev = h - 1
            else:
                if len(parts) == m_cur:  # scoring peak-up: remove column
                    parts = [x - 1 for x in parts if x > 1]
                    n_cur -= 1
                    prev = h - 1
                else:
                    m_cur -= 1
                    prev = h + 1
        if not (1 <= prev <= p_prime - 1):
            raise BijectionError("height leaves the strip; malformed input")
        heights[i - 1] = prev
        hnext = h
    if n_cur or m_cur or parts or heights[0] != a:
        raise BijectionError("peeling did not close up; malformed input")
    try:
        return validate(p, p_prime, a, b, c, heights)
    except PathError as exc:  # pragma: no cover - closing checks above
        raise BijectionError(str(exc)) from exc


def dki_parameters(path: Path) -> HookConstraints:
    """The D-class parameters matched by a path family:
    K = p', i = a, alpha = p - r, beta = r with r = floor(p*c/p') + (b-c+1)/2."""
    params = path.params
    r = (params.p * path.c) // params.p_prime + (path.b - path.c + 1) // 2
    n, m = box_shape(path.a, path.b, path.L)
    return HookConstraints(params.p_prime, path.a, n, m, params.p - r, r)


def partition_to_json_dict(mu: Partition) -> dict:
    return {"parts": list(mu.parts)}


def partition_from_json_dict(d: dict) -> Partition:
    try:
        return Partition(tuple(int(x) for x in d["parts"]))
    except KeyError as exc:
        raise BijectionError(f"partition JSON missing key {exc}") from exc
