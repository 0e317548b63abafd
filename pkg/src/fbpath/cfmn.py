"""Continued fractions, zones, the mn-system and its Cartan-like matrix.

For coprime 0 < p < p', the continued fraction (c_0, ..., c_n) of p'/p
(with c_n >= 2) partitions the indices 0..t into n+1 zones via

    t_mu = -1 - [mu == n+1] + sum_{i < mu} c_i,        t = t_{n+1}.

The mn-system couples n-hat = (n_1..n_t) and m = (m_0..m_{t-1}) through

    m_{j-1} - m_{j+1} = m_j + 2 n_j     at zone boundaries j = t_mu,
    m_{j-1} + m_{j+1} = 2 m_j + 2 n_j   otherwise,

with m_t = m_{t+1} = 0, solved by back-substitution.  Writing the extra j=0
equation with m_{-1} = 0 defines n_0, and the whole system is 2n = -C m for
the t x t tridiagonal matrix C assembled here.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence


class CFError(ValueError):
    pass


@dataclass(frozen=True)
class ContinuedFraction:
    """Canonical continued fraction digits of p'/p with last digit >= 2."""

    digits: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.digits) - 1

    def value(self) -> tuple[int, int]:
        """Reconstitute (p', p)."""
        num, den = self.digits[-1], 1
        for c in reversed(self.digits[:-1]):
            num, den = c * num + den, num
        return num, den


def continued_fraction(p_prime: int, p: int) -> ContinuedFraction:
    """Continued fraction of p'/p for coprime 0 < p < p'."""
    if not (0 < p < p_prime):
        raise CFError(f"need 0 < p < p', got ({p}, {p_prime})")
    if gcd(p, p_prime) != 1:
        raise CFError(f"p and p' must be coprime, got ({p}, {p_prime})")
    digits = []
    a, b = p_prime, p
    while b:
        digits.append(a // b)
        a, b = b, a % b
    # Euclid on a coprime pair > 1 always ends with a digit >= 2
    cf = ContinuedFraction(tuple(digits))
    assert cf.digits[-1] >= 2 and cf.value() == (p_prime, p)
    return cf


@dataclass(frozen=True)
class ZoneData:
    """Zone boundaries t_0..t_{n+1} and the rank t = t_{n+1}."""

    cf: ContinuedFraction
    t_values: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.t_values[-1]

    @property
    def boundaries(self) -> frozenset[int]:
        """{t_mu : mu = 1..n}, the rows where the coupled equation applies."""
        return frozenset(self.t_values[1:-1])

    def zone_of(self, j: int) -> int:
        """Zone index mu with t_mu < j <= t_{mu+1}."""
        for mu in range(len(self.t_values) - 1):
            if self.t_values[mu] < j <= self.t_values[mu + 1]:
                return mu
        raise CFError(f"index {j} outside 0..{self.rank}")


def zones(cf: ContinuedFraction) -> ZoneData:
    n = cf.n
    ts = tuple(
        -1 - (1 if mu == n + 1 else 0) + sum(cf.digits[:mu]) for mu in range(n + 2)
    )
    return ZoneData(cf, ts)


@dataclass(frozen=True)
class CartanLike:
    """Tridiagonal t x t integer matrix generalising the A_t Cartan matrix."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def mul_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in self.rows)

    def quadratic_form(self, v: Sequence[int]) -> int:
        return sum(v[i] * x for i, x in enumerate(self.mul_vec(v)))


def cartan_like(zd: ZoneData) -> CartanLike:
    """Rows are (-1, 2, -1) except (-1, 1, 1) at zone boundaries j = t_mu.

    For rank 1 with no boundary rows this degenerates to the 1x1 matrix [2];
    when t_1 = 0 (p' < 2p) row 0 takes the boundary form (1, 1).
    """
    t = zd.rank
    if t < 1:
        raise CFError("rank must be at least 1 for a Cartan-like matrix")
    bnd = zd.boundaries
    rows = []
    for j in range(t):
        row = [0] * t
        if j > 0:
            row[j - 1] = -1
        if j in bnd:
            row[j] = 1
            if j + 1 < t:
                row[j + 1] = 1
        else:
            row[j] = 2
            if j + 1 < t:
                row[j + 1] = -1
        rows.append(tuple(row))
    return CartanLike(tuple(rows))


@dataclass(frozen=True)
class MNVectors:
    """A solved mn-system instance: n-hat, m, and the derived n_0."""

    n_hat: tuple[int, ...]
    m: tuple[int, ...]
    n0: int

    @property
    def L(self) -> int:
        return self.m[0] if self.m else 0


def solve_m(zd: ZoneData, n_hat: Sequence[int]) -> MNVectors:
    """Back-substitute from m_t = m_{t+1} = 0 down to m_0; also derive n_0."""
    t = zd.rank
    if len(n_hat) != t:
        raise CFError(f"n-hat must have length {t}, got {len(n_hat)}")
    bnd = zd.boundaries
    m = [0] * (t + 2)  # m_0 .. m_{t+1}
    for j in range(t, 0, -1):
        if j in bnd:
            m[j - 1] = m[j] + m[j + 1] + 2 * n_hat[j - 1]
        else:
            m[j - 1] = 2 * m[j] - m[j + 1] + 2 * n_hat[j - 1]
    m0, m1 = m[0], m[1]
    if 0 in bnd:
        # j = 0 is a boundary row (p' < 2p): 0 - m_1 = m_0 + 2 n_0
        n0, rem = divmod(-m0 - m1, 2)
    else:
        # 0 + m_1 = 2 m_0 + 2 n_0
        n0, rem = divmod(m1 - 2 * m0, 2)
    assert rem == 0
    return MNVectors(tuple(n_hat), tuple(m[:t]), n0)


def verify_cartan(zd: ZoneData, mn: MNVectors) -> bool:
    """Check 2*(n_0, ..., n_{t-1}) == -C m."""
    c = cartan_like(zd)
    n_full = (mn.n0,) + mn.n_hat[: zd.rank - 1]
    lhs = tuple(2 * x for x in n_full)
    rhs = tuple(-x for x in c.mul_vec(mn.m))
    return lhs == rhs


def m0_coefficients(zd: ZoneData) -> tuple[int, ...]:
    """Coefficients of m_0 as a linear function of n-hat (strictly positive).

    These give the finite enumeration box for sectors at fixed path length.
    """
    t = zd.rank
    coefs = []
    for i in range(t):
        unit = [0] * t
        unit[i] = 1
        coefs.append(solve_m(zd, unit).m[0])
    assert all(x > 0 for x in coefs)
    return tuple(coefs)


def mn_system_lines(p: int, p_prime: int) -> list[str]:
    """The solved system, one m_j per line, in the conventional layout.

    The last line carries the extra ``L = `` marker identifying m_0 with the
    path length.
    """
    zd = zones(continued_fraction(p_prime, p))
    t = zd.rank
    lines = [f"m_{t} = 0"]
    for j in range(t - 1, -1, -1):
        unit_terms = []
        for i in range(t):
            unit = [0] * t
            unit[i] = 1
            coef = solve_m(zd, unit).m[j]
            if coef:
                unit_terms.append((coef, i + 1))
        if not unit_terms:
            rhs = "0"
        else:
            rhs = " + ".join(f"{c}n_{i}" for c, i in unit_terms)
        prefix = "L = m_0" if j == 0 else f"m_{j}"
        lines.append(f"{prefix} = {rhs}")
    return lines
