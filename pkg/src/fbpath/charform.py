"""Generating functions: recurrences, bosonic and fermionic sums, limits.

Every finite-length evaluator returns a :class:`QPolynomial` and every
L -> infinity evaluator a :class:`QSeriesTruncated`; all of them describe the
same weighted path counts

    chi(L) = sum over paths q^wt(h),

computed along independent routes:

* ``chi_bruteforce``    -- direct enumeration (the oracle),
* ``phi_recurrence``    -- the classical-weight recurrence, in quarter units,
* ``chi_recurrence``    -- the normalised recurrence,
* ``chi_bosonic``       -- alternating sum with Gaussian polynomials,
* ``chi_fermionic_m``   -- constant-sign sum over even m-vectors,
* ``chi_fermionic_lambda`` -- the same sum re-indexed by partition tuples,
* ``dki_closed`` / ``dki_recurrence`` -- hook-difference partition counts.

The truncated limits ``rocha_caridi_trunc``, ``chi_fermionic_infinite_trunc``
and ``gordon_trunc`` cover the L -> infinity identities.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Sequence

from . import cfmn
from .paths import ModelParams, iter_height_sequences, wt_heights
from .qseries import (
    QPolynomial,
    QSeriesTruncated,
    QuarterPolynomial,
    gaussian,
    pochhammer_inverse_trunc,
)


class CharFormError(ValueError):
    pass


@dataclass(frozen=True)
class CharLabels:
    """Path family labels plus the derived character index r."""

    p: int
    p_prime: int
    a: int
    b: int
    c: int
    L: int

    def __post_init__(self):
        ModelParams(self.p, self.p_prime)  # validates coprimality
        pp = self.p_prime
        ok_c = 1 <= self.c <= pp - 1 or (pp == 2 and self.c == 2)
        if not (1 <= self.a <= pp - 1 and 1 <= self.b <= pp - 1 and ok_c):
            raise CharFormError(f"labels out of range: {self}")
        if self.c not in (self.b - 1, self.b + 1):
            raise CharFormError(f"c must be b +- 1: {self}")
        if self.L < 0 or (self.L + self.a - self.b) % 2:
            raise CharFormError(f"L + a - b must be even and L >= 0: {self}")

    @property
    def r(self) -> int:
        """r = floor(p*c/p') + (b - c + 1)/2."""
        return (self.p * self.c) // self.p_prime + (self.b - self.c + 1) // 2

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.p, self.p_prime)


def ground_labels(p: int, p_prime: int, L: int) -> CharLabels:
    """The restricted family a = b = s0, c = s0 + 1."""
    s0 = ModelParams(p, p_prime).s0
    return CharLabels(p, p_prime, s0, s0, s0 + 1, L)


# ---------------------------------------------------------------------------
# Brute force oracle
# ---------------------------------------------------------------------------

def chi_bruteforce(labels: CharLabels) -> QPolynomial:
    """sum_h q^wt(h) by explicit enumeration."""
    p, pp = labels.p, labels.p_prime
    out: dict[int, int] = {}
    for hs in iter_height_sequences(pp, labels.a, labels.b, labels.L):
        e = wt_heights(p, pp, labels.a, hs, labels.c)
        out[e] = out.get(e, 0) + 1
    return QPolynomial(out)


def phi_bruteforce(labels: CharLabels) -> QuarterPolynomial:
    """sum_h q^wt_fb(h) by enumeration, exponents in quarter units."""
    from .paths import Path, wt_fb_quarter

    params = labels.params
    out: dict[int, int] = {}
    for hs in iter_height_sequences(params.p_prime, labels.a, labels.b, labels.L):
        path = Path(params, labels.a, labels.b, labels.c, labels.L, hs)
        e = wt_fb_quarter(path)
        out[e] = out.get(e, 0) + 1
    return QuarterPolynomial(out)


# ---------------------------------------------------------------------------
# Recurrences
# ---------------------------------------------------------------------------

def phi_recurrence(labels: CharLabels) -> QuarterPolynomial:
    """Classical-weight generating function via the two-term recurrence.

    phi_{a,b,b+1}(L) picks up q^(L*r_hat(b+1)) from a final peak-down and
    q^(L/2) from a final straight-up; phi_{a,b,b-1}(L) mirrors this with
    q^(L/2) and q^(-L*r_hat(b-1)).  Exponents are tracked in quarter units.
    """
    p, pp, a = labels.p, labels.p_prime, labels.a
    if pp == 2:
        value = {0: 1} if labels.L == 0 and a == labels.b else {}
        return QuarterPolynomial(value)
    r_hat = labels.params.r_hat
    zero = QPolynomial.zero()
    # table[(b, up)] = phi_{a,b,b+1} (up) or phi_{a,b,b-1} (down), quarter units
    table: dict[tuple[int, bool], QPolynomial] = {}
    for b in range(1, pp):
        init = QPolynomial.one() if b == a else zero
        table[(b, True)] = init
        table[(b, False)] = init
    for length in range(1, labels.L + 1):
        new: dict[tuple[int, bool], QPolynomial] = {}
        for b in range(1, pp):
            up_prev = table.get((b + 1, False), zero) if b + 1 <= pp - 1 else zero
            dn_prev = table.get((b - 1, True), zero) if b - 1 >= 1 else zero
            if b + 1 <= pp - 1:
                new[(b, True)] = up_prev.shifted(
                    4 * length * r_hat(b + 1)
                ) + dn_prev.shifted(2 * length)
            else:
                new[(b, True)] = zero
            if b - 1 >= 1:
                new[(b, False)] = up_prev.shifted(2 * length) + dn_prev.shifted(
                    -4 * length * r_hat(b - 1)
                )
            else:
                new[(b, False)] = zero
        table = new
    return QuarterPolynomial(table[(labels.b, labels.c == labels.b + 1)])


def chi_normalize(phi: QuarterPolynomial, labels: CharLabels) -> QPolynomial:
    """Multiply by q^(-r_hat(c)(a-b+-L)/2 - (a-b)(a-c)/4) and land on integers.

    The sign of L follows c = b +- 1.  Any exponent that is not a multiple of
    four afterwards signals a weight-table bug and raises.
    """
    a, b, c, L = labels.a, labels.b, labels.c, labels.L
    pm = 1 if c == b + 1 else -1
    shift = -2 * labels.params.r_hat(c) * (a - b + pm * L) - (a - b) * (a - c)
    moved = phi.shifted_quarters(shift)
    result = moved.to_qpolynomial()
    if result and result.valuation < 0:
        raise CharFormError("normalised character has negative exponents")
    return result


def chi_recurrence(labels: CharLabels) -> QPolynomial:
    """Normalised-weight recurrence; the q-powers depend on the parity of the
    band crossed by the final edge."""
    p, pp, a = labels.p, labels.p_prime, labels.a
    if pp == 2:
        return (
            QPolynomial.one() if labels.L == 0 and a == labels.b else QPolynomial.zero()
        )
    params = labels.params
    zero = QPolynomial.zero()
    table: dict[tuple[int, bool], QPolynomial] = {}
    for b in range(1, pp):
        init = QPolynomial.one() if b == a else zero
        table[(b, True)] = init
        table[(b, False)] = init
    for length in range(1, labels.L + 1):
        new: dict[tuple[int, bool], QPolynomial] = {}
        for b in range(1, pp):
            up_prev = table.get((b + 1, False), zero) if b + 1 <= pp - 1 else zero
            dn_prev = table.get((b - 1, True), zero) if b - 1 >= 1 else zero
            if b + 1 <= pp - 1:
                # final edge crosses band b
                if params.band_is_odd(b):
                    new[(b, True)] = up_prev + dn_prev.shifted((length + a - b) // 2)
                else:
                    new[(b, True)] = up_prev.shifted((length - a + b) // 2) + dn_prev
            else:
                new[(b, True)] = zero
            if b - 1 >= 1:
                # final edge crosses band b-1
                if params.band_is_odd(b - 1):
                    new[(b, False)] = up_prev.shifted((length - a + b) // 2) + dn_prev
                else:
                    new[(b, False)] = up_prev + dn_prev.shifted((length + a - b) // 2)
            else:
                new[(b, False)] = zero
        table = new
    return table[(labels.b, labels.c == labels.b + 1)]


# ---------------------------------------------------------------------------
# Bosonic (alternating) finite form
# ---------------------------------------------------------------------------

def chi_bosonic(labels: CharLabels) -> QPolynomial:
    """Alternating lambda-sum with Gaussian polynomials:

    sum_j ( q^(j^2 p p' + j(p' r - p a)) [L over (L+a-b)/2 - p' j]
          - q^((j p + r)(j p' + a))      [L over (L+a-b)/2 - p' j - a] ).
    """
    p, pp, a, L = labels.p, labels.p_prime, labels.a, labels.L
    r = labels.r
    mid = (L + a - labels.b) // 2
    out = QPolynomial.zero()
    for j in _gaussian_support(L, mid, pp, 0):
        g = gaussian(L, mid - pp * j)
        out = out + g.shifted(j * j * p * pp + j * (pp * r - p * a))
    for j in _gaussian_support(L, mid, pp, a):
        g = gaussian(L, mid - pp * j - a)
        out = out - g.shifted((j * p + r) * (j * pp + a))
    return out


def _gaussian_support(L: int, mid: int, pp: int, offset: int) -> Iterator[int]:
    """Integers j with 0 <= mid - pp*j - offset <= L."""
    lo = -((L - mid + offset) // pp)
    hi = (mid - offset) // pp
    return iter(range(lo, hi + 1))


# ---------------------------------------------------------------------------
# Sector generating functions and fermionic finite forms
# ---------------------------------------------------------------------------

def _zone_data(p: int, pp: int) -> cfmn.ZoneData:
    return cfmn.zones(cfmn.continued_fraction(pp, p))


def sector_genfun(p: int, p_prime: int, n_hat: Sequence[int]) -> QPolynomial:
    """Weight generating function of one sector:

        q^(L(L - m_1)/4 - sum m_j n_j / 2) * prod [m_j + n_j over n_j]

    for p' > 2p, with the first exponent replaced by L*m_1/4 when p' < 2p.
    """
    zd = _zone_data(p, p_prime)
    t = zd.rank
    if len(n_hat) != t:
        raise CharFormError(f"n-hat must have length {t}")
    if any(x < 0 for x in n_hat):
        raise CharFormError("n-hat must be non-negative")
    mn = cfmn.solve_m(zd, list(n_hat))
    m_full = list(mn.m) + [0, 0]
    L = m_full[0]
    cross = sum(m_full[j] * n_hat[j - 1] for j in range(1, t + 1))
    if p_prime > 2 * p:
        expo = (L * (L - m_full[1]) - 2 * cross) // 4
    else:
        expo = (L * m_full[1] - 2 * cross) // 4
    out = QPolynomial.q_power(expo)
    for j in range(1, t):
        out = out * gaussian(m_full[j] + n_hat[j - 1], n_hat[j - 1])
    return out


def iter_sector_labels(p: int, p_prime: int, L: int) -> Iterator[tuple[int, ...]]:
    """All n-hat >= 0 with m_0(n-hat) = L (finite: coefficients are positive)."""
    if L % 2 or L < 0:
        raise CharFormError("path length must be even and non-negative")
    zd = _zone_data(p, p_prime)
    coefs = cfmn.m0_coefficients(zd)
    t = zd.rank

    def rec(i: int, rem: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if i == t:
            if rem == 0:
                yield tuple(acc)
            return
        step = coefs[i]
        for v in range(rem // step + 1):
            acc.append(v)
            yield from rec(i + 1, rem - v * step, acc)
            acc.pop()

    yield from rec(0, L, [])


def chi_fermionic_m(p: int, p_prime: int, L: int) -> QPolynomial:
    """Constant-sign sum over even m-vectors with m_0 = L:

        sum_m q^((m^T C m - L^2)/4) prod_{j=1}^{t-1} [m_j + n_j over n_j],

    realised by enumerating the particle-count vectors n-hat with
    m_0(n-hat) = L; each n-hat produces one admissible even m.
    """
    if L % 2 or L < 0:
        raise CharFormError("path length must be even and non-negative")
    if p_prime == 2:
        return QPolynomial.one() if L == 0 else QPolynomial.zero()
    zd = _zone_data(p, p_prime)
    cm = cfmn.cartan_like(zd)
    out = QPolynomial.zero()
    for n_hat in iter_sector_labels(p, p_prime, L):
        mn = cfmn.solve_m(zd, list(n_hat))
        assert all(x >= 0 and x % 2 == 0 for x in mn.m)
        expo, rem = divmod(cm.quadratic_form(mn.m) - L * L, 4)
        assert rem == 0
        term = QPolynomial.q_power(expo)
        for j in range(1, zd.rank):
            term = term * gaussian(mn.m[j] + n_hat[j - 1], n_hat[j - 1])
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Fermionic form in partition variables
# ---------------------------------------------------------------------------

def _e_vector(cf: cfmn.ContinuedFraction) -> tuple[int, ...]:
    return cf.digits[:-1] + (cf.digits[-1] - 2,)


def _iter_bounded_partitions(
    num_parts: int, max_first: int, max_weight: int
) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing tuples with the given length, first-part cap and
    weight cap (zeros allowed)."""

    def rec(i: int, cap: int, rem: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if i == num_parts:
            yield tuple(acc)
            return
        for v in range(min(cap, rem), -1, -1):
            acc.append(v)
            yield from rec(i + 1, v, rem - v, acc)
            acc.pop()

    yield from rec(0, max_first, max_weight, [])


def lambda_variables(
    p: int, p_prime: int, n_hat: Sequence[int]
) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """The change of variables from a solved m-vector to partition blocks.

    Returns (w, lambdas) where lambdas[mu] has e_mu entries

        lambda^(mu)_i     = (m_(t_mu+i) - m_(t_mu+i+1)) / 2   for i < e_mu,
        lambda^(mu)_last  = m_(t_(mu+1)+1) / 2  (or m_(t-1)/2 in the top zone)

    and w[0] = L/2, w[mu] = last entry of lambdas[mu-1].  Inverting,

        m_(t_mu+i) = 2*(w_mu - sum_(j<i) lambda^(mu)_j),
        n_(t_mu+i) = lambda^(mu)_(i-1) - lambda^(mu)_i,

    which the tests exercise as a roundtrip against the solved system.
    """
    cf = cfmn.continued_fraction(p_prime, p)
    zd = cfmn.zones(cf)
    e = _e_vector(cf)
    n = cf.n
    t = zd.rank
    mn = cfmn.solve_m(zd, list(n_hat))
    m_full = list(mn.m) + [0, 0]
    lambdas = []
    for mu in range(n + 1):
        t_mu = zd.t_values[mu]
        lam = []
        for i in range(1, e[mu]):
            delta, rem = divmod(m_full[t_mu + i] - m_full[t_mu + i + 1], 2)
            assert rem == 0
            lam.append(delta)
        if e[mu] >= 1:
            if mu < n:
                last, rem = divmod(m_full[zd.t_values[mu + 1] + 1], 2)
            else:
                last, rem = divmod(m_full[t - 1], 2)
            assert rem == 0
            lam.append(last)
        lambdas.append(tuple(lam))
    ws = [m_full[0] // 2]
    for mu in range(1, n + 1):
        ws.append(lambdas[mu - 1][-1] if lambdas[mu - 1] else ws[mu - 1])
    return tuple(ws), tuple(lambdas)


def chi_fermionic_lambda(p: int, p_prime: int, L: int) -> QPolynomial:
    """The fermionic sum re-indexed by partition tuples lambda^(0..n):

        sum q^(sum lambda_{mu,i}^2) prod Gaussians,

    where lambda^(mu) has e_mu parts, wt(lambda^(mu)) <= w_mu with w_0 = L/2
    and w_mu = last part of lambda^(mu-1), the first part of lambda^(mu) is
    capped by lambda^(mu)_0 = w_(mu-1) - wt(lambda^(mu-1)) for mu >= 1, and
    the last block must hit wt(lambda^(n)) = w_n exactly.
    """
    if L % 2 or L < 0:
        raise CharFormError("path length must be even and non-negative")
    if p_prime == 2:
        return QPolynomial.one() if L == 0 else QPolynomial.zero()
    cf = cfmn.continued_fraction(p_prime, p)
    e = _e_vector(cf)
    n = cf.n
    out = QPolynomial.zero()

    def descend(
        mu: int, w_mu: int, lam0: int | None, acc_expo: int, acc_poly: QPolynomial
    ) -> None:
        nonlocal out
        max_first = w_mu if lam0 is None else min(w_mu, lam0)
        for lam in _iter_bounded_partitions(e[mu], max_first, w_mu):
            weight = sum(lam)
            if mu == n and weight != w_mu:
                continue
            expo = acc_expo + sum(x * x for x in lam)
            poly = acc_poly
            partial = 0
            lam_ext = ((lam0 if lam0 is not None else 0),) + lam
            for i in range(1, e[mu] + 1):
                partial += lam_ext[i]
                if mu == 0 and i == 1:
                    continue
                top = 2 * (w_mu - partial) + lam_ext[i - 1] + lam_ext[i]
                bot = lam_ext[i - 1] - lam_ext[i]
                poly = poly * gaussian(top, bot)
                if poly.is_zero():
                    break
            if poly.is_zero():
                continue
            if mu == n:
                out = out + poly.shifted(expo)
            else:
                next_w = lam[-1] if lam else w_mu
                descend(mu + 1, next_w, w_mu - weight, expo, poly)

    descend(0, L // 2, None, 0, QPolynomial.one())
    return out


# ---------------------------------------------------------------------------
# Truncated L -> infinity limits
# ---------------------------------------------------------------------------

def rocha_caridi_trunc(
    p: int, p_prime: int, r: int, s: int, cutoff: int
) -> QSeriesTruncated:
    """(1/(q)_inf) sum_j (q^(j^2 p p' + j(p' r - p s)) - q^((jp+r)(jp'+s))),
    truncated at the cutoff."""
    if not (0 < r < p and 0 < s < p_prime):
        raise CharFormError(f"need 0 < r < p and 0 < s < p', got r={r}, s={s}")
    terms: dict[int, int] = {}
    bound = 3 + isqrt(cutoff // (p * p_prime) + 1)
    for j in range(-bound, bound + 1):
        e1 = j * j * p * p_prime + j * (p_prime * r - p * s)
        if e1 <= cutoff:
            terms[e1] = terms.get(e1, 0) + 1
        e2 = (j * p + r) * (j * p_prime + s)
        if e2 <= cutoff:
            terms[e2] = terms.get(e2, 0) - 1
    numer = QSeriesTruncated.from_qpolynomial(QPolynomial(terms), cutoff)
    return numer * pochhammer_inverse_trunc(None, cutoff)


def chi_fermionic_infinite_trunc(
    p: int, p_prime: int, cutoff: int
) -> QSeriesTruncated:
    """L -> infinity limit of the fermionic sum for p > 2.

    The lambda^(0) Gaussians collapse to Pochhammer inverses and the mu = 1,
    i = 1 factor becomes 1/(q)_(2*last part of lambda^(0)).  For p = 2 use
    :func:`gordon_trunc`; for p = 1 the limit does not exist.
    """
    if p <= 2:
        raise CharFormError("the infinite fermionic form requires p > 2")
    cf = cfmn.continued_fraction(p_prime, p)
    e = _e_vector(cf)
    n = cf.n
    out = QSeriesTruncated([0], cutoff)

    def descend(
        mu: int, w_mu: int, lam0: int | None, acc_expo: int, series: QSeriesTruncated
    ) -> None:
        nonlocal out
        if mu == 0:
            max_first = isqrt(cutoff)
        else:
            max_first = min(w_mu, lam0) if lam0 is not None else w_mu
        for lam in _iter_bounded_partitions(e[mu], max_first, max_first * e[mu]):
            weight = sum(lam)
            if mu > 0 and weight > w_mu:
                continue
            if mu == n and weight != w_mu:
                continue
            expo = acc_expo + sum(x * x for x in lam)
            if expo > cutoff:
                continue
            ser = series
            lam_ext = ((lam0 if lam0 is not None else 0),) + lam
            if mu == 0:
                for i in range(2, e[0] + 1):
                    ser = ser * pochhammer_inverse_trunc(
                        lam_ext[i - 1] - lam_ext[i], cutoff
                    )
                ser = ser * pochhammer_inverse_trunc(2 * lam_ext[e[0]], cutoff)
            else:
                partial = 0
                for i in range(1, e[mu] + 1):
                    partial += lam_ext[i]
                    if mu == 1 and i == 1:
                        continue  # absorbed into 1/(q)_(2 lambda^(0)_last)
                    top = 2 * (w_mu - partial) + lam_ext[i - 1] + lam_ext[i]
                    bot = lam_ext[i - 1] - lam_ext[i]
                    ser = ser.mul_poly(gaussian(top, bot))
            if mu == n:
                out = out + ser.shifted(expo) if expo else out + ser
            else:
                next_w = lam[-1] if lam else w_mu
                next_lam0 = None if mu == 0 else w_mu - weight
                descend(mu + 1, next_w, next_lam0, expo, ser)

    descend(0, 0, None, 0, QSeriesTruncated.one(cutoff))
    return out


def gordon_trunc(e0: int, cutoff: int) -> QSeriesTruncated:
    """sum over partitions (lam_1 >= ... >= lam_(e0-1) >= 0) of
    q^(sum lam_i^2) / ((q)_(lam_1-lam_2) ... (q)_(lam_(e0-1))), truncated.

    This is the p = 2, p' = 2*e0 + 1 limit; e0 = 2 gives the first
    Rogers-Ramanujan series."""
    if e0 < 2:
        raise CharFormError("need e0 >= 2")
    out = QSeriesTruncated([0], cutoff)
    for lam in _iter_bounded_partitions(e0 - 1, isqrt(cutoff), (e0 - 1) * isqrt(cutoff)):
        expo = sum(x * x for x in lam)
        if expo > cutoff:
            continue
        ser = QSeriesTruncated.one(cutoff)
        chain = lam + (0,)
        for i in range(e0 - 1):
            ser = ser * pochhammer_inverse_trunc(chain[i] - chain[i + 1], cutoff)
        out = out + ser.shifted(expo)
    return out


# ---------------------------------------------------------------------------
# Hook-difference partition counts
# ---------------------------------------------------------------------------

def _check_dki_window(K: int, i: int, N: int, M: int, alpha: int, beta: int) -> None:
    if not (1 <= i <= K // 2):
        raise CharFormError(f"need 1 <= i <= K/2, got i={i}, K={K}")
    if not alpha + beta < K:
        raise CharFormError(f"need alpha + beta < K, got {alpha}+{beta} vs {K}")
    if not (beta - i <= N - M <= K - alpha - i):
        raise CharFormError(f"(N, M) = ({N}, {M}) outside the window")
    if N < 0 or M < 0 or alpha < 0 or beta < 0:
        raise CharFormError("parameters must be non-negative")


def dki_closed(K: int, i: int, N: int, M: int, alpha: int, beta: int) -> QPolynomial:
    """Two alternating Gaussian sums:

    sum_j q^(j(Kj-i)(alpha+beta) + K beta j) [N+M over M-Kj]
    - sum_j q^(j(Kj+i)(alpha+beta) + K beta j + beta i) [N+M over M-Kj-i].
    """
    _check_dki_window(K, i, N, M, alpha, beta)
    out = QPolynomial.zero()
    for j in _gaussian_support(N + M, M, K, 0):
        g = gaussian(N + M, M - K * j)
        out = out + g.shifted(j * (K * j - i) * (alpha + beta) + K * beta * j)
    for j in _gaussian_support(N + M, M, K, i):
        g = gaussian(N + M, M - K * j - i)
        out = out - g.shifted(
            j * (K * j + i) * (alpha + beta) + K * beta * j + beta * i
        )
    return out


def dki_recurrence(
    K: int, i: int, N: int, M: int, alpha: int, beta: int
) -> QPolynomial:
    """Solve the coupled recurrences

        D(N,M;a,b) = D(N,M-1;a,b) + q^M D(N-1,M;a+1,b-1)
        D(N,M;a,b) = D(N-1,M;a,b) + q^N D(N,M-1;a-1,b+1)

    downward from (N, M), picking whichever keeps the parameters inside the
    window, with D(0,0) = 1 and the two boundary-zero lines."""
    _check_dki_window(K, i, N, M, alpha, beta)
    memo: dict[tuple[int, int, int, int], QPolynomial] = {}

    def rec(nv: int, mv: int, al: int, be: int) -> QPolynomial:
        if nv < 0 or mv < 0:
            return QPolynomial.zero()
        if al == 0 and nv - mv == K - i:
            return QPolynomial.zero()
        if be == 0 and nv - mv == -i:
            return QPolynomial.zero()
        if nv == 0 and mv == 0:
            return QPolynomial.one()
        key = (nv, mv, al, be)
        hit = memo.get(key)
        if hit is not None:
            return hit
        at_right_edge = nv - mv == K - al - i
        if (be >= 1 and not at_right_edge) or al == 0:
            value = rec(nv, mv - 1, al, be) + rec(nv - 1, mv, al + 1, be - 1).shifted(
                mv
            )
        else:
            value = rec(nv - 1, mv, al, be) + rec(nv, mv - 1, al - 1, be + 1).shifted(
                nv
            )
        memo[key] = value
        return value

    return rec(N, M, alpha, beta)


def chi_via_dki(labels: CharLabels) -> QPolynomial:
    """chi through the identification chi = D_{p',a}(N, M; p-r, r).

    Only usable when the resulting (alpha, beta) and window are admissible;
    out-of-window labels raise CharFormError rather than guessing."""
    r = labels.r
    n, m = (
        (labels.L - labels.a + labels.b) // 2,
        (labels.L + labels.a - labels.b) // 2,
    )
    return dki_closed(labels.p_prime, labels.a, n, m, labels.p - r, r)
