import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fbpath.qseries import (
    QPolynomial,
    QSeriesTruncated,
    QuarterPolynomial,
    gaussian,
    pochhammer_inverse_trunc,
    pochhammer_trunc,
    q_inverse_normalized,
)


def poly(d):
    return QPolynomial(d)


# -- independent oracles -----------------------------------------------------

def partitions_in_box_genfun(n, m):
    """Brute-force generating function of partitions in an n x m box."""
    counts = {}

    def rec(maxpart, slots, total):
        counts[total] = counts.get(total, 0) + 1
        if slots == 0:
            return
        for first in range(1, maxpart + 1):
            rec(first, slots - 1, total + first)

    rec(n, m, 0)
    return QPolynomial(counts)


def partition_numbers(limit):
    """p(0..limit) by the classic part-bounded recursion."""
    table = {}

    def count(n, maxpart):
        if n == 0:
            return 1
        if maxpart == 0:
            return 0
        key = (n, maxpart)
        if key not in table:
            table[key] = sum(count(n - k, k) for k in range(1, min(n, maxpart) + 1))
        return table[key]

    return [count(n, n) for n in range(limit + 1)]


# -- QPolynomial basics ------------------------------------------------------

def test_add_examples():
    assert poly({0: 1, 1: 1}) + poly({1: 1}) == poly({0: 1, 1: 2})
    p = poly({-2: 3, 5: 7})
    assert p + QPolynomial.zero() == p
    assert poly({0: 1, 1: 1}) + poly({0: -1, 1: -1}) == QPolynomial.zero()


def test_mul_examples():
    one_plus_q = poly({0: 1, 1: 1})
    assert one_plus_q * one_plus_q == poly({0: 1, 1: 2, 2: 1})
    p = poly({-1: 2, 3: 5})
    assert p * QPolynomial.one() == p
    assert QPolynomial.q_power(-1) * QPolynomial.q_power(1) == QPolynomial.one()


def test_canonical_form_drops_zeros():
    assert not poly({3: 0})._c
    assert poly({1: 2, 2: 0}) == poly({1: 2})


small_polys = st.dictionaries(
    st.integers(min_value=-6, max_value=9),
    st.integers(min_value=-50, max_value=50),
    max_size=6,
).map(QPolynomial)


@settings(max_examples=150, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == QPolynomial.zero()


@settings(max_examples=80, deadline=None)
@given(small_polys)
def test_text_roundtrip(a):
    assert QPolynomial.from_text(a.to_text()) == a


@settings(max_examples=80, deadline=None)
@given(small_polys)
def test_json_roundtrip(a):
    assert QPolynomial.from_json_pairs(a.to_json_pairs()) == a


def test_text_format_pins():
    assert poly({0: 1, 1: 1, 2: 2}).to_text() == "1 + q + 2*q^2"
    assert QPolynomial.zero().to_text() == "0"
    assert poly({-1: 1}).to_text() == "q^-1"
    assert poly({1: -3, 0: 2}).to_text() == "2 + -3*q"


# -- Gaussian polynomials ----------------------------------------------------

def test_gaussian_out_of_range_is_zero():
    assert gaussian(4, 5) == QPolynomial.zero()
    assert gaussian(3, -1) == QPolynomial.zero()


@pytest.mark.parametrize("n", range(0, 7))
def test_gaussian_trivial_column(n):
    assert gaussian(n, 0) == QPolynomial.one()


def test_gaussian_4_2_against_box_oracle():
    assert gaussian(4, 2) == partitions_in_box_genfun(2, 2)
    assert gaussian(4, 2).to_text() == "1 + q + 2*q^2 + q^3 + q^4"


@pytest.mark.parametrize("a", range(0, 10))
def test_gaussian_box_oracle_full(a):
    for b in range(a + 1):
        assert gaussian(a, b) == partitions_in_box_genfun(a - b, b)


def test_gaussian_symmetry_and_degree():
    for a in range(1, 11):
        for b in range(a + 1):
            g = gaussian(a, b)
            assert g == gaussian(a, a - b)
            assert g.degree == b * (a - b)
            assert all(v > 0 for _, v in g.items())


def test_q_inverse_normalized():
    g = gaussian(2, 1)
    assert q_inverse_normalized(g, 1, 1) == g  # q*(1 + q^-1) == 1 + q
    assert q_inverse_normalized(QPolynomial.one(), 0, 5) == QPolynomial.one()
    for m in range(9):
        for n in range(9):
            g = gaussian(m + n, n)
            assert q_inverse_normalized(g, m, n) == g


# -- QuarterPolynomial -------------------------------------------------------

def test_quarter_conversion():
    ok = QuarterPolynomial({0: 1, 4: 2, -8: 3})
    assert ok.to_qpolynomial() == poly({0: 1, 1: 2, -2: 3})
    bad = QuarterPolynomial({2: 1})
    with pytest.raises(ValueError):
        bad.to_qpolynomial()


def test_quarter_arithmetic_tracks_raw():
    a = QuarterPolynomial({1: 1})
    b = QuarterPolynomial({3: 2})
    assert (a * b).raw == poly({4: 2})
    assert (a + a).raw == poly({1: 2})
    assert a.shifted_quarters(-1).raw == poly({0: 1})


# -- truncated series --------------------------------------------------------

def test_pochhammer_empty_product():
    assert pochhammer_trunc(0, 6) == QSeriesTruncated.one(6)


def test_pochhammer_small_expansion():
    # (1-q)(1-q^2) = 1 - q - q^2 + q^3
    assert pochhammer_trunc(2, 3).coeffs == (1, -1, -1, 1)


def test_pochhammer_infinite_inverse_is_partition_numbers():
    want = partition_numbers(12)
    got = pochhammer_inverse_trunc(None, 12)
    assert list(got.coeffs) == want
    assert want[:6] == [1, 1, 2, 3, 5, 7]


def test_series_arithmetic_closed_under_cutoff():
    a = QSeriesTruncated([1, 2, 3], 4)
    b = QSeriesTruncated([1, 0, 0, 0, 9], 4)
    assert (a * b).coeffs == (1, 2, 3, 0, 9)
    assert (a + b - b) == a
    with pytest.raises(ValueError):
        a * QSeriesTruncated([1], 5)


def test_series_inverse_requires_unit():
    with pytest.raises(ValueError):
        QSeriesTruncated([2, 1], 3).inverse()
    s = pochhammer_trunc(3, 10)
    assert (s * s.inverse()) == QSeriesTruncated.one(10)


def test_series_from_polynomial_rejects_negative_exponents():
    with pytest.raises(ValueError):
        QSeriesTruncated.from_qpolynomial(poly({-1: 1}), 5)
