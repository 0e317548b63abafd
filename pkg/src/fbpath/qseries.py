"""Exact arithmetic for Laurent polynomials and truncated power series in q.

Coefficients are Python ints throughout, so every result is exact no matter
how large the coefficients grow.  Three value types are provided:

* :class:`QPolynomial` -- Laurent polynomial in q (integer exponents, possibly
  negative), the universal carrier for weights and generating functions.
* :class:`QuarterPolynomial` -- a QPolynomial whose exponents are read in
  units of q^(1/4).  Weight prescriptions that produce half- and
  quarter-integer exponents live here until they are normalised.
* :class:`QSeriesTruncated` -- power series kept exactly up to a cutoff
  degree, for the infinite-product limits.

Gaussian polynomials are computed by the q-Pascal recurrence
``[A,B] = [A-1,B] + q^(A-B) [A-1,B-1]`` with a shared row cache; no
polynomial division is ever performed.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping


class QPolynomial:
    """Immutable Laurent polynomial in q with integer coefficients.

    The internal map never stores zero coefficients, so equality is plain
    coefficient-wise equality.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        c = dict(coeffs) if not isinstance(coeffs, dict) else dict(coeffs)
        self._c = {e: v for e, v in c.items() if v}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "QPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "QPolynomial":
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int, exponent: int = 0) -> "QPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def q_power(cls, exponent: int) -> "QPolynomial":
        return cls({exponent: 1})

    # -- inspection ---------------------------------------------------

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def degree(self) -> int:
        """Top exponent; raises ValueError on the zero polynomial."""
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    @property
    def valuation(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no valuation")
        return min(self._c)

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return QPolynomial(out)

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) - v
        return QPolynomial(out)

    def __neg__(self) -> "QPolynomial":
        return QPolynomial({e: -v for e, v in self._c.items()})

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if len(self._c) > len(other._c):
            self, other = other, self
        out: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + v1 * v2
        return QPolynomial(out)

    def __pow__(self, n: int) -> "QPolynomial":
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = QPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, exponent: int) -> "QPolynomial":
        """Multiply by q^exponent."""
        if exponent == 0:
            return self
        return QPolynomial({e + exponent: v for e, v in self._c.items()})

    def scaled(self, factor: int) -> "QPolynomial":
        """Multiply every exponent by factor (substitute q -> q^factor)."""
        return QPolynomial({e * factor: v for e, v in self._c.items()})

    def subs_q_inverse(self) -> "QPolynomial":
        """Substitute q -> q^(-1)."""
        return QPolynomial({-e: v for e, v in self._c.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def __bool__(self) -> bool:
        return bool(self._c)

    # -- external formats ---------------------------------------------

    def to_text(self) -> str:
        """Render in the exact interchange format, e.g. ``1 + q + 2*q^2``.

        Terms ascend by exponent; ``q^0`` is elided to the bare coefficient
        and a unit coefficient is elided from ``1*q^e``; exponent one is
        written ``q``.
        """
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            if e == 0:
                parts.append(str(v))
                continue
            qpart = "q" if e == 1 else f"q^{e}"
            parts.append(qpart if v == 1 else f"{v}*{qpart}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "QPolynomial":
        text = text.strip()
        if text == "0":
            return cls.zero()
        out: dict[int, int] = {}
        for raw in text.split(" + "):
            term = raw.strip()
            if "*" in term:
                cpart, qpart = term.split("*", 1)
                coeff = int(cpart)
            elif term.startswith("q"):
                coeff, qpart = 1, term
            else:
                coeff, qpart = int(term), None
            if qpart is None:
                exp = 0
            elif qpart == "q":
                exp = 1
            else:
                if not qpart.startswith("q^"):
                    raise ValueError(f"bad polynomial term: {raw!r}")
                exp = int(qpart[2:])
            out[exp] = out.get(exp, 0) + coeff
        return cls(out)

    def to_json_pairs(self) -> list[list]:
        """``[[exponent, coefficient-as-decimal-string], ...]`` sorted by exponent."""
        return [[e, str(v)] for e, v in sorted(self._c.items())]

    @classmethod
    def from_json_pairs(cls, pairs: Iterable[Iterable]) -> "QPolynomial":
        return cls({int(e): int(v) for e, v in pairs})

    def __repr__(self) -> str:
        return f"QPolynomial({self.to_text()})"


class QuarterPolynomial:
    """Laurent polynomial whose exponents are in units of q^(1/4)."""

    __slots__ = ("_p",)

    def __init__(self, quarter_coeffs: Mapping[int, int] | QPolynomial = ()):
        if isinstance(quarter_coeffs, QPolynomial):
            self._p = quarter_coeffs
        else:
            self._p = QPolynomial(quarter_coeffs)

    @property
    def raw(self) -> QPolynomial:
        """The underlying polynomial with exponents in quarter units."""
        return self._p

    def __add__(self, other: "QuarterPolynomial") -> "QuarterPolynomial":
        return QuarterPolynomial(self._p + other._p)

    def __mul__(self, other: "QuarterPolynomial") -> "QuarterPolynomial":
        return QuarterPolynomial(self._p * other._p)

    def shifted_quarters(self, quarter_exponent: int) -> "QuarterPolynomial":
        return QuarterPolynomial(self._p.shifted(quarter_exponent))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuarterPolynomial):
            return NotImplemented
        return self._p == other._p

    def __hash__(self) -> int:
        return hash(("quarter", self._p))

    def to_qpolynomial(self) -> QPolynomial:
        """Convert to an honest polynomial in q.

        Every stored exponent must be divisible by 4; anything else means a
        normalisation step was skipped and is reported loudly.
        """
        out = {}
        for e, v in self._p.items():
            if e % 4:
                raise ValueError(
                    f"exponent {e}/4 is not an integer; quarter polynomial "
                    "cannot be converted"
                )
            out[e // 4] = v
        return QPolynomial(out)

    def __repr__(self) -> str:
        return f"QuarterPolynomial({self._p.to_text()} in q^(1/4))"


# ---------------------------------------------------------------------------
# Gaussian polynomials
# ---------------------------------------------------------------------------

# Row r of the cache holds the dense coefficient tuples of [r, B] for
# 0 <= B <= r; rows are grown on demand and shared by every caller.
_gaussian_rows: list[list[tuple[int, ...]]] = [[(1,)]]
_gaussian_memo: dict[tuple[int, int], QPolynomial] = {}


def _extend_gaussian_rows(upto: int) -> None:
    while len(_gaussian_rows) <= upto:
        a = len(_gaussian_rows)
        prev = _gaussian_rows[-1]
        row: list[tuple[int, ...]] = []
        for b in range(a + 1):
            if b == 0 or b == a:
                row.append((1,))
                continue
            # [a,b] = [a-1,b] + q^(a-b) [a-1,b-1]
            left = prev[b] if b < a else ()
            right = prev[b - 1]
            n = max(len(left), len(right) + a - b)
            out = [0] * n
            for k, v in enumerate(left):
                out[k] += v
            for k, v in enumerate(right):
                out[k + a - b] += v
            row.append(tuple(out))
        _gaussian_rows.append(row)


def gaussian(a: int, b: int) -> QPolynomial:
    """Gaussian polynomial [a over b] in q; zero unless 0 <= b <= a.

    gaussian(n+m, m) is the generating function for partitions fitting in an
    n x m box; degree is b*(a-b) and all in-range coefficients are positive.
    """
    if not (0 <= b <= a):
        return QPolynomial.zero()
    b = min(b, a - b)
    key = (a, b)
    hit = _gaussian_memo.get(key)
    if hit is not None:
        return hit
    _extend_gaussian_rows(a)
    poly = QPolynomial({e: v for e, v in enumerate(_gaussian_rows[a][b]) if v})
    _gaussian_memo[key] = poly
    return poly


def q_inverse_normalized(g: QPolynomial, m: int, n: int) -> QPolynomial:
    """Return q^(m*n) * g(q^(-1)).

    For g = gaussian(m+n, n) this is again gaussian(m+n, n): the Gaussian
    polynomials are self-reciprocal of degree m*n.
    """
    return g.subs_q_inverse().shifted(m * n)


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------

class QSeriesTruncated:
    """Power series in q kept exactly up to and including degree ``cutoff``.

    All arithmetic discards coefficients above the cutoff and never corrupts
    the ones below it.
    """

    __slots__ = ("coeffs", "cutoff")

    def __init__(self, coeffs: Iterable[int], cutoff: int):
        if cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        c = list(coeffs)
        if len(c) < cutoff + 1:
            c += [0] * (cutoff + 1 - len(c))
        self.coeffs = tuple(c[: cutoff + 1])
        self.cutoff = cutoff

    @classmethod
    def one(cls, cutoff: int) -> "QSeriesTruncated":
        return cls([1], cutoff)

    @classmethod
    def from_qpolynomial(cls, p: QPolynomial, cutoff: int) -> "QSeriesTruncated":
        c = [0] * (cutoff + 1)
        for e, v in p.items():
            if e < 0:
                raise ValueError("negative exponent cannot enter a power series")
            if e <= cutoff:
                c[e] = v
        return cls(c, cutoff)

    def _check(self, other: "QSeriesTruncated") -> None:
        if self.cutoff != other.cutoff:
            raise ValueError("cutoff mismatch")

    def __add__(self, other: "QSeriesTruncated") -> "QSeriesTruncated":
        self._check(other)
        return QSeriesTruncated(
            [x + y for x, y in zip(self.coeffs, other.coeffs)], self.cutoff
        )

    def __sub__(self, other: "QSeriesTruncated") -> "QSeriesTruncated":
        self._check(other)
        return QSeriesTruncated(
            [x - y for x, y in zip(self.coeffs, other.coeffs)], self.cutoff
        )

    def __mul__(self, other: "QSeriesTruncated") -> "QSeriesTruncated":
        self._check(other)
        d = self.cutoff
        out = [0] * (d + 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs[: d + 1 - i]):
                if y:
                    out[i + j] += x * y
        return QSeriesTruncated(out, d)

    def mul_poly(self, p: QPolynomial) -> "QSeriesTruncated":
        return self * QSeriesTruncated.from_qpolynomial(p, self.cutoff)

    def shifted(self, exponent: int) -> "QSeriesTruncated":
        """Multiply by q^exponent (exponent >= 0)."""
        if exponent < 0:
            raise ValueError("cannot shift a truncated series below degree 0")
        out = [0] * exponent + list(self.coeffs)
        return QSeriesTruncated(out, self.cutoff)

    def inverse(self) -> "QSeriesTruncated":
        """Multiplicative inverse; defined only when the constant term is +-1."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError("series inverse needs constant term +1 or -1")
        d = self.cutoff
        inv = [0] * (d + 1)
        inv[0] = c0  # 1/c0 == c0 for +-1
        for k in range(1, d + 1):
            acc = 0
            for j in range(1, k + 1):
                acc += self.coeffs[j] * inv[k - j]
            inv[k] = -c0 * acc
        return QSeriesTruncated(inv, d)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeriesTruncated):
            return NotImplemented
        return self.cutoff == other.cutoff and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.cutoff, self.coeffs))

    def to_text(self) -> str:
        return QPolynomial({e: v for e, v in enumerate(self.coeffs)}).to_text()

    def __repr__(self) -> str:
        return f"QSeriesTruncated({self.to_text()} + O(q^{self.cutoff + 1}))"


def pochhammer_trunc(n: int | None, cutoff: int) -> QSeriesTruncated:
    """(q)_n = prod_{i=1..n} (1 - q^i) truncated at ``cutoff``.

    ``n=None`` means (q)_infinity; factors beyond the cutoff are invisible,
    so the product over i <= cutoff is already exact.
    """
    if n is not None and n < 0:
        raise ValueError("pochhammer index must be non-negative")
    top = cutoff if n is None else min(n, cutoff)
    out = QSeriesTruncated.one(cutoff)
    for i in range(1, top + 1):
        out = out.mul_poly(QPolynomial({0: 1, i: -1}))
    return out


def pochhammer_inverse_trunc(n: int | None, cutoff: int) -> QSeriesTruncated:
    """1/(q)_n truncated at ``cutoff``."""
    return pochhammer_trunc(n, cutoff).inverse()
