"""Exact arithmetic in Q(zeta), zeta a primitive cube root of unity.

Q(zeta) is dense in the unramified quadratic extension of Q_2, so every
quantity the U_2 computation needs lives here exactly.  Elements are
written ``re + zc*zeta`` with ``zeta**2 = -zeta - 1``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

__all__ = [
    "INF",
    "ExtendedInt",
    "CyclotomicRational",
    "ZETA",
    "ONE",
    "ZERO",
    "gen_binom",
    "c_poly",
    "g_bound",
    "val2",
    "val2_rational",
    "parse_rational",
    "format_rational",
]

Number = Union[int, Fraction]


@total_ordering
class ExtendedInt:
    """An integer or +infinity; the codomain of ``val2``.

    ``ExtendedInt`` compares and adds with plain ints, and infinity
    absorbs addition.
    """

    __slots__ = ("value",)

    def __init__(self, value):
        if isinstance(value, ExtendedInt):
            value = value.value
        if value is not None and not isinstance(value, int):
            raise TypeError(f"ExtendedInt needs an int or None, got {value!r}")
        self.value = value  # None encodes +infinity

    @property
    def is_inf(self) -> bool:
        return self.value is None

    def __int__(self):
        if self.value is None:
            raise OverflowError("cannot convert infinity to int")
        return self.value

    def __index__(self):
        return self.__int__()

    def __eq__(self, other):
        if isinstance(other, ExtendedInt):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, float) and math.isinf(other) and other > 0:
            return self.value is None
        return NotImplemented

    def __lt__(self, other):
        other = _as_ext(other)
        if other is NotImplemented:
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __hash__(self):
        return hash(self.value) if self.value is not None else hash("inf")

    def __add__(self, other):
        other = _as_ext(other)
        if other is NotImplemented:
            return NotImplemented
        if self.value is None or other.value is None:
            return INF
        return ExtendedInt(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return INF if self.value is None else ExtendedInt(self.value - other)
        return NotImplemented

    def __repr__(self):
        return "INF" if self.value is None else f"ExtendedInt({self.value})"

    def __str__(self):
        return "*" if self.value is None else str(self.value)


def _as_ext(x):
    if isinstance(x, ExtendedInt):
        return x
    if isinstance(x, int):
        return ExtendedInt(x)
    if isinstance(x, float) and math.isinf(x) and x > 0:
        return INF
    return NotImplemented


INF = ExtendedInt(None)


def _v2_int(n: int) -> int:
    # n != 0
    return (n & -n).bit_length() - 1


def val2_rational(q: Number) -> ExtendedInt:
    """2-adic valuation of a rational number."""
    q = Fraction(q)
    if q == 0:
        return INF
    return ExtendedInt(_v2_int(q.numerator) - _v2_int(q.denominator))


class CyclotomicRational:
    """Exact element ``re + zc*zeta`` of Q(zeta).

    >>> z = CyclotomicRational(0, 1)
    >>> z * z
    CyclotomicRational(-1, -1)
    >>> (2 * z + 1) ** 2
    CyclotomicRational(-3, 0)
    """

    __slots__ = ("re", "zc")

    def __init__(self, re: Number = 0, zc: Number = 0):
        self.re = Fraction(re)
        self.zc = Fraction(zc)

    @classmethod
    def coerce(cls, x) -> "CyclotomicRational":
        if isinstance(x, CyclotomicRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, str):
            return parse_cyclotomic(x)
        raise TypeError(f"cannot coerce {x!r} to CyclotomicRational")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            o = CyclotomicRational.coerce(other)
        except TypeError:
            return NotImplemented
        return CyclotomicRational(self.re + o.re, self.zc + o.zc)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicRational(-self.re, -self.zc)

    def __sub__(self, other):
        try:
            o = CyclotomicRational.coerce(other)
        except TypeError:
            return NotImplemented
        return CyclotomicRational(self.re - o.re, self.zc - o.zc)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicRational(self.re * other, self.zc * other)
        if not isinstance(other, CyclotomicRational):
            return NotImplemented
        a, b, c, d = self.re, self.zc, other.re, other.zc
        bd = b * d
        return CyclotomicRational(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def conj(self) -> "CyclotomicRational":
        """Galois conjugate; sends zeta to zeta**2 = -1 - zeta."""
        return CyclotomicRational(self.re - self.zc, -self.zc)

    def norm(self) -> Fraction:
        a, b = self.re, self.zc
        return a * a - a * b + b * b

    def inverse(self) -> "CyclotomicRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        c = self.conj()
        return CyclotomicRational(c.re / n, c.zc / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta)")
            return CyclotomicRational(self.re / other, self.zc / other)
        if not isinstance(other, CyclotomicRational):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CyclotomicRational.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        # 0**0 == 1 by convention
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparisons --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CyclotomicRational):
            return self.re == other.re and self.zc == other.zc
        if isinstance(other, (int, Fraction)):
            return self.zc == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.zc == 0:
            return hash(self.re)
        return hash((self.re, self.zc))

    def __bool__(self):
        return bool(self.re) or bool(self.zc)

    def is_rational(self) -> bool:
        return self.zc == 0

    def __repr__(self):
        return f"CyclotomicRational({format_rational(self.re)}, {format_rational(self.zc)})"

    def __str__(self):
        return format_cyclotomic(self)


ZERO = CyclotomicRational(0, 0)
ONE = CyclotomicRational(1, 0)
ZETA = CyclotomicRational(0, 1)


def val2(x) -> ExtendedInt:
    """2-adic valuation on Q(zeta), normalised so that ``val2(2) == 1``.

    2 is inert in Q(zeta), so the valuation of the norm is always even.
    """
    x = CyclotomicRational.coerce(x)
    if not x:
        return INF
    v = val2_rational(x.norm()).value
    if v % 2:
        raise ArithmeticError(f"odd norm valuation {v} for {x!r}; arithmetic is broken")
    return ExtendedInt(v // 2)


def gen_binom(m: int, r: int) -> int:
    """Generalised binomial coefficient m(m-1)...(m-r+1)/r! for any integer m."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if m >= 0:
        return math.comb(m, r)
    # binom(m, r) = (-1)^r binom(r - m - 1, r) for m < 0
    return (-1) ** r * math.comb(r - m - 1, r)


def c_poly(i: int, j: int, n: int, x) -> CyclotomicRational:
    """Evaluate sum_{r=0}^{i} binom(n-j, r) binom(j, i-r) x^r exactly."""
    x = CyclotomicRational.coerce(x)
    total = ZERO
    xr = ONE
    for r in range(i + 1):
        coeff = gen_binom(n - j, r) * math.comb(j, i - r)
        if coeff:
            total = total + xr * coeff
        xr = xr * x
    return total


def g_bound(x: int, y: int, n: int) -> ExtendedInt:
    """Lower bound contribution for one coordinate of an entry valuation."""
    if x < 0 or y < 0:
        raise ValueError("x and y must be nonnegative")
    if x > n >= y:
        return INF
    if y == 0:
        return ExtendedInt(x)
    if y >= x:
        return ExtendedInt(0)
    return ExtendedInt(x - y)


# serialisation ----------------------------------------------------------

def format_rational(q: Number) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s:
        raise ValueError("empty rational")
    return Fraction(s)


def format_cyclotomic(x: CyclotomicRational) -> str:
    """Serialise as ``a+b*z`` (the ``+b*z`` part omitted when b is zero)."""
    if x.zc == 0:
        return format_rational(x.re)
    zc = format_rational(x.zc)
    sign = "+" if x.zc > 0 else ""
    return f"{format_rational(x.re)}{sign}{zc}*z"


def parse_cyclotomic(s: str) -> CyclotomicRational:
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty element")
    if not s.endswith("*z"):
        return CyclotomicRational(parse_rational(s), 0)
    body = s[:-2]
    # split at the last sign that is not the leading one or part of an exponent
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-":
            return CyclotomicRational(parse_rational(body[:k]), parse_rational(body[k:]))
    return CyclotomicRational(0, parse_rational(body))


def format_valuation(v: ExtendedInt) -> str:
    return str(v)
