"""Exact scalar arithmetic: rationals plus quadratic radicals.

All distance computations in this package are exact.  1D values are plain
``int``/``Fraction``.  2D Euclidean distances are square roots of rationals,
represented by :class:`Radical` (``a + b*sqrt(r)``) with exact comparisons,
so decision procedures never touch floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]
Exact = Union[int, Fraction, "Radical"]


def to_exact(x) -> Exact:
    """Parse a value into an exact number.

    Accepts ints, Fractions, Radicals, and strings ("7", "7/2", "3.25").
    Floats are rejected: callers must route JSON numbers through a parse
    hook that preserves the decimal text.
    """
    if isinstance(x, bool):
        raise ValueError("boolean is not a coordinate")
    if isinstance(x, int):
        return x
    if isinstance(x, Radical):
        return x
    if isinstance(x, Fraction):
        return _simplify(x)
    if isinstance(x, str):
        return _simplify(Fraction(x))
    raise ValueError(f"cannot parse {x!r} as an exact number")


def _simplify(q: Fraction) -> Rational:
    return q.numerator if q.denominator == 1 else q


def fmt_exact(x: Exact) -> str:
    """Lowest-terms rendering: "7", "7/2", "sqrt(2)", "1/2+3*sqrt(5)"."""
    if isinstance(x, Radical):
        return str(x)
    q = Fraction(x)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _sqrt_if_perfect(q: Fraction) -> Rational | None:
    """Exact square root of q if it is the square of a rational, else None."""
    if q < 0:
        raise ValueError("negative radicand")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return _simplify(Fraction(rn, rd))
    return None


def rad_sign(a: Rational, b: Rational, r: Rational) -> int:
    """Sign of a + b*sqrt(r) for rationals with r >= 0."""
    if r < 0:
        raise ValueError("negative radicand")
    if b == 0 or r == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 against b^2 * r
    lhs = Fraction(a) ** 2
    rhs = Fraction(b) ** 2 * r
    if lhs == rhs:
        return 0
    bigger_is_a = lhs > rhs
    if a > 0:
        return 1 if bigger_is_a else -1
    return -1 if bigger_is_a else 1


def _two_radical_sign(c: Rational, s: Rational, x: Rational,
                      t: Rational, y: Rational) -> int:
    """Sign of c + s*sqrt(x) + t*sqrt(y)."""
    if x == y:
        return rad_sign(c, Fraction(s) + Fraction(t), x)
    if s == 0 or x == 0:
        return rad_sign(c, t, y)
    if t == 0 or y == 0:
        return rad_sign(c, s, x)
    su = rad_sign(c, s, x)          # sign of u = c + s*sqrt(x)
    sw = (t > 0) - (t < 0)          # sign of w = t*sqrt(y)
    if su == 0:
        return sw
    if sw == 0:
        return su
    if su == sw:
        return su
    # opposite: |u| vs |w| via u^2 - w^2 = (c^2 + s^2 x - t^2 y) + 2cs*sqrt(x)
    d = Fraction(c) ** 2 + Fraction(s) ** 2 * x - Fraction(t) ** 2 * y
    cmp_sq = rad_sign(d, 2 * Fraction(c) * Fraction(s), x)
    if cmp_sq == 0:
        return 0
    return su if cmp_sq > 0 else sw


class Radical:
    """a + b*sqrt(r) with exact total order against rationals and Radicals.

    Instances are produced by :func:`make_radical`, which collapses perfect
    squares to plain rationals, so a live Radical is always irrational.
    Unhashable by design: deduplicate via sorting, not sets.
    """

    __slots__ = ("a", "b", "r")
    __hash__ = None

    def __init__(self, a: Rational, b: Rational, r: Rational):
        self.a = a
        self.b = b
        self.r = r

    def _cmp(self, other) -> int:
        if isinstance(other, Radical):
            return _two_radical_sign(
                Fraction(self.a) - Fraction(other.a),
                self.b, self.r, -Fraction(other.b), other.r)
        if isinstance(other, (int, Fraction)):
            return rad_sign(Fraction(self.a) - other, self.b, self.r)
        return NotImplemented

    def __eq__(self, other):
        c = self._cmp(other)
        return c == 0 if c is not NotImplemented else NotImplemented

    def __lt__(self, other):
        c = self._cmp(other)
        return c < 0 if c is not NotImplemented else NotImplemented

    def __le__(self, other):
        c = self._cmp(other)
        return c <= 0 if c is not NotImplemented else NotImplemented

    def __gt__(self, other):
        c = self._cmp(other)
        return c > 0 if c is not NotImplemented else NotImplemented

    def __ge__(self, other):
        c = self._cmp(other)
        return c >= 0 if c is not NotImplemented else NotImplemented

    def __neg__(self):
        return Radical(-Fraction(self.a), -Fraction(self.b), self.r)

    def _split(self, other):
        """Other as (a, b) over sqrt(self.r), or None if outside the field."""
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        if isinstance(other, Radical) and other.r == self.r:
            return Fraction(other.a), Fraction(other.b)
        return None

    def __add__(self, other):
        f = self._split(other)
        if f is None:
            return NotImplemented
        return make_radical(Fraction(self.a) + f[0],
                            Fraction(self.b) + f[1], self.r)

    __radd__ = __add__

    def __sub__(self, other):
        f = self._split(other)
        if f is None:
            return NotImplemented
        return make_radical(Fraction(self.a) - f[0],
                            Fraction(self.b) - f[1], self.r)

    def __rsub__(self, other):
        f = self._split(other)
        if f is None:
            return NotImplemented
        return make_radical(f[0] - Fraction(self.a),
                            f[1] - Fraction(self.b), self.r)

    def __mul__(self, other):
        f = self._split(other)
        if f is None:
            return NotImplemented
        a, b = Fraction(self.a), Fraction(self.b)
        return make_radical(a * f[0] + b * f[1] * self.r,
                            a * f[1] + b * f[0], self.r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Radical):
            # multiply by the conjugate; norm is a nonzero rational
            na = Fraction(other.a)
            nb = Fraction(other.b)
            norm = na * na - nb * nb * other.r
            return self * make_radical(na / norm, -nb / norm, other.r)
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return make_radical(Fraction(self.a) / other,
                            Fraction(self.b) / other, self.r)

    def __abs__(self):
        return -self if self < 0 else self

    def __floor__(self):
        est = math.floor(float(self))
        while self < est:
            est -= 1
        while self >= est + 1:
            est += 1
        return est

    def __int__(self):
        # truncate toward zero; a live Radical is never an exact integer
        f = self.__floor__()
        return f if f >= 0 else f + 1

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.r))

    def __repr__(self):
        return f"Radical({self.a!r}, {self.b!r}, {self.r!r})"

    def __str__(self):
        parts = []
        if self.a != 0:
            parts.append(fmt_exact(self.a))
        b = Fraction(self.b)
        root = f"sqrt({fmt_exact(self.r)})"
        if b == 1:
            term = root
        elif b == -1:
            term = f"-{root}"
        else:
            term = f"{fmt_exact(self.b)}*{root}"
        if parts and b > 0:
            parts.append("+")
        parts.append(term)
        return "".join(parts)


def make_radical(a: Rational, b: Rational, r: Rational) -> Exact:
    """Build a + b*sqrt(r), collapsing to a rational when possible."""
    if isinstance(r, Radical):
        raise ValueError("nested radical is outside the supported field")
    if r < 0:
        raise ValueError("negative radicand")
    if b == 0 or r == 0:
        return _simplify(Fraction(a))
    root = _sqrt_if_perfect(Fraction(r))
    if root is not None:
        return _simplify(Fraction(a) + Fraction(b) * root)
    return Radical(a, b, r)


def sqrt_exact(q: Rational) -> Exact:
    """Exact nonnegative square root of a rational."""
    if isinstance(q, Radical):
        raise ValueError("nested radical is outside the supported field")
    return make_radical(0, 1, q)


def common_denominator(values) -> int:
    """LCM of denominators over ints/Fractions; ints contribute 1."""
    lcm = 1
    for v in values:
        if isinstance(v, Fraction):
            d = v.denominator
            lcm = lcm // math.gcd(lcm, d) * d
    return lcm
