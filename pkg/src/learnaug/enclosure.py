"""Rigorous rational enclosures of exp and log.

The trade-off bounds involve ``e**-lam`` and ``log(1 + 1/(g - 1))``.  Rather
than trust floats at the feasibility boundary, every transcendental value is
carried as an :class:`Interval` with Fraction endpoints that provably contains
the true real number.  Endpoints are rounded outward onto a dyadic grid of
``bits`` binary digits so the Fractions stay small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

DEFAULT_BITS = 96

Number = Union[Fraction, int]


def _floor_dyadic(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction((q.numerator * scale) // q.denominator, scale)


def _ceil_dyadic(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(-((-q.numerator * scale) // q.denominator), scale)


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` of rationals."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q: Number) -> "Interval":
        q = Fraction(q)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, q: Number) -> bool:
        return self.lo <= q <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def rounded(self, bits: int = DEFAULT_BITS) -> "Interval":
        return Interval(_floor_dyadic(self.lo, bits), _ceil_dyadic(self.hi, bits))

    def __add__(self, other: "Interval | Number") -> "Interval":
        o = _lift(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval | Number") -> "Interval":
        return self + (-_lift(other))

    def __rsub__(self, other: Number) -> "Interval":
        return _lift(other) - self

    def __mul__(self, other: "Interval | Number") -> "Interval":
        o = _lift(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other: "Interval | Number") -> "Interval":
        o = _lift(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError(f"division by an interval containing zero: {o}")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other: Number) -> "Interval":
        return _lift(other) / self

    def __repr__(self) -> str:
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r}, width={float(self.width):.3g})"


def _lift(v: "Interval | Number") -> Interval:
    return v if isinstance(v, Interval) else Interval.point(v)


def bits_for_digits(digits: int) -> int:
    return math.ceil(digits * math.log2(10)) + 24


def exp_enclosure(q: Number, bits: int = DEFAULT_BITS) -> Interval:
    """Enclose ``exp(q)`` for rational ``q``."""
    q = Fraction(q)
    if q == 0:
        return Interval.point(1)
    # halve until |r| <= 1/2, then square back up
    halvings = 0
    r = q
    while abs(r) > Fraction(1, 2):
        r /= 2
        halvings += 1
    work = bits + 2 * halvings + 8
    tol = Fraction(1, 1 << work)
    total = Fraction(0)
    term = Fraction(1)
    n = 0
    while True:
        total += term
        n += 1
        term = term * r / n
        if abs(term) < tol:
            break
    # terms shrink by at least a factor 2 from here on
    tail = 2 * abs(term)
    enc = Interval(total - tail, total + tail).rounded(work)
    for _ in range(halvings):
        enc = Interval(enc.lo * enc.lo, enc.hi * enc.hi).rounded(work)
    return enc.rounded(bits)


def _atanh_series(z: Fraction, bits: int) -> Interval:
    """Enclose ``atanh(z)`` for ``|z| <= 1/3``."""
    tol = Fraction(1, 1 << bits)
    z2 = z * z
    power = z
    total = Fraction(0)
    j = 0
    while True:
        total += power / (2 * j + 1)
        j += 1
        power *= z2
        tail = abs(power) / ((2 * j + 1) * (1 - z2))
        if tail < tol:
            break
    return Interval(total - tail, total + tail).rounded(bits)


def ln_enclosure(q: Number, bits: int = DEFAULT_BITS) -> Interval:
    """Enclose the natural log of a positive rational."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"log of non-positive value {q}")
    if q == 1:
        return Interval.point(0)
    # q = 2**e * r with r in [2/3, 4/3], so |(r-1)/(r+1)| <= 1/7
    e = q.numerator.bit_length() - q.denominator.bit_length()
    r = q / Fraction(2) ** e
    while r > Fraction(4, 3):
        r /= 2
        e += 1
    while r < Fraction(2, 3):
        r *= 2
        e -= 1
    work = bits + abs(e).bit_length() + 8
    enc = 2 * _atanh_series((r - 1) / (r + 1), work)
    if e:
        ln2 = 2 * _atanh_series(Fraction(1, 3), work)
        enc = enc + e * ln2
    return enc.rounded(bits)


def exp_interval(x: Interval, bits: int = DEFAULT_BITS) -> Interval:
    return Interval(exp_enclosure(x.lo, bits).lo, exp_enclosure(x.hi, bits).hi)


def ln_interval(x: Interval, bits: int = DEFAULT_BITS) -> Interval:
    return Interval(ln_enclosure(x.lo, bits).lo, ln_enclosure(x.hi, bits).hi)


def pow_enclosure(base: Number, exponent: Number, bits: int = DEFAULT_BITS) -> Interval:
    """Enclose ``base ** exponent`` for positive rational base.

    Integer exponents are evaluated exactly.
    """
    base, exponent = Fraction(base), Fraction(exponent)
    if base <= 0:
        raise ValueError("base must be positive")
    if exponent.denominator == 1:
        return Interval.point(base ** exponent.numerator)
    work = bits + 16
    log_b = ln_enclosure(base, work)
    return exp_interval((exponent * log_b).rounded(work), work).rounded(bits)
