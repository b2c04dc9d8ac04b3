"""Exact base-2 rationals (dyadics) and directed grid rounding.

A dyadic is ``m * 2**e`` for integers ``m``, ``e``.  Addition,
subtraction and multiplication are closed over the dyadics and are
computed exactly here; rounding only ever happens explicitly, through
:meth:`Dyadic.floor_to_grid` / :meth:`Dyadic.ceil_to_grid`, which move a
value onto the grid of multiples of ``2**-p`` by less than ``2**-p``,
downward respectively upward.

Canonical form: the mantissa is odd, or the value is zero and stored as
``0 * 2**0``.  Equal values therefore have identical representations,
so ``==`` and ``hash`` agree with numeric equality.

Instances are treated as immutable; no operation mutates its operands.
"""

from __future__ import annotations

from fractions import Fraction


class Dyadic:
    """``m * 2**e`` with odd mantissa (or the canonical zero)."""

    __slots__ = ("m", "e")

    def __init__(self, mantissa: int, exponent: int = 0) -> None:
        if mantissa == 0:
            self.m = 0
            self.e = 0
        else:
            shift = (mantissa & -mantissa).bit_length() - 1
            self.m = mantissa >> shift
            self.e = exponent + shift

    # === constructors ===

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Dyadic":
        """Exact conversion; raises ValueError unless the denominator is a power of two."""
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not dyadic")
        return cls(value.numerator, 1 - den.bit_length())

    # === conversions ===

    def to_fraction(self) -> Fraction:
        if self.e >= 0:
            return Fraction(self.m << self.e)
        return Fraction(self.m, 1 << -self.e)

    def __float__(self) -> float:
        return float(self.to_fraction())

    # === exact arithmetic ===

    def __add__(self, other: "Dyadic") -> "Dyadic":
        if self.e >= other.e:
            return Dyadic((self.m << (self.e - other.e)) + other.m, other.e)
        return Dyadic(self.m + (other.m << (other.e - self.e)), self.e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        if self.e >= other.e:
            return Dyadic((self.m << (self.e - other.e)) - other.m, other.e)
        return Dyadic(self.m - (other.m << (other.e - self.e)), self.e)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.m * other.m, self.e + other.e)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.m, self.e)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.m), self.e)

    def scale2(self, k: int) -> "Dyadic":
        """Exact multiplication by ``2**k``."""
        if self.m == 0:
            return self
        return Dyadic(self.m, self.e + k)

    @property
    def sign(self) -> int:
        return (self.m > 0) - (self.m < 0)

    # === comparison ===

    def _cmp(self, other: "Dyadic") -> int:
        if self.e >= other.e:
            diff = (self.m << (self.e - other.e)) - other.m
        else:
            diff = self.m - (other.m << (other.e - self.e))
        return (diff > 0) - (diff < 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.m == other.m and self.e == other.e

    def __lt__(self, other: "Dyadic") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "Dyadic") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "Dyadic") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "Dyadic") -> bool:
        return self._cmp(other) >= 0

    def __hash__(self) -> int:
        return hash((self.m, self.e))

    # === rounding ===

    def floor_to_grid(self, p: int) -> "Dyadic":
        """Largest multiple of ``2**-p`` not exceeding self; moves by < 2**-p."""
        shift = self.e + p
        if shift >= 0:
            return self
        return Dyadic(self.m >> -shift, -p)  # >> floors toward -inf

    def ceil_to_grid(self, p: int) -> "Dyadic":
        """Smallest multiple of ``2**-p`` not below self; moves by < 2**-p."""
        shift = self.e + p
        if shift >= 0:
            return self
        return Dyadic(-((-self.m) >> -shift), -p)

    def __repr__(self) -> str:
        return f"Dyadic({self.m}, {self.e})"

    def __str__(self) -> str:
        return str(self.to_fraction())


ZERO = Dyadic(0)
ONE = Dyadic(1)

def dmin(a: Dyadic, b: Dyadic) -> Dyadic:
    return a if a <= b else b


def dmax(a: Dyadic, b: Dyadic) -> Dyadic:
    return a if a >= b else b


def fraction_floor_to_grid(value: Fraction, p: int) -> Dyadic:
    """Largest multiple of ``2**-p`` not exceeding the rational ``value``."""
    if p >= 0:
        num = value.numerator << p
    else:
        num = value.numerator >> -p  # only reachable with p >= 0 in practice
    return Dyadic(num // value.denominator, -p)


def fraction_ceil_to_grid(value: Fraction, p: int) -> Dyadic:
    """Smallest multiple of ``2**-p`` not below the rational ``value``."""
    return -fraction_floor_to_grid(-value, p)
