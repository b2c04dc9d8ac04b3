"""Sound interval arithmetic over exact dyadic endpoints.

Every operation here obeys two contracts that the rest of the solver
leans on:

* containment -- the result contains ``f(x)`` (pointwise ``f(x, y)``)
  for every ``x`` in the input interval(s); rounding only ever moves
  endpoints outward;
* inclusion isotonicity -- enlarging an input never shrinks the output.

``+``, ``-``, ``*``, ``abs``, ``min``, ``max`` and integer powers are
exact (dyadics are closed under them).  Division, square root and the
transcendental functions take a precision ``p`` and round outward onto
the ``2**-p`` grid; their enclosure width is the width of the exact
image plus at most a few units of ``2**-p``.

Division by an interval containing zero and square roots of intervals
reaching below zero raise :class:`DomainViolationError`: partial
functions are hard errors here, not silently widened results.

Transcendental enclosures are computed from scratch: argument reduction
plus a Taylor partial sum whose remainder is bounded by an explicit
alternating-series / geometric tail estimate, evaluated in interval
arithmetic so the reduction error is carried, with a cached validated
enclosure of pi (Machin's formula, exact rational partial sums).
``sin`` / ``cos`` detect quantifier-scale critical points through the pi
enclosure and widen to +-1 exactly when one may lie inside.
"""

from __future__ import annotations

import functools

from fractions import Fraction
from math import isqrt

from .dyadic import (
    ONE,
    ZERO,
    Dyadic,
    dmax,
    dmin,
    fraction_ceil_to_grid,
    fraction_floor_to_grid,
)
from .errors import DomainViolationError

_D_NEG_ONE = Dyadic(-1)
_D_TWO = Dyadic(2)


class Interval:
    """Closed interval ``[lo, hi]`` with dyadic endpoints, ``lo <= hi``."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Dyadic, hi: Dyadic) -> None:
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, value: Dyadic) -> "Interval":
        return cls(value, value)

    @classmethod
    def from_fraction(cls, value: Fraction, p: int) -> "Interval":
        """Tightest grid-``p`` interval containing the rational ``value``."""
        return cls(fraction_floor_to_grid(value, p), fraction_ceil_to_grid(value, p))

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def midpoint(self) -> Dyadic:
        return (self.lo + self.hi).scale2(-1)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: Dyadic) -> bool:
        return self.lo <= value <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def hull(a: Interval, b: Interval) -> Interval:
    return Interval(dmin(a.lo, b.lo), dmax(a.hi, b.hi))


def intersect(a: Interval, b: Interval) -> Interval:
    """Intersection; the inputs must overlap."""
    return Interval(dmax(a.lo, b.lo), dmin(a.hi, b.hi))


def round_out(x: Interval, p: int) -> Interval:
    return Interval(x.lo.floor_to_grid(p), x.hi.ceil_to_grid(p))


# === exact operations ===


def ival_neg(x: Interval) -> Interval:
    return Interval(-x.hi, -x.lo)


def ival_add(x: Interval, y: Interval) -> Interval:
    return Interval(x.lo + y.lo, x.hi + y.hi)


def ival_sub(x: Interval, y: Interval) -> Interval:
    return Interval(x.lo - y.hi, x.hi - y.lo)


def ival_mul(x: Interval, y: Interval) -> Interval:
    p1 = x.lo * y.lo
    p2 = x.lo * y.hi
    p3 = x.hi * y.lo
    p4 = x.hi * y.hi
    return Interval(dmin(dmin(p1, p2), dmin(p3, p4)), dmax(dmax(p1, p2), dmax(p3, p4)))


def ival_abs(x: Interval) -> Interval:
    if x.lo.sign >= 0:
        return x
    if x.hi.sign <= 0:
        return Interval(-x.hi, -x.lo)
    return Interval(ZERO, dmax(-x.lo, x.hi))


def ival_min(x: Interval, y: Interval) -> Interval:
    return Interval(dmin(x.lo, y.lo), dmin(x.hi, y.hi))


def ival_max(x: Interval, y: Interval) -> Interval:
    return Interval(dmax(x.lo, y.lo), dmax(x.hi, y.hi))


def ival_pow(x: Interval, n: int) -> Interval:
    """x**n for integer n >= 0, exact."""
    if n < 0:
        raise ValueError("ival_pow requires a nonnegative exponent")
    if n == 0:
        return Interval(ONE, ONE)
    lo_n = Dyadic(x.lo.m**n, x.lo.e * n)
    hi_n = Dyadic(x.hi.m**n, x.hi.e * n)
    if n % 2 == 1:
        return Interval(lo_n, hi_n)
    if x.lo.sign >= 0:
        return Interval(lo_n, hi_n)
    if x.hi.sign <= 0:
        return Interval(hi_n, lo_n)
    return Interval(ZERO, dmax(lo_n, hi_n))


# === rounded operations ===


def ival_div(x: Interval, y: Interval, p: int) -> Interval:
    """x / y rounded outward onto the 2**-p grid; y must exclude zero."""
    if y.lo.sign <= 0 <= y.hi.sign:
        raise DomainViolationError("division by an interval containing zero")
    xl, xh = x.lo.to_fraction(), x.hi.to_fraction()
    yl, yh = y.lo.to_fraction(), y.hi.to_fraction()
    quotients = (xl / yl, xl / yh, xh / yl, xh / yh)
    return Interval(
        fraction_floor_to_grid(min(quotients), p),
        fraction_ceil_to_grid(max(quotients), p),
    )


def _sqrt_down(d: Dyadic, p: int) -> Dyadic:
    """Grid-p dyadic <= sqrt(d), less than one grid step below it."""
    # n = floor(d * 4**p); isqrt(n)/2**p <= sqrt(d) always.
    shift = d.e + 2 * p
    n = d.m << shift if shift >= 0 else d.m >> -shift
    return Dyadic(isqrt(n), -p)


def _sqrt_up(d: Dyadic, p: int) -> Dyadic:
    shift = d.e + 2 * p
    if shift >= 0:
        n = d.m << shift
        exact = True
    else:
        n = d.m >> -shift
        exact = (n << -shift) == d.m
    r = isqrt(n)
    if exact and r * r == n:
        return Dyadic(r, -p)
    return Dyadic(r + 1, -p)


def ival_sqrt(x: Interval, p: int) -> Interval:
    """sqrt(x) rounded outward; x.lo must be >= 0."""
    if x.lo.sign < 0:
        raise DomainViolationError("square root of an interval reaching below zero")
    return Interval(_sqrt_down(x.lo, p), _sqrt_up(x.hi, p))


def _div_int(x: Interval, n: int, p: int) -> Interval:
    """x / n for a positive integer n, rounded outward at grid p."""
    return Interval(
        fraction_floor_to_grid(x.lo.to_fraction() / n, p),
        fraction_ceil_to_grid(x.hi.to_fraction() / n, p),
    )


# === pi ===

_PI_CACHE: dict[int, Interval] = {}


def _atan_inv_tail(base: int, wp: int) -> tuple[Fraction, Fraction]:
    """Exact partial sum of atan(1/base) and an upper bound on |tail|."""
    x = Fraction(1, base)
    x2 = x * x
    term = x
    total = Fraction(0)
    j = 0
    bound = Fraction(1, 1 << wp)
    while True:
        contrib = term / (2 * j + 1)
        if contrib < bound:
            # alternating series with decreasing terms: |tail| <= next term
            return total, contrib
        total += contrib if j % 2 == 0 else -contrib
        term *= x2
        j += 1


def pi_enclosure(p: int) -> Interval:
    """Validated enclosure of pi at grid p (Machin: 16*atan(1/5) - 4*atan(1/239))."""
    cached = _PI_CACHE.get(p)
    if cached is not None:
        return cached
    wp = p + 8
    s5, t5 = _atan_inv_tail(5, wp)
    s239, t239 = _atan_inv_tail(239, wp)
    center = 16 * s5 - 4 * s239
    slack = 16 * t5 + 4 * t239
    enc = Interval(
        fraction_floor_to_grid(center - slack, p),
        fraction_ceil_to_grid(center + slack, p),
    )
    _PI_CACHE[p] = enc
    return enc


# === exp ===


@functools.lru_cache(maxsize=1 << 16)
def _exp_point(d: Dyadic, p: int) -> Interval:
    """Enclosure of exp(d) for a dyadic point, width <= 2**-(p-1)."""
    if d.m == 0:
        return Interval(ONE, ONE)
    mag_bits = d.e + d.m.bit_length()  # |d| < 2**mag_bits
    s = max(0, mag_bits + 2)  # |d| / 2**s <= 1/4
    # extra bits for the value's magnitude: exp(|d|) < 2**(1.5 * 2**mag_bits)
    if d.sign > 0:
        value_bits = (3 << max(0, mag_bits)) // 2 + 2
    else:
        value_bits = 2
    wp = p + s + value_bits + 8
    for _ in range(4):
        r = Dyadic(d.m, d.e - s)  # exact
        r_ival = Interval.point(r)
        acc = Interval(ONE, ONE)
        term = Interval(ONE, ONE)
        j = 1
        # round intermediates strictly finer than the cutoff grid, else a
        # pinned-at-one-ulp term never passes the strict comparison
        cutoff = Dyadic(1, -wp)
        wg = wp + 8
        while True:
            term = _div_int(round_out(ival_mul(term, r_ival), wg), j, wg)
            acc = ival_add(acc, term)
            if dmax(abs(term.lo), abs(term.hi)) < cutoff:
                break
            j += 1
        # geometric tail: |r| <= 1/4, so the remaining terms sum to < 2*cutoff
        tail = Dyadic(1, -wp + 1)
        acc = Interval(acc.lo - tail, acc.hi + tail)
        for _ in range(s):
            acc = round_out(ival_mul(acc, acc), wp)
        out = round_out(acc, p)
        if out.width() <= Dyadic(1, -p + 1):
            return out
        wp *= 2
    return out


def ival_exp(x: Interval, p: int) -> Interval:
    if x.is_point():
        return _exp_point(x.lo, p)
    return Interval(_exp_point(x.lo, p).lo, _exp_point(x.hi, p).hi)


# === sin / cos ===


def _sin_taylor(r: Interval, wp: int) -> Interval:
    """Enclosure of sin over r, |r| <= 1 required."""
    r2 = ival_mul(r, r)
    acc = r
    term = r
    j = 1
    cutoff = Dyadic(1, -wp)
    wg = wp + 8  # intermediate grid finer than the cutoff
    while True:
        term = _div_int(round_out(ival_mul(term, r2), wg), (2 * j) * (2 * j + 1), wg)
        if j % 2 == 1:
            acc = ival_sub(acc, term)
        else:
            acc = ival_add(acc, term)
        if dmax(abs(term.lo), abs(term.hi)) < cutoff:
            break
        j += 1
    tail = Dyadic(1, -wp + 1)
    return Interval(acc.lo - tail, acc.hi + tail)


def _cos_taylor(r: Interval, wp: int) -> Interval:
    r2 = ival_mul(r, r)
    acc = Interval(ONE, ONE)
    term = Interval(ONE, ONE)
    j = 1
    cutoff = Dyadic(1, -wp)
    wg = wp + 8
    while True:
        term = _div_int(round_out(ival_mul(term, r2), wg), (2 * j - 1) * (2 * j), wg)
        if j % 2 == 1:
            acc = ival_sub(acc, term)
        else:
            acc = ival_add(acc, term)
        if dmax(abs(term.lo), abs(term.hi)) < cutoff:
            break
        j += 1
    tail = Dyadic(1, -wp + 1)
    return Interval(acc.lo - tail, acc.hi + tail)


_HALF_PI_APPROX = Fraction(15708, 10000)  # only used to pick the turn count


@functools.lru_cache(maxsize=1 << 16)
def _sin_point(d: Dyadic, p: int) -> Interval:
    """Enclosure of sin(d) by quarter-turn reduction modulo the pi enclosure."""
    q = round(d.to_fraction() / _HALF_PI_APPROX)
    wp = p + 10 + max(0, abs(q)).bit_length()
    pi_enc = pi_enclosure(wp)
    half_pi = Interval(pi_enc.lo.scale2(-1), pi_enc.hi.scale2(-1))
    q_ival = Interval.point(Dyadic(q))
    r = ival_sub(Interval.point(d), ival_mul(q_ival, half_pi))
    # |r| <= pi/4 + reduction slack < 1
    mode = q % 4
    if mode == 0:
        out = _sin_taylor(r, wp)
    elif mode == 1:
        out = _cos_taylor(r, wp)
    elif mode == 2:
        out = ival_neg(_sin_taylor(r, wp))
    else:
        out = ival_neg(_cos_taylor(r, wp))
    out = Interval(dmax(out.lo, _D_NEG_ONE), dmin(out.hi, ONE))
    return round_out(out, p)


def _critical_inside(x: Interval, offset_num: int, offset_den: int, p: int) -> bool:
    """May x contain pi*offset + 2*k*pi for some integer k? (offset = num/den)

    Conservative: True whenever the enclosure arithmetic cannot rule it out.
    """
    pi_enc = pi_enclosure(p + 4)
    two_pi = Interval(pi_enc.lo.scale2(1), pi_enc.hi.scale2(1))
    offset = _div_int(
        ival_mul(pi_enc, Interval.point(Dyadic(offset_num))), offset_den, p + 4
    )
    # candidate turn counts around the interval, exact rational estimate
    approx_two_pi = Fraction(628, 100)
    k_lo = int((x.lo.to_fraction() / approx_two_pi).__floor__()) - 2
    k_hi = int((x.hi.to_fraction() / approx_two_pi).__ceil__()) + 2
    for k in range(k_lo, k_hi + 1):
        candidate = ival_add(offset, ival_mul(Interval.point(Dyadic(k)), two_pi))
        if candidate.intersects(x):
            return True
    return False


def ival_sin(x: Interval, p: int) -> Interval:
    if x.width() >= Dyadic(7):
        return Interval(_D_NEG_ONE, ONE)
    at_lo = _sin_point(x.lo, p)
    at_hi = _sin_point(x.hi, p)
    if _critical_inside(x, 1, 2, p):  # pi/2 + 2k*pi: maxima
        hi = ONE
    else:
        hi = dmax(at_lo.hi, at_hi.hi)
    if _critical_inside(x, 3, 2, p):  # 3*pi/2 + 2k*pi: minima
        lo = _D_NEG_ONE
    else:
        lo = dmin(at_lo.lo, at_hi.lo)
    return Interval(lo, hi)


@functools.lru_cache(maxsize=1 << 16)
def _cos_point(d: Dyadic, p: int) -> Interval:
    q = round(d.to_fraction() / _HALF_PI_APPROX)
    wp = p + 10 + max(0, abs(q)).bit_length()
    pi_enc = pi_enclosure(wp)
    half_pi = Interval(pi_enc.lo.scale2(-1), pi_enc.hi.scale2(-1))
    r = ival_sub(Interval.point(d), ival_mul(Interval.point(Dyadic(q)), half_pi))
    mode = q % 4
    if mode == 0:
        out = _cos_taylor(r, wp)
    elif mode == 1:
        out = ival_neg(_sin_taylor(r, wp))
    elif mode == 2:
        out = ival_neg(_cos_taylor(r, wp))
    else:
        out = _sin_taylor(r, wp)
    out = Interval(dmax(out.lo, _D_NEG_ONE), dmin(out.hi, ONE))
    return round_out(out, p)


def ival_cos(x: Interval, p: int) -> Interval:
    if x.width() >= Dyadic(7):
        return Interval(_D_NEG_ONE, ONE)
    at_lo = _cos_point(x.lo, p)
    at_hi = _cos_point(x.hi, p)
    if _critical_inside(x, 0, 1, p):  # 2k*pi: maxima
        hi = ONE
    else:
        hi = dmax(at_lo.hi, at_hi.hi)
    if _critical_inside(x, 1, 1, p):  # pi + 2k*pi: minima
        lo = _D_NEG_ONE
    else:
        lo = dmin(at_lo.lo, at_hi.lo)
    return Interval(lo, hi)


# === atan ===


def _atan_small(x: Interval, wp: int) -> Interval:
    """Taylor enclosure of atan over x, |x| <= 1/4 required."""
    x2 = ival_mul(x, x)
    acc = x
    power = x
    j = 1
    cutoff = Dyadic(1, -wp)
    wg = wp + 8
    while True:
        power = round_out(ival_mul(power, x2), wg)
        term = _div_int(power, 2 * j + 1, wg)
        if j % 2 == 1:
            acc = ival_sub(acc, term)
        else:
            acc = ival_add(acc, term)
        if dmax(abs(term.lo), abs(term.hi)) < cutoff:
            break
        j += 1
    tail = Dyadic(1, -wp + 1)
    return Interval(acc.lo - tail, acc.hi + tail)


def _atan_unit(x: Interval, wp: int) -> Interval:
    """atan over x for |x| <= 1: two halving reductions, then Taylor.

    atan(x) = 2*atan(x / (1 + sqrt(1 + x^2))), applied twice, brings
    |x| <= 1 down to |x| <= 0.21 < 1/4.
    """
    reduced = x
    for _ in range(2):
        one = Interval(ONE, ONE)
        root = ival_sqrt(ival_add(one, ival_mul(reduced, reduced)), wp)
        reduced = ival_div(reduced, ival_add(one, root), wp)
    inner = _atan_small(reduced, wp)
    return Interval(inner.lo.scale2(2), inner.hi.scale2(2))


@functools.lru_cache(maxsize=1 << 16)
def _atan_point(d: Dyadic, p: int) -> Interval:
    wp = p + 12
    mag = abs(d)
    if mag <= ONE:
        return round_out(_atan_unit(Interval.point(d), wp), p)
    # atan(d) = sign(d)*pi/2 - atan(1/d)
    inv = ival_div(Interval(ONE, ONE), Interval.point(abs(d)), wp)
    inner = _atan_unit(inv, wp)
    pi_enc = pi_enclosure(wp)
    half_pi = Interval(pi_enc.lo.scale2(-1), pi_enc.hi.scale2(-1))
    out = ival_sub(half_pi, inner)
    if d.sign < 0:
        out = ival_neg(out)
    return round_out(out, p)


def ival_atan(x: Interval, p: int) -> Interval:
    if x.is_point():
        return _atan_point(x.lo, p)
    return Interval(_atan_point(x.lo, p).lo, _atan_point(x.hi, p).hi)
