"""Exact reals and the reference definition of directed rounding.

An ``ExactReal`` is either a :class:`fractions.Fraction` or one of the float
infinities ``math.inf`` / ``-math.inf``.  Nothing here rounds except
:func:`exact_round`, which picks the neighbour of a rational straight from
the format's value set.  This module shares no arithmetic with
:mod:`fpinterval.fpcore.arith`; the verification harness depends on that.
"""

from __future__ import annotations

import bisect
import math
import re
from fractions import Fraction
from typing import Union

from .formats import BINARY64, FpFormat, FpValue, decode, enumerate_values

ExactReal = Union[Fraction, float]

POS_INF: float = math.inf
NEG_INF: float = -math.inf

__all__ = [
    "ExactReal",
    "POS_INF",
    "NEG_INF",
    "to_exact",
    "exact_round",
    "exact_bracket",
    "bracket_ratio",
    "parse_exact",
]


def to_exact(x: FpValue) -> ExactReal:
    """Exact value of a non-NaN FpValue; both zeros map to 0."""
    v = x.value
    if v != v:
        raise ValueError("NaN has no real value")
    if math.isinf(v):
        return v
    return Fraction(v)


def exact_round(r, direction, fmt: FpFormat) -> FpValue:
    """Round an exact real to ``fmt`` by the set definition.

    ``down`` gives max{x in F ∪ {-inf} : x <= r}, ``up`` gives
    min{x in F ∪ {+inf} : x >= r}.  A zero result is always +0.
    """
    lo, hi = exact_bracket(r, fmt)
    d = getattr(direction, "value", direction)
    if d == "down":
        return lo
    if d == "up":
        return hi
    raise ValueError(f"unknown rounding direction {direction!r}")


def exact_bracket(r, fmt: FpFormat):
    """Return ``(down, up)`` roundings of ``r``; equal when ``r`` is representable."""
    if isinstance(r, float):
        if r == math.inf:
            v = FpValue.inf(fmt)
            return v, v
        if r == -math.inf:
            v = FpValue.inf(fmt, -1)
            return v, v
        if r != r:
            raise ValueError("NaN is not an exact real")
        r = Fraction(r)
    elif not isinstance(r, Fraction):
        r = Fraction(r)
    return bracket_ratio(r.numerator, r.denominator, fmt)


def bracket_ratio(n: int, d: int, fmt: FpFormat):
    """:func:`exact_bracket` of the finite rational ``n/d``, ``d > 0``, not
    necessarily in lowest terms."""
    if fmt.enumerable:
        lo, hi = _bracket_table(Fraction(n, d), fmt)
    elif fmt == BINARY64:
        lo, hi = _bracket_binary64(n, d)
    else:
        lo, hi = _bracket_search(Fraction(n, d), fmt)
    return FpValue._raw(fmt, lo), FpValue._raw(fmt, hi)


# --------------------------------------------------------------------------
# three realizations of the same set definition


_TABLES: dict = {}


def _table(fmt: FpFormat):
    t = _TABLES.get(fmt)
    if t is None:
        finite = [x.value for x in enumerate_values(fmt) if math.isfinite(x.value)]
        # one zero only; the set definition cannot tell them apart
        floats = sorted({0.0 if v == 0.0 else v for v in finite})
        t = ([Fraction(v) for v in floats], floats)
        _TABLES[fmt] = t
    return t


def _bracket_table(r: Fraction, fmt: FpFormat):
    keys, floats = _table(fmt)
    i = bisect.bisect_right(keys, r)  # keys[:i] <= r
    lo = floats[i - 1] if i > 0 else -math.inf
    j = bisect.bisect_left(keys, r)  # keys[j:] >= r
    hi = floats[j] if j < len(floats) else math.inf
    return lo, hi


_MAX64_INT = int(BINARY64.max_finite)


def _cmp(c: float, n: int, d: int) -> int:
    """Sign of c - n/d for finite c and d > 0, computed exactly."""
    cn, cd = c.as_integer_ratio()
    lhs, rhs = cn * d, n * cd
    return (lhs > rhs) - (lhs < rhs)


def _bracket_binary64(n: int, d: int):
    if n > _MAX64_INT * d:
        return BINARY64.max_finite, math.inf
    if -n > _MAX64_INT * d:
        return -math.inf, -BINARY64.max_finite
    # candidate from the quotient; the loops below make the set definition hold
    # whatever its accuracy: lo <= r, and the successor of lo exceeds r
    lo = n / d
    s = _cmp(lo, n, d)
    while s > 0:
        lo = math.nextafter(lo, -math.inf)
        s = _cmp(lo, n, d)
    if s == 0:
        return lo + 0.0, lo + 0.0  # -0.0 + 0.0 == +0.0
    hi = math.nextafter(lo, math.inf)
    while _cmp(hi, n, d) <= 0:
        lo, hi = hi, math.nextafter(hi, math.inf)
    if _cmp(lo, n, d) == 0:
        hi = lo
    return lo + 0.0, hi + 0.0


def _bracket_search(r: Fraction, fmt: FpFormat):
    """Bisection over the ordered non-negative encodings of a large format."""
    if r < 0:
        lo, hi = _bracket_search(-r, fmt)
        return -hi + 0.0, -lo + 0.0
    top = ((1 << fmt.exponent_bits) - 1) << fmt.significand_bits  # +inf pattern
    if r > Fraction(fmt.max_finite):
        return fmt.max_finite, math.inf
    a, b = 0, top - 1  # decode(a) <= r always holds (r >= 0)
    while a < b:
        mid = (a + b + 1) // 2
        if Fraction(decode(fmt, mid).value) <= r:
            a = mid
        else:
            b = mid - 1
    lo = decode(fmt, a).value
    if Fraction(lo) == r:
        return lo, lo
    return lo, decode(fmt, a + 1).value


# --------------------------------------------------------------------------
# literal text -> exact real


_HEX = re.compile(
    r"([+-]?)0x([0-9a-f]*)(?:\.([0-9a-f]*))?p([+-]?\d+)", re.IGNORECASE
)
_DEC = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)(e[+-]?\d+)?", re.IGNORECASE)


def parse_exact(text: str) -> ExactReal:
    """Exact value of a decimal or hexfloat literal, or an infinity token."""
    t = text.strip()
    low = t.lower()
    if low in ("inf", "+inf", "infinity", "+infinity"):
        return math.inf
    if low in ("-inf", "-infinity"):
        return -math.inf
    m = _HEX.fullmatch(t)
    if m:
        sign, whole, frac, exp = m.groups()
        frac = frac or ""
        if not whole and not frac:
            raise ValueError(f"malformed hexfloat {text!r}")
        mant = int((whole or "0") + frac, 16)
        q = Fraction(mant) * Fraction(2) ** (int(exp) - 4 * len(frac))
        return -q if sign == "-" else q
    if _DEC.fullmatch(t):
        return Fraction(t)
    raise ValueError(f"not a number literal: {text!r}")
