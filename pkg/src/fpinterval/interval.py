"""Intervals bounded by floating-point values, and NaN-aware extrema."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .fpcore import FpFormat, FpValue, Op, dir_op, format_value

__all__ = [
    "Interval",
    "RawPair",
    "InvalidInterval",
    "make",
    "valid",
    "real_in",
    "zeroI",
    "entire",
    "min2",
    "max2",
    "min4",
    "max4",
    "my_min4",
    "my_max4",
    "hull_of_corners",
]


class InvalidInterval(ValueError):
    """A pair of bounds that does not form an interval.

    ``clause`` names the first failed condition: ``"inf"`` (lower bound not
    finite or -inf), ``"sup"`` (upper bound not finite or +inf) or
    ``"order"`` (inf <= sup fails).
    """

    def __init__(self, lo: FpValue, hi: FpValue, clause: str):
        self.lo, self.hi, self.clause = lo, hi, clause
        reason = {
            "inf": "lower bound must be finite or -inf",
            "sup": "upper bound must be finite or +inf",
            "order": "lower bound exceeds upper bound",
        }[clause]
        super().__init__(f"[{format_value(lo)},{format_value(hi)}]: {reason}")


class RawPair(NamedTuple):
    """Two bounds with no validity guarantee (may hold NaN or misplaced infinities)."""

    lo: FpValue
    hi: FpValue


def _violated_clause(lo: float, hi: float):
    if not (math.isfinite(lo) or lo == -math.inf):
        return "inf"
    if not (math.isfinite(hi) or hi == math.inf):
        return "sup"
    if not lo <= hi:
        return "order"
    return None


class Interval:
    """A valid interval [inf, sup]; invalid bounds cannot be constructed.

    Arithmetic operators delegate to :mod:`fpinterval.ops`, so ``x / y``
    raises :class:`~fpinterval.ops.DivisionByZeroInterval` when 0 is in ``y``.
    """

    __slots__ = ("inf", "sup")

    inf: FpValue
    sup: FpValue

    def __init__(self, inf: FpValue, sup: FpValue):
        if inf.fmt != sup.fmt:
            raise ValueError("bounds belong to different formats")
        clause = _violated_clause(inf.value, sup.value)
        if clause is not None:
            raise InvalidInterval(inf, sup, clause)
        _set_inf(self, inf)
        _set_sup(self, sup)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __reduce__(self):
        return (Interval, (self.inf, self.sup))

    @property
    def fmt(self) -> FpFormat:
        return self.inf.fmt

    def __iter__(self):
        yield self.inf
        yield self.sup

    def __eq__(self, other):
        # IEEE equality of both bounds, so [-0,+0] == [+0,+0]
        if isinstance(other, Interval):
            return self.inf == other.inf and self.sup == other.sup
        return NotImplemented

    def __hash__(self):
        return hash((self.inf.value, self.sup.value))

    def __repr__(self):
        return f"Interval({self.fmt.name}, {self.to_text('hex')})"

    def __str__(self):
        return self.to_text()

    def to_text(self, style: str = "decimal") -> str:
        return f"[{format_value(self.inf, style)},{format_value(self.sup, style)}]"

    def __contains__(self, a) -> bool:
        return real_in(a, self)

    def __add__(self, other):
        from . import ops

        return ops.add(self, other)

    def __sub__(self, other):
        from . import ops

        return ops.sub(self, other)

    def __mul__(self, other):
        from . import ops

        return ops.mul(self, other)

    def __truediv__(self, other):
        from . import ops

        return ops.div(self, other)

    def __neg__(self):
        from . import ops

        return ops.sub(zeroI(self.fmt), self)


_set_inf = Interval.inf.__set__  # type: ignore[attr-defined]
_set_sup = Interval.sup.__set__  # type: ignore[attr-defined]


def make(lo: FpValue, hi: FpValue) -> Interval:
    """Validate ``(lo, hi)`` and return it as an Interval, or raise InvalidInterval."""
    return Interval(lo, hi)


def _make_trusted(lo: FpValue, hi: FpValue) -> Interval:
    # same checks as Interval(), without the format comparison
    clause = _violated_clause(lo.value, hi.value)
    if clause is not None:
        raise InvalidInterval(lo, hi, clause)
    obj = object.__new__(Interval)
    _set_inf(obj, lo)
    _set_sup(obj, hi)
    return obj


def valid(x) -> bool:
    """Validity of any (lo, hi) pair: Interval, RawPair or a 2-tuple of FpValues."""
    lo, hi = x
    return _violated_clause(lo.value, hi.value) is None


def real_in(a, x) -> bool:
    """Whether the finite real ``a`` lies in ``x`` (compared exactly)."""
    if isinstance(a, float):
        if not math.isfinite(a):
            raise ValueError("real_in takes a finite real")
    a = Fraction(a)
    lo, hi = x.inf.value, x.sup.value
    below = lo == -math.inf or (math.isfinite(lo) and Fraction(lo) <= a)
    above = hi == math.inf or (math.isfinite(hi) and Fraction(hi) >= a)
    return below and above


def zeroI(fmt: FpFormat) -> Interval:
    z = FpValue.zero(fmt)
    return _make_trusted(z, z)


def entire(fmt: FpFormat) -> Interval:
    return _make_trusted(FpValue.inf(fmt, -1), FpValue.inf(fmt))


# --------------------------------------------------------------------------
# extrema that skip NaN


def min2(x: FpValue, y: FpValue) -> FpValue:
    if x.value < y.value:
        return x
    if y.value == y.value:
        return y
    return x


def max2(x: FpValue, y: FpValue) -> FpValue:
    if x.value > y.value:
        return x
    if y.value == y.value:
        return y
    return x


def min4(w: FpValue, x: FpValue, y: FpValue, z: FpValue) -> FpValue:
    """Smallest non-NaN argument; NaN only when all four are NaN."""
    return min2(w, min2(x, min2(y, z)))


def max4(w: FpValue, x: FpValue, y: FpValue, z: FpValue) -> FpValue:
    return max2(w, max2(x, max2(y, z)))


def my_min4(w: FpValue, x: FpValue, y: FpValue, z: FpValue) -> FpValue:
    """:func:`min4`, except that four NaNs give +0 instead of NaN."""
    m = min4(w, x, y, z)
    return FpValue.zero(m.fmt) if m.value != m.value else m


def my_max4(w: FpValue, x: FpValue, y: FpValue, z: FpValue) -> FpValue:
    m = max4(w, x, y, z)
    return FpValue.zero(m.fmt) if m.value != m.value else m


def hull_of_corners(op, x: Interval, y: Interval) -> RawPair:
    """Hull of the directed-rounded results at the four bound combinations.

    For ``div`` the caller must ensure that 0 is not in ``y``.
    """
    op = Op(op)
    a, b = x.inf, x.sup
    c, d = y.inf, y.sup
    lo = my_min4(
        dir_op(op, "down", a, c),
        dir_op(op, "down", a, d),
        dir_op(op, "down", b, c),
        dir_op(op, "down", b, d),
    )
    hi = my_max4(
        dir_op(op, "up", a, c),
        dir_op(op, "up", a, d),
        dir_op(op, "up", b, c),
        dir_op(op, "up", b, d),
    )
    return RawPair(lo, hi)
