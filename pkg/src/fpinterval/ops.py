"""The four interval operators.

Multiplication and division are written as nested sign tests on the bounds
rather than as a hull over four corners; the verification harness checks
that both forms agree on every input.  All tests against zero use IEEE
comparisons, so a ``-0`` bound takes the same branch as ``+0``.
"""

from __future__ import annotations

from .fpcore import (
    FormatMismatch,
    add_down,
    add_up,
    div_down,
    div_up,
    mul_down,
    mul_up,
    sub_down,
    sub_up,
)
from .interval import Interval, _make_trusted, entire, max2, min2, zeroI

__all__ = [
    "add",
    "sub",
    "mul",
    "div",
    "DivisionByZeroInterval",
    "mul_nan_case_inf",
    "mul_nan_case_sup",
    "mul_original",
    "OPERATORS",
]


class DivisionByZeroInterval(ZeroDivisionError):
    """The divisor interval contains 0, so no quotient interval is produced."""

    def __init__(self, divisor: Interval):
        self.divisor = divisor
        super().__init__(f"divisor {divisor} contains zero")


def _same_format(x: Interval, y: Interval):
    if x.inf.fmt is not y.inf.fmt and x.inf.fmt != y.inf.fmt:
        raise FormatMismatch(f"{x.fmt.name} vs {y.fmt.name}")


def add(x: Interval, y: Interval) -> Interval:
    _same_format(x, y)
    return _make_trusted(add_down(x.inf, y.inf), add_up(x.sup, y.sup))


def sub(x: Interval, y: Interval) -> Interval:
    _same_format(x, y)
    return _make_trusted(sub_down(x.inf, y.sup), sub_up(x.sup, y.inf))


def mul(x: Interval, y: Interval) -> Interval:
    """Product in 13 branches: three sign classes per operand plus [0,0]."""
    _same_format(x, y)
    xi, xs, yi, ys = x.inf, x.sup, y.inf, y.sup
    if xi.value >= 0.0:
        if xs.value == 0.0:
            return zeroI(x.fmt)
        if yi.value >= 0.0:
            if ys.value == 0.0:
                return zeroI(x.fmt)
            return _make_trusted(mul_down(xi, yi), mul_up(xs, ys))
        if ys.value <= 0.0:
            return _make_trusted(mul_down(xs, yi), mul_up(xi, ys))
        return _make_trusted(mul_down(xs, yi), mul_up(xs, ys))
    if xs.value <= 0.0:
        if yi.value >= 0.0:
            if ys.value == 0.0:
                return zeroI(x.fmt)
            return _make_trusted(mul_down(xi, ys), mul_up(xs, yi))
        if ys.value <= 0.0:
            return _make_trusted(mul_down(xs, ys), mul_up(xi, yi))
        return _make_trusted(mul_down(xi, ys), mul_up(xi, yi))
    # xi < 0 < xs
    if yi.value >= 0.0:
        if ys.value == 0.0:
            return zeroI(x.fmt)
        return _make_trusted(mul_down(xi, ys), mul_up(xs, ys))
    if ys.value <= 0.0:
        return _make_trusted(mul_down(xs, yi), mul_up(xi, yi))
    # both straddle zero: two candidates per bound
    return _make_trusted(
        min2(mul_down(xi, ys), mul_down(xs, yi)),
        max2(mul_up(xi, yi), mul_up(xs, ys)),
    )


def div(x: Interval, y: Interval) -> Interval:
    """Quotient, or :class:`DivisionByZeroInterval` when 0 is in ``y``."""
    _same_format(x, y)
    xi, xs, yi, ys = x.inf, x.sup, y.inf, y.sup
    if yi.value > 0.0:
        if xs.value < 0.0:
            return _make_trusted(div_down(xi, yi), div_up(xs, ys))
        if xi.value > 0.0:
            return _make_trusted(div_down(xi, ys), div_up(xs, yi))
        return _make_trusted(div_down(xi, yi), div_up(xs, yi))
    if ys.value < 0.0:
        if xs.value < 0.0:
            return _make_trusted(div_down(xs, yi), div_up(xi, ys))
        if xi.value > 0.0:
            return _make_trusted(div_down(xs, ys), div_up(xi, yi))
        return _make_trusted(div_down(xs, ys), div_up(xi, ys))
    raise DivisionByZeroInterval(y)


def mul_nan_case_inf(x: Interval, y: Interval) -> bool:
    """All four downward-rounded bound products are NaN."""
    return all(
        mul_down(a, b).value != mul_down(a, b).value
        for a in (x.inf, x.sup)
        for b in (y.inf, y.sup)
    )


def mul_nan_case_sup(x: Interval, y: Interval) -> bool:
    return all(
        mul_up(a, b).value != mul_up(a, b).value
        for a in (x.inf, x.sup)
        for b in (y.inf, y.sup)
    )


def mul_original(x: Interval, y: Interval) -> Interval:
    """Multiplication as shipped in the kv library before simplification.

    Where one factor is [0,0], it widens the product to the entire line if
    the other factor has an infinite bound.  Kept only as a negative
    control: it is sound but not tight.
    """
    _same_format(x, y)
    xi, xs, yi, ys = x.inf, x.sup, y.inf, y.sup

    def zero_times(other: Interval) -> Interval:
        if other.inf.value == float("-inf") or other.sup.value == float("inf"):
            return entire(x.fmt)
        return zeroI(x.fmt)

    if xi.value >= 0.0:
        if xs.value == 0.0:
            return zero_times(y)
        if yi.value >= 0.0:
            if ys.value == 0.0:
                return zero_times(x)
            return _make_trusted(mul_down(xi, yi), mul_up(xs, ys))
        if ys.value <= 0.0:
            return _make_trusted(mul_down(xs, yi), mul_up(xi, ys))
        return _make_trusted(mul_down(xs, yi), mul_up(xs, ys))
    if xs.value <= 0.0:
        if yi.value >= 0.0:
            if ys.value == 0.0:
                return zero_times(x)
            return _make_trusted(mul_down(xi, ys), mul_up(xs, yi))
        if ys.value <= 0.0:
            return _make_trusted(mul_down(xs, ys), mul_up(xi, yi))
        return _make_trusted(mul_down(xi, ys), mul_up(xi, yi))
    if yi.value >= 0.0:
        if ys.value == 0.0:
            return zero_times(x)
        return _make_trusted(mul_down(xi, ys), mul_up(xs, ys))
    if ys.value <= 0.0:
        return _make_trusted(mul_down(xs, yi), mul_up(xi, yi))
    return _make_trusted(
        min2(mul_down(xi, ys), mul_down(xs, yi)),
        max2(mul_up(xi, yi), mul_up(xs, ys)),
    )


OPERATORS = {"add": add, "sub": sub, "mul": mul, "div": div}
