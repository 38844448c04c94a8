"""Interval arithmetic over floating-point bounds with directed rounding.

``fpcore`` holds the formats and rounding kernels, ``interval`` the interval
type, ``ops`` the four operators and ``oracle`` the exact reference plus the
exhaustive and randomized checkers.
"""

from .fpcore import (
    BINARY64,
    E2M1,
    E3M2,
    FpFormat,
    FpValue,
    dir_op,
    exact_round,
    format_value,
    parse_format,
    parse_value,
)
from .interval import (
    Interval,
    InvalidInterval,
    entire,
    make,
    max4,
    min4,
    my_max4,
    my_min4,
    real_in,
    valid,
    zeroI,
)
from .ops import DivisionByZeroInterval, add, div, mul, sub

__all__ = [
    "BINARY64", "E2M1", "E3M2", "FpFormat", "FpValue", "dir_op", "exact_round",
    "format_value", "parse_format", "parse_value",
    "Interval", "InvalidInterval", "entire", "make", "max4", "min4", "my_max4",
    "my_min4", "real_in", "valid", "zeroI",
    "DivisionByZeroInterval", "add", "div", "mul", "sub",
    "interval",
]


def interval(lo, hi=None, fmt: FpFormat = BINARY64) -> Interval:
    """Interval from two numbers or number strings, rounded outward into ``fmt``.

    >>> interval("0.1")
    Interval(binary64, [0x1.999999999999ap-4,0x1.999999999999bp-4])
    """
    from .cli import Literal, parse

    hi = lo if hi is None else hi
    node = parse(f"[{lo},{hi}]", fmt)
    assert isinstance(node, Literal)
    return node.value
