import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpinterval.fpcore import (
    BINARY64,
    E3M2,
    FormatMismatch,
    FpValue,
    Op,
    add_down,
    add_up,
    dir_op,
    div_down,
    div_up,
    exact_round,
    mul_down,
    mul_up,
    sub_down,
    sub_up,
)


def b(v):
    return FpValue(BINARY64, v)


def e(v):
    return FpValue(E3M2, v)


def neg_zero(x):
    return x.value == 0 and math.copysign(1, x.value) < 0


def test_frozen_division_by_three():
    assert div_down(b(1.0), b(3.0)).value == 0.3333333333333333
    assert div_up(b(1.0), b(3.0)).value == 0.33333333333333337


@pytest.mark.parametrize("fmt", [BINARY64, E3M2])
def test_overflow_saturates_down_and_goes_infinite_up(fmt):
    mx = FpValue.max_finite(fmt)
    assert dir_op("add", "down", mx, mx).value == fmt.max_finite
    assert dir_op("add", "up", mx, mx).value == math.inf
    nmx = FpValue.max_finite(fmt, -1)
    assert dir_op("add", "down", nmx, nmx).value == -math.inf
    assert dir_op("add", "up", nmx, nmx).value == -fmt.max_finite
    assert dir_op("mul", "down", mx, mx).value == fmt.max_finite


@pytest.mark.parametrize("fmt", [BINARY64, E3M2])
def test_underflow_reaches_subnormals(fmt):
    t = FpValue.min_subnormal(fmt)
    two = FpValue(fmt, 2.0)
    # exact result min_subnormal / 2 lies strictly between 0 and min_subnormal
    assert dir_op("div", "down", t, two).value == 0.0
    assert dir_op("div", "up", t, two).value == fmt.min_subnormal
    assert dir_op("mul", "down", t, t).value == 0.0
    assert dir_op("mul", "up", t, t).value == fmt.min_subnormal
    assert dir_op("mul", "down", FpValue.min_subnormal(fmt, -1), t).value == -fmt.min_subnormal


def test_e3m2_frozen_products():
    assert mul_down(e(1.25), e(1.25)).value == 1.5  # 1.5625
    assert mul_up(e(1.25), e(1.25)).value == 1.75
    assert add_down(e(8.0), e(1.0)).value == 8.0
    assert add_up(e(8.0), e(1.0)).value == 10.0
    assert sub_down(e(0.25), e(0.0625)).value == 0.1875


def test_signed_zero_sums():
    pz, nz = b(0.0), b(-0.0)
    assert neg_zero(add_down(pz, nz)) and not neg_zero(add_up(pz, nz))
    assert neg_zero(add_down(nz, nz)) and neg_zero(add_up(nz, nz))
    assert not neg_zero(add_down(pz, pz))
    # exact cancellation: -0 toward -inf, +0 toward +inf
    assert neg_zero(sub_down(b(1.5), b(1.5)))
    assert not neg_zero(sub_up(b(1.5), b(1.5)))


def test_special_values():
    inf, ninf, nan = b(math.inf), b(-math.inf), b(math.nan)
    assert sub_down(b(0.0), inf).value == -math.inf
    assert math.isnan(sub_up(inf, inf).value)
    assert math.isnan(add_down(inf, ninf).value)
    assert math.isnan(mul_down(b(0.0), inf).value)
    assert math.isnan(div_up(inf, ninf).value)
    assert math.isnan(div_up(b(0.0), b(-0.0)).value)
    assert div_down(b(1.0), b(-0.0)).value == -math.inf
    assert div_up(b(-1.0), inf).value == 0.0
    assert math.isnan(add_up(nan, b(1.0)).value)


def test_format_mismatch():
    with pytest.raises(FormatMismatch):
        dir_op(Op.ADD, "down", b(1.0), e(1.0))


finite64 = st.floats(allow_nan=False, allow_infinity=False)


@settings(max_examples=2000, deadline=None)
@given(finite64, finite64, st.sampled_from(list(Op)))
def test_binary64_kernels_match_oracle(x, y, op):
    exact = {Op.ADD: lambda a, c: a + c, Op.SUB: lambda a, c: a - c,
             Op.MUL: lambda a, c: a * c, Op.DIV: lambda a, c: a / c}[op]
    if op is Op.DIV and y == 0:
        return
    r = exact(Fraction(x), Fraction(y))
    for d in ("down", "up"):
        got = dir_op(op, d, b(x), b(y)).value
        assert got == exact_round(r, d, BINARY64).value


@settings(max_examples=500, deadline=None)
@given(finite64, finite64)
def test_nearest_lies_between_directed(x, y):
    # hardware round-to-nearest must sit inside the directed bracket
    for op, f in ((Op.ADD, x + y), (Op.MUL, x * y)):
        lo = dir_op(op, "down", b(x), b(y)).value
        hi = dir_op(op, "up", b(x), b(y)).value
        if not math.isnan(f):
            assert lo <= f <= hi
