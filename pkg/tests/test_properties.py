"""Hypothesis-driven checks of the operators on binary64 intervals."""

import math
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fpinterval.fpcore import BINARY64, FpValue
from fpinterval.interval import Interval, real_in, valid
from fpinterval.ops import OPERATORS, DivisionByZeroInterval
from fpinterval.oracle import reference_op

bound = st.one_of(
    st.floats(allow_nan=False),
    st.sampled_from([0.0, -0.0, 5e-324, -5e-324, BINARY64.max_finite, -BINARY64.max_finite]),
)


@st.composite
def intervals(draw):
    a, b = sorted([draw(bound), draw(bound)])
    assume(a != math.inf and b != -math.inf)
    return Interval(FpValue(BINARY64, a), FpValue(BINARY64, b))


def point_in(x: Interval, t: float) -> Fraction:
    """A rational in x chosen by t in [0, 1]."""
    lo, hi = x.inf.value, x.sup.value
    tt = Fraction(t)
    if math.isfinite(lo) and math.isfinite(hi):
        return Fraction(lo) + (Fraction(hi) - Fraction(lo)) * tt
    if math.isfinite(lo):
        return Fraction(lo) + tt * 1000
    if math.isfinite(hi):
        return Fraction(hi) - tt * 1000
    return (tt - Fraction(1, 2)) * 1000


ops = st.sampled_from(["add", "sub", "mul", "div"])
unit = st.floats(0, 1)

EXACT = {"add": lambda a, b: a + b, "sub": lambda a, b: a - b,
         "mul": lambda a, b: a * b, "div": lambda a, b: a / b}


@settings(max_examples=1500, deadline=None)
@given(ops, intervals(), intervals())
def test_matches_reference(op, x, y):
    try:
        r = OPERATORS[op](x, y)
    except DivisionByZeroInterval:
        assert op == "div" and real_in(0, y)
        return
    assert valid(r)
    ref = reference_op(op, x, y)
    assert (r.inf.value, r.sup.value) == (ref.lo.value, ref.hi.value)


@settings(max_examples=1500, deadline=None)
@given(ops, intervals(), intervals(), unit, unit)
def test_encloses_pointwise_results(op, x, y, s, t):
    u, v = point_in(x, s), point_in(y, t)
    try:
        r = OPERATORS[op](x, y)
    except DivisionByZeroInterval:
        return
    assert real_in(EXACT[op](u, v), r)


@settings(max_examples=500, deadline=None)
@given(intervals(), intervals())
def test_add_and_mul_commute(x, y):
    assert OPERATORS["add"](x, y) == OPERATORS["add"](y, x)
    assert OPERATORS["mul"](x, y) == OPERATORS["mul"](y, x)


@settings(max_examples=500, deadline=None)
@given(intervals())
def test_negation_is_exact(x):
    n = -x
    assert n.inf.value == -x.sup.value and n.sup.value == -x.inf.value
