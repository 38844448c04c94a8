import json
import math
import random
from fractions import Fraction

import pytest

from fpinterval.fpcore import (
    BINARY64,
    E2M1,
    E3M2,
    FpFormat,
    FpValue,
    add_down,
    successor,
)
from fpinterval.interval import Interval, hull_of_corners, make
from fpinterval.ops import OPERATORS, DivisionByZeroInterval, add, div, mul
from fpinterval.oracle import (
    CheckReport,
    Counterexample,
    Property,
    UndefinedForZeroDivisor,
    exact_corner,
    exhaustive_check,
    extrema_check,
    negative_control,
    random_check,
    random_interval,
    reference_op,
)

INF = math.inf
ALL = list(Property)[:6]


def iv(lo, hi, fmt=BINARY64):
    return make(FpValue(fmt, lo), FpValue(fmt, hi))


def by_prop(reports):
    return {r.property: r for r in reports}


# --- reference evaluation -------------------------------------------------


def test_exact_corner_ieee_rules():
    f = BINARY64
    v = lambda x: FpValue(f, x)  # noqa: E731
    assert exact_corner("add", v(0.1), v(0.2)) == Fraction(0.1) + Fraction(0.2)
    assert exact_corner("sub", v(INF), v(INF)) is None
    assert exact_corner("sub", v(0.0), v(INF)) == -INF
    assert exact_corner("mul", v(0.0), v(-INF)) is None
    assert exact_corner("mul", v(-2.0), v(-INF)) == INF
    assert exact_corner("div", v(INF), v(-INF)) is None
    assert exact_corner("div", v(-INF), v(-0.0)) == INF
    assert exact_corner("div", v(3.0), v(-0.0)) == -INF
    assert exact_corner("div", v(0.0), v(0.0)) is None
    assert exact_corner("div", v(1.0), v(INF)) == 0
    assert exact_corner("add", FpValue.nan(f), v(1.0)) is None


def test_reference_op_frozen():
    r = reference_op("div", iv(1, 1), iv(3, 3))
    assert (r.lo.value, r.hi.value) == (0.3333333333333333, 0.33333333333333337)
    r = reference_op("mul", iv(0, 0), iv(-INF, INF))
    assert (r.lo.value, r.hi.value) == (0.0, 0.0)
    r = reference_op("sub", iv(0, INF), iv(0, INF))
    assert (r.lo.value, r.hi.value) == (-INF, INF)
    mx = BINARY64.max_finite
    r = reference_op("add", iv(mx, mx), iv(mx, mx))
    assert (r.lo.value, r.hi.value) == (mx, INF)
    with pytest.raises(UndefinedForZeroDivisor):
        reference_op("div", iv(1, 2), iv(-0.0, 3))


# --- the harness passes correct code and catches broken code --------------


@pytest.mark.parametrize("op", ["add", "sub", "mul", "div"])
def test_e2m1_exhaustive_clean(op):
    reps = exhaustive_check(E2M1, op, ALL)
    for r in reps:
        assert r.violations == 0, r.to_line()
        assert r.cases_checked > 0
        assert r.first_counterexamples == []
    props = [r.property for r in reps]
    assert ("Q_Z" in props) == (op == "div")


def _hull_impl(op):
    def f(x, y):
        if op == "div" and y.inf.value <= 0 <= y.sup.value:
            raise DivisionByZeroInterval(y)
        lo, hi = hull_of_corners(op, x, y)
        return Interval(lo, hi)
    return f


def _reference_impl(op):
    def f(x, y):
        if op == "div" and y.inf.value <= 0 <= y.sup.value:
            raise DivisionByZeroInterval(y)
        lo, hi = reference_op(op, x, y)
        return Interval(lo, hi)
    return f


@pytest.mark.parametrize("op", ["add", "sub", "mul", "div"])
def test_vectorized_expectations_match_scalar_functions(op):
    # the corner-hull and reference functions, run as operators, must pass
    # the table-driven Q_T and branch checks
    for impl in (_hull_impl(op), _reference_impl(op)):
        for r in exhaustive_check(E2M1, op, [Property.Q_T, Property.BRANCH], impl=impl):
            assert r.violations == 0, r.to_line()


def test_loose_upper_bound_is_caught():
    def loose_add(x, y):
        r = add(x, y)
        hi = r.sup if r.sup.value == INF else successor(r.sup)
        return Interval(r.inf, hi)

    rep = by_prop(exhaustive_check(E2M1, "add", ALL, impl=loose_add))
    assert rep["Q_T"].violations > 0
    assert rep["branch_equivalence"].violations > 0
    assert rep["Q_S"].violations == 0  # wider is still sound
    assert rep["Q_V"].violations == 0
    assert len(rep["Q_T"].first_counterexamples) == 10


def test_unsound_bound_is_caught():
    def wrong_add(x, y):
        # rounds the upper bound the wrong way
        return Interval(add_down(x.inf, y.inf), add_down(x.sup, y.sup))

    rep = by_prop(exhaustive_check(E2M1, "add", ALL, impl=wrong_add))
    assert rep["Q_S"].violations > 0
    assert rep["Q_T"].violations > 0


def test_wrong_corner_choice_is_caught_by_soundness_samples():
    def bad_mul(x, y):
        # ignores the sign analysis: inf*inf, sup*sup
        lo = FpValue._raw(x.fmt, min(x.inf.value * y.inf.value, x.sup.value * y.sup.value))
        hi = FpValue._raw(x.fmt, max(x.inf.value * y.inf.value, x.sup.value * y.sup.value))
        if lo.value != lo.value or hi.value != hi.value:
            return mul(x, y)
        return Interval(lo, hi)

    rep = by_prop(exhaustive_check(E2M1, "mul", [Property.Q_S, Property.Q_T], impl=bad_mul))
    assert rep["Q_S"].violations > 0


def test_missing_zero_division_and_invalid_results_are_caught():
    def lax_div(x, y):
        if y.inf.value == 0 and y.sup.value > 0:
            return make(FpValue.inf(x.fmt, -1), FpValue.inf(x.fmt))
        return div(x, y)

    rep = by_prop(exhaustive_check(E2M1, "div", ALL, impl=lax_div))
    assert rep["Q_Z"].violations > 0

    def broken_sub(x, y):
        return make(FpValue.inf(x.fmt), FpValue.inf(x.fmt))  # raises InvalidInterval

    rep = by_prop(exhaustive_check(E2M1, "sub", [Property.Q_V], impl=broken_sub))
    assert rep["Q_V"].violations == rep["Q_V"].cases_checked
    assert "InvalidInterval" in rep["Q_V"].first_counterexamples[0].actual


def test_negative_control_on_e2m1_finds_zero_times_half_bounded():
    rep = negative_control(E2M1)
    assert rep.violations >= 1
    assert rep.operator == "mul_original"


def test_extrema_lemmas_e2m1():
    rep = extrema_check(E2M1)
    assert rep.cases_checked == 15 ** 4
    assert rep.violations == 0


def test_extrema_check_catches_nan_sensitive_min(monkeypatch):
    from fpinterval import oracle

    def naive_min2(x, y):  # IEEE-style min that lets NaN through
        return x if x.value < y.value else y

    monkeypatch.setattr(oracle, "min2", naive_min2)
    assert oracle.extrema_check(E2M1).violations > 0


# --- randomized checks -----------------------------------------------------


def test_random_check_is_deterministic():
    a = random_check("mul", ALL, count=300, seed=11)
    b = random_check("mul", ALL, count=300, seed=11)
    assert [(r.property, r.cases_checked, r.violations) for r in a] == \
           [(r.property, r.cases_checked, r.violations) for r in b]
    assert all(r.violations == 0 for r in a)


@pytest.mark.parametrize("op", ["add", "sub", "div"])
def test_random_check_all_properties_clean(op):
    for r in random_check(op, ALL, count=400, seed=5):
        assert r.violations == 0, r.to_line()


def test_random_check_on_a_minifloat():
    for r in random_check("mul", ALL, count=500, seed=2, fmt=E3M2):
        assert r.violations == 0


def test_random_check_rejects_bad_arguments():
    with pytest.raises(ValueError):
        random_check("add", count=0)
    with pytest.raises(ValueError):
        random_check("add", count=1, seed=-1)


def test_random_check_catches_a_bug():
    def off(x, y):
        r = mul(x, y)
        if r.inf.value > 1:
            return Interval(FpValue._raw(x.fmt, r.inf.value * 1.5), r.sup) \
                if r.inf.value * 1.5 <= r.sup.value else r
        return r

    rep = by_prop(random_check("mul", [Property.BRANCH, Property.Q_S], count=2000,
                               seed=1, impl=off))
    assert rep["branch_equivalence"].violations > 0


def test_random_intervals_cover_every_stratum():
    rng = random.Random(0)
    counts = dict(zero=0, sub=0, normal=0, max=0, inf=0, degenerate=0)
    n = 20000
    for _ in range(n):
        x = random_interval(rng)
        if x.inf.value == x.sup.value:
            counts["degenerate"] += 1
        for b in x:
            a = abs(b.value)
            if a == 0:
                counts["zero"] += 1
            elif a < BINARY64.min_normal:
                counts["sub"] += 1
            elif a == INF:
                counts["inf"] += 1
            elif a == BINARY64.max_finite:
                counts["max"] += 1
            else:
                counts["normal"] += 1
    for k, c in counts.items():
        assert c / n >= 0.01, k


def test_random_intervals_reach_both_ends_of_the_exponent_range():
    rng = random.Random(1)
    exps = {math.frexp(b.value)[1] for _ in range(20000) for b in random_interval(rng)
            if b.value and math.isfinite(b.value)}
    assert min(exps) < -1000 and max(exps) > 1000


# --- reports ----------------------------------------------------------------


def _rep(cases, viol, idx=()):
    r = CheckReport("E3M2", "add", "Q_T", cases, viol,
                    [Counterexample(i, "x", "y", "e", "a") for i in idx], 1.0)
    return r


def test_report_line_format():
    line = _rep(10, 0).to_line()
    assert line == "add Q_T cases=10 violations=0 elapsed=1.00s"
    back = CheckReport.from_line(line, "E3M2")
    assert (back.cases_checked, back.violations, back.operator) == (10, 0, "add")
    d = json.loads(_rep(3, 1, [4]).to_json())
    assert d["violations"] == 1 and d["ok"] is False
    assert d["first_counterexamples"][0]["index"] == 4


def test_report_merge_is_associative_and_orders_counterexamples():
    a, b, c = _rep(5, 2, [7, 9]), _rep(5, 1, [2]), _rep(5, 3, [1, 8, 12])
    left = a.merge(b).merge(c)
    right = a.merge(b.merge(c))
    swapped = c.merge(a).merge(b)
    for m in (left, right, swapped):
        assert (m.cases_checked, m.violations) == (15, 6)
        assert [x.index for x in m.first_counterexamples] == [1, 2, 7, 8, 9, 12]
    assert len(_rep(1, 20, range(10)).merge(_rep(1, 5, range(10, 15))).first_counterexamples) == 10
    with pytest.raises(ValueError):
        a.merge(CheckReport("E3M2", "mul", "Q_T"))


def test_property_names():
    assert Property.parse("QT") is Property.Q_T
    assert Property.parse("q_s") is Property.Q_S
    assert Property.parse("BR") is Property.BRANCH
    assert Property.parse("rounding_oracle") is Property.ROUNDING
    with pytest.raises(ValueError):
        Property.parse("QX")


def test_other_formats_are_checked_too():
    f = FpFormat(2, 2)
    for op in OPERATORS:
        for r in exhaustive_check(f, op, ALL):
            assert r.violations == 0, (op, r.to_line())
