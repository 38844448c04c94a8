"""Reference evaluator and verification harness for the interval operators.

The reference path computes each bound combination exactly with
:class:`~fractions.Fraction` and rounds it with
:func:`~fpinterval.fpcore.exact.exact_round`; it never touches the
production rounding kernels.  Exhaustive checks run the production operator
on every ordered pair of valid intervals of a small format and then test
the contracts with numpy over the collected results.  Randomized checks do
the same one pair at a time for binary64.
"""

from __future__ import annotations

import enum
import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from .fpcore import (
    BINARY64,
    FpFormat,
    FpValue,
    Op,
    dir_op,
    enumerate_values,
    bracket_ratio,
    exact_bracket,
    format_value,
)
from .interval import (
    Interval,
    InvalidInterval,
    RawPair,
    hull_of_corners,
    make,
    max2,
    min2,
    real_in,
    valid,
)
from .ops import OPERATORS, DivisionByZeroInterval, mul_original

__all__ = [
    "Property",
    "INTERVAL_PROPERTIES",
    "CheckReport",
    "Counterexample",
    "UndefinedForZeroDivisor",
    "exact_corner",
    "reference_op",
    "valid_intervals",
    "exhaustive_check",
    "extrema_check",
    "random_check",
    "random_interval",
    "negative_control",
    "MAX_COUNTEREXAMPLES",
]

MAX_COUNTEREXAMPLES = 10


class Property(str, enum.Enum):
    Q_V = "Q_V"
    Q_S = "Q_S"
    Q_T = "Q_T"
    Q_Z = "Q_Z"
    BRANCH = "branch_equivalence"
    ROUNDING = "rounding_oracle"
    EXTREMA = "extrema_lemmas"

    @classmethod
    def parse(cls, text: str) -> "Property":
        key = text.strip().lower().replace("-", "_")
        for p in cls:
            if key in (p.value.lower(), p.value.lower().replace("_", "")):
                return p
        aliases = {"br": cls.BRANCH, "branch": cls.BRANCH,
                   "ro": cls.ROUNDING, "rounding": cls.ROUNDING,
                   "ex": cls.EXTREMA, "extrema": cls.EXTREMA}
        if key in aliases:
            return aliases[key]
        raise ValueError(f"unknown property {text!r}")


INTERVAL_PROPERTIES = (
    Property.Q_V,
    Property.Q_S,
    Property.Q_T,
    Property.Q_Z,
    Property.BRANCH,
    Property.ROUNDING,
)


@dataclass(frozen=True)
class Counterexample:
    index: int
    x: str
    y: str
    expected: str
    actual: str

    def __str__(self):
        return f"x={self.x} y={self.y} expected={self.expected} actual={self.actual}"


@dataclass
class CheckReport:
    """Outcome of checking one property of one operator over many cases."""

    format: str
    operator: str
    property: str
    cases_checked: int = 0
    violations: int = 0
    first_counterexamples: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def record(self, index: int, x, y, expected, actual, limit=MAX_COUNTEREXAMPLES):
        self.violations += 1
        if len(self.first_counterexamples) < limit:
            self.first_counterexamples.append(
                Counterexample(index, _text(x), _text(y), _text(expected), _text(actual))
            )

    def merge(self, other: "CheckReport", limit=MAX_COUNTEREXAMPLES) -> "CheckReport":
        if (self.format, self.operator, self.property) != (
            other.format, other.operator, other.property
        ):
            raise ValueError("can only merge reports of the same check")
        ces = sorted(self.first_counterexamples + other.first_counterexamples,
                     key=lambda c: c.index)[:limit]
        return CheckReport(
            self.format, self.operator, self.property,
            self.cases_checked + other.cases_checked,
            self.violations + other.violations,
            ces,
            self.elapsed + other.elapsed,
        )

    def to_line(self) -> str:
        return (f"{self.operator} {self.property} cases={self.cases_checked} "
                f"violations={self.violations} elapsed={self.elapsed:.2f}s")

    def to_json(self) -> str:
        d = asdict(self)
        d["ok"] = self.ok
        return json.dumps(d)

    @classmethod
    def from_line(cls, line: str, fmt: str = "") -> "CheckReport":
        op, prop, *fields = line.split()
        kv = dict(f.split("=", 1) for f in fields)
        return cls(fmt, op, prop, int(kv["cases"]), int(kv["violations"]),
                   [], float(kv["elapsed"].rstrip("s")))


def _text(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, str):
        return v
    if isinstance(v, FpValue):
        return format_value(v, "hex")
    if isinstance(v, Interval):
        return v.to_text("hex")
    if isinstance(v, RawPair):
        return f"({format_value(v.lo, 'hex')},{format_value(v.hi, 'hex')})"
    return str(v)


# --------------------------------------------------------------------------
# reference evaluation


class UndefinedForZeroDivisor(ZeroDivisionError):
    """Quotient requested for a divisor interval that contains 0."""


def _sign(v: float) -> float:
    return math.copysign(1.0, v)


def exact_corner(op, a: FpValue, b: FpValue):
    """Exact ``a op b`` as an ExactReal, or None where IEEE-754 yields NaN.

    Infinite results follow the IEEE infinity rules; a finite nonzero value
    divided by a zero gives an infinity signed by both operands.
    """
    r = _exact(Op(op), a.value, b.value)
    if isinstance(r, tuple):
        return Fraction(*r)
    return r


def _exact(op: Op, u: float, v: float):
    # None for NaN, a float for +-inf, else an unreduced ratio (n, d) with d > 0
    if u != u or v != v:
        return None
    uinf, vinf = math.isinf(u), math.isinf(v)
    if op is Op.ADD or op is Op.SUB:
        if op is Op.SUB:
            v = -v
        if uinf and vinf:
            return u if u == v else None
        if uinf:
            return u
        if vinf:
            return v
        un, ud = u.as_integer_ratio()
        vn, vd = v.as_integer_ratio()
        return un * vd + vn * ud, ud * vd
    if op is Op.MUL:
        if uinf or vinf:
            if u == 0.0 or v == 0.0:
                return None
            return math.inf if (u > 0) == (v > 0) else -math.inf
        un, ud = u.as_integer_ratio()
        vn, vd = v.as_integer_ratio()
        return un * vn, ud * vd
    # division
    if uinf and vinf:
        return None
    if uinf:
        return math.inf if _sign(u) == _sign(v) else -math.inf
    if vinf:
        return 0, 1
    if v == 0.0:
        if u == 0.0:
            return None
        return math.inf if _sign(u) == _sign(v) else -math.inf
    un, ud = u.as_integer_ratio()
    vn, vd = v.as_integer_ratio()
    if vn < 0:
        return -un * vd, -ud * vn
    return un * vd, ud * vn


def _bracket(r, fmt: FpFormat):
    if isinstance(r, tuple):
        return bracket_ratio(r[0], r[1], fmt)
    return exact_bracket(r, fmt)


def reference_op(op, x: Interval, y: Interval) -> RawPair:
    """Hull of the exactly-rounded bound combinations, four NaNs giving 0.

    Raises :class:`UndefinedForZeroDivisor` for ``div`` when 0 is in ``y``.
    """
    op = Op(op)
    fmt = x.fmt
    if op is Op.DIV and real_in(0, y):
        raise UndefinedForZeroDivisor(f"0 is in {y}")
    lo: Optional[float] = None
    hi: Optional[float] = None
    for a in (x.inf.value, x.sup.value):
        for b in (y.inf.value, y.sup.value):
            r = _exact(op, a, b)
            if r is None:
                continue
            d, u = _bracket(r, fmt)
            if lo is None or d.value < lo:
                lo = d.value
            if hi is None or u.value > hi:
                hi = u.value
    if lo is None:
        lo = hi = 0.0
    return RawPair(FpValue._raw(fmt, lo), FpValue._raw(fmt, hi))


# --------------------------------------------------------------------------
# exhaustive checks


OK, ZERO_DIV, INVALID, ERROR = 0, 1, 2, 3

_interval_cache: dict = {}


def valid_intervals(fmt: FpFormat):
    """All non-NaN values of ``fmt`` and every valid interval over them.

    Returns ``(values, intervals, bounds)`` where ``bounds[k]`` holds the
    indices into ``values`` of ``intervals[k]``'s bounds.
    """
    hit = _interval_cache.get(fmt)
    if hit is not None:
        return hit
    values = [v for v in enumerate_values(fmt) if v.value == v.value]
    intervals, bounds = [], []
    for i, a in enumerate(values):
        for j, b in enumerate(values):
            try:
                intervals.append(make(a, b))
            except InvalidInterval:
                continue
            bounds.append((i, j))
    hit = (values, intervals, np.array(bounds, dtype=np.int64))
    _interval_cache[fmt] = hit
    return hit


def _run(impl: Callable, intervals) -> tuple:
    lo, hi, status, errors = [], [], [], {}
    nan = math.nan
    for x in intervals:
        for y in intervals:
            try:
                r = impl(x, y)
            except DivisionByZeroInterval:
                lo.append(nan), hi.append(nan), status.append(ZERO_DIV)
            except InvalidInterval as e:
                lo.append(nan), hi.append(nan), status.append(INVALID)
                errors.setdefault(len(status) - 1, repr(e))
            except Exception as e:  # never abort a run on one bad case
                lo.append(nan), hi.append(nan), status.append(ERROR)
                errors.setdefault(len(status) - 1, repr(e))
            else:
                lo.append(r.inf.value), hi.append(r.sup.value), status.append(OK)
    return (np.array(lo), np.array(hi), np.array(status, dtype=np.int8), errors)


def _value_table(values, f) -> np.ndarray:
    return np.array([[f(a, b) for b in values] for a in values], dtype=float)


def _reference_table(op: Op, values, direction: int) -> np.ndarray:
    def f(a, b):
        r = exact_corner(op, a, b)
        if r is None:
            return math.nan
        return exact_bracket(r, a.fmt)[direction].value

    return _value_table(values, f)


def _hull(table: np.ndarray, xi, xs, yi, ys, pick) -> np.ndarray:
    c = pick(pick(table[xi, yi], table[xi, ys]), pick(table[xs, yi], table[xs, ys]))
    c[np.isnan(c)] = 0.0
    return c


def _sample_points(values, bounds, scale: int) -> tuple:
    """Bounds plus three interior samples per interval, as integers times ``scale``.

    Bounded: the quartile points.  Half-bounded: the finite bound moved 1, 2, 3
    into the interval.  Entire: -1, 0, 1.
    """
    vf = np.array([v.value for v in values])
    fin = np.isfinite(vf)
    vi = np.where(fin, vf, 0.0) * scale
    lo_i, hi_i = vi[bounds[:, 0]].astype(object), vi[bounds[:, 1]].astype(object)
    lo_f, hi_f = fin[bounds[:, 0]], fin[bounds[:, 1]]
    n = len(bounds)
    pts = np.zeros((n, 5), dtype=object)
    mask = np.ones((n, 5), dtype=bool)
    for k in range(n):
        a = int(lo_i[k])
        b = int(hi_i[k])
        if lo_f[k] and hi_f[k]:
            s = [(3 * a + b) // 4, (a + b) // 2, (a + 3 * b) // 4]
        elif lo_f[k]:
            s = [a + scale, a + 2 * scale, a + 3 * scale]
        elif hi_f[k]:
            s = [b - scale, b - 2 * scale, b - 3 * scale]
        else:
            s = [-scale, 0, scale]
        pts[k] = [a, b, *s]
        mask[k, 0], mask[k, 1] = lo_f[k], hi_f[k]
    return pts, mask


def _qs_violations(op: Op, xp, xm, yp, ym, lo, hi, scale: int, dtype):
    """Per-pair flag: some sampled u in x, v in y has u op v outside [lo, hi]."""
    lof, hif = np.isfinite(lo), np.isfinite(hi)
    LO = np.where(lof, lo, 0.0) * scale
    HI = np.where(hif, hi, 0.0) * scale
    LO, HI = LO.astype(dtype), HI.astype(dtype)
    bad = np.zeros(len(lo), dtype=bool)
    for i in range(xp.shape[1]):
        U = xp[:, i]
        for j in range(yp.shape[1]):
            V = yp[:, j]
            use = xm[:, i] & ym[:, j]
            if op is Op.ADD or op is Op.SUB:
                W = U + V if op is Op.ADD else U - V
                ok_lo = ~lof | (LO <= W)
                ok_hi = ~hif | (W <= HI)
            elif op is Op.MUL:
                W = U * V
                ok_lo = ~lof | (LO * scale <= W)
                ok_hi = ~hif | (W <= HI * scale)
            else:
                num = U * scale
                pos = V > 0
                lv, hv = LO * V, HI * V
                ok_lo = ~lof | np.where(pos, lv <= num, lv >= num)
                ok_hi = ~hif | np.where(pos, num <= hv, num >= hv)
            bad |= use & ~(ok_lo & ok_hi)
    return bad


def exhaustive_check(
    fmt: FpFormat,
    op,
    properties: Iterable = INTERVAL_PROPERTIES,
    *,
    impl: Optional[Callable] = None,
    label: Optional[str] = None,
    limit: int = MAX_COUNTEREXAMPLES,
) -> list:
    """Check ``properties`` of one operator on every ordered pair of valid intervals.

    Returns one :class:`CheckReport` per requested property (``Q_Z`` only
    applies to ``div`` and is skipped for the other operators).  ``impl``
    substitutes another implementation for the production operator.
    """
    op = Op(op)
    props = [Property(p) if not isinstance(p, Property) else p for p in properties]
    if op is not Op.DIV:
        props = [p for p in props if p is not Property.Q_Z]
    props = [p for p in props if p is not Property.EXTREMA]
    impl = impl or OPERATORS[op.value]
    label = label or op.value
    t0 = time.perf_counter()
    values, intervals, bounds = valid_intervals(fmt)
    n = len(intervals)
    lo, hi, status, errors = _run(impl, intervals)
    shared = time.perf_counter() - t0

    vf = np.array([v.value for v in values])
    xi = np.repeat(bounds[:, 0], n)
    xs = np.repeat(bounds[:, 1], n)
    yi = np.tile(bounds[:, 0], n)
    ys = np.tile(bounds[:, 1], n)
    has_zero = (vf[yi] <= 0.0) & (vf[ys] >= 0.0)
    applicable = ~has_zero if op is Op.DIV else np.ones(n * n, dtype=bool)
    produced = status == OK

    def describe(k):
        return intervals[k // n], intervals[k % n]

    def actual_text(k):
        if status[k] == OK:
            return f"[{format_value(FpValue._raw(fmt, lo[k]), 'hex')},"\
                   f"{format_value(FpValue._raw(fmt, hi[k]), 'hex')}]"
        return errors.get(k, {ZERO_DIV: "zero_division_detected"}.get(int(status[k]), "error"))

    def hull_text(elo, ehi, k):
        return f"[{format_value(FpValue._raw(fmt, elo[k]), 'hex')},"\
               f"{format_value(FpValue._raw(fmt, ehi[k]), 'hex')}]"

    reports = []
    for prop in props:
        t1 = time.perf_counter()
        rep = CheckReport(fmt.name, label, prop.value)
        if prop is Property.Q_V:
            ok_bounds = ((np.isfinite(lo) | (lo == -np.inf))
                         & (np.isfinite(hi) | (hi == np.inf)) & (lo <= hi))
            bad = applicable & ~(produced & ok_bounds)
            rep.cases_checked = int(applicable.sum())
            for k in np.flatnonzero(bad):
                rep.record(int(k), *describe(k), "valid interval", actual_text(k), limit)
        elif prop in (Property.Q_T, Property.BRANCH):
            if prop is Property.Q_T:
                dn = _value_table(values, lambda a, b: dir_op(op, "down", a, b).value)
                up = _value_table(values, lambda a, b: dir_op(op, "up", a, b).value)
            else:
                dn = _reference_table(op, values, 0)
                up = _reference_table(op, values, 1)
            elo = _hull(dn, xi, xs, yi, ys, np.fmin)
            ehi = _hull(up, xi, xs, yi, ys, np.fmax)
            bad = applicable & ~(produced & (lo == elo) & (hi == ehi))
            rep.cases_checked = int(applicable.sum())
            if prop is Property.BRANCH:
                # reference_op is undefined where 0 is in y; production must agree
                bad |= ~applicable & (status != ZERO_DIV)
                rep.cases_checked = n * n
            for k in np.flatnonzero(bad):
                exp = hull_text(elo, ehi, k) if applicable[k] else "zero_division_detected"
                rep.record(int(k), *describe(k), exp, actual_text(k), limit)
        elif prop is Property.Q_Z:
            raised = status == ZERO_DIV
            bad = raised != has_zero
            rep.cases_checked = n * n
            for k in np.flatnonzero(bad):
                exp = "zero_division_detected" if has_zero[k] else "quotient"
                rep.record(int(k), *describe(k), exp, actual_text(k), limit)
        elif prop is Property.Q_S:
            scale = 1 << (fmt.significand_bits - fmt.emin + 2)
            pts, mask = _sample_points(values, bounds, scale)
            pmax = int((fmt.max_finite + 3) * scale)
            dtype = np.int64 if pmax * pmax * scale < (1 << 62) else object
            pts = pts.astype(dtype)
            bad = np.zeros(n * n, dtype=bool)
            chunk = max(1, 400_000 // n)
            for s in range(0, n, chunk):
                e = min(n, s + chunk)
                ks = slice(s * n, e * n)
                xidx = np.repeat(np.arange(s, e), n)
                yidx = np.tile(np.arange(n), e - s)
                bad[ks] = _qs_violations(op, pts[xidx], mask[xidx], pts[yidx],
                                         mask[yidx], lo[ks], hi[ks], scale, dtype)
            bad = applicable & (bad | ~produced)
            rep.cases_checked = int(applicable.sum())
            for k in np.flatnonzero(bad):
                rep.record(int(k), *describe(k), "enclosure of sampled results",
                           actual_text(k), limit)
        elif prop is Property.ROUNDING:
            _rounding_check(rep, op, values, limit)
        rep.elapsed = shared + time.perf_counter() - t1
        reports.append(rep)
    return reports


def _rounding_check(rep: CheckReport, op: Op, values, limit):
    """dir_op against exact_round on every pair of values, NaN operands included."""
    fmt = values[0].fmt
    operands = list(values) + [FpValue.nan(fmt)]
    k = 0
    for a in operands:
        for b in operands:
            r = exact_corner(op, a, b)
            br = None if r is None else exact_bracket(r, fmt)
            for d, name in ((0, "down"), (1, "up")):
                got = dir_op(op, name, a, b)
                if br is None:
                    good = got.value != got.value
                    expected = "nan"
                else:
                    good = got.value == br[d].value
                    expected = br[d]
                rep.cases_checked += 1
                if not good:
                    rep.record(k, a, b, expected, got, limit)
                k += 1


def extrema_check(fmt: FpFormat, limit: int = MAX_COUNTEREXAMPLES) -> CheckReport:
    """min4/max4 lemmas over every 4-tuple of values of ``fmt`` (NaN included).

    The real :func:`min2`/:func:`max2` are tabulated once per value pair;
    min4 and max4 are then composed from the tables exactly as they are
    defined.  Checked per tuple: each non-NaN argument bounds the result;
    with any non-NaN argument the result equals one of them; an argument
    bounding all the others is the result; NaN results only from four NaNs.
    """
    t0 = time.perf_counter()
    vals = list(enumerate_values(fmt))
    m = len(vals)
    vf = np.array([v.value for v in vals])
    pos = {id(v): i for i, v in enumerate(vals)}
    tmin = np.array([[pos[id(min2(a, b))] for b in vals] for a in vals])
    tmax = np.array([[pos[id(max2(a, b))] for b in vals] for a in vals])
    rep = CheckReport(fmt.name, "min4/max4", Property.EXTREMA.value)
    grid = np.indices((m, m, m)).reshape(3, -1)
    x, y, z = grid
    fx, fy, fz = vf[x], vf[y], vf[z]
    for w in range(m):
        fw = np.full(x.shape, vf[w])
        args = (fw, fx, fy, fz)
        nan_arg = [np.isnan(a) for a in args]
        all_nan = nan_arg[0] & nan_arg[1] & nan_arg[2] & nan_arg[3]
        bad = np.zeros(x.shape, dtype=bool)
        for table, le in ((tmin, np.less_equal), (tmax, np.greater_equal)):
            r = vf[table[w, table[x, table[y, z]]]]
            rn = np.isnan(r)
            bad |= rn != all_nan
            # fle / fge
            for a, an in zip(args, nan_arg):
                bad |= ~an & ~le(r, a)
            # feq
            hit = (r == fw) | (r == fx) | (r == fy) | (r == fz)
            bad |= ~all_nan & ~hit
            # feq_w, feq_x, feq_y, feq_z
            for i, (a, an) in enumerate(zip(args, nan_arg)):
                prem = ~an
                for j, (b, bn) in enumerate(zip(args, nan_arg)):
                    if i != j:
                        prem &= le(a, b) | bn
                bad |= prem & (r != a)
        rep.cases_checked += int(x.size)
        for k in np.flatnonzero(bad):
            rep.record(w * m ** 3 + int(k), vals[w],
                       (vals[x[k]], vals[y[k]], vals[z[k]]), "lemmas hold",
                       "violated", limit)
    rep.elapsed = time.perf_counter() - t0
    return rep


def negative_control(fmt: FpFormat, limit: int = MAX_COUNTEREXAMPLES) -> CheckReport:
    """Tightness check of the unsimplified kv multiplication; must find violations."""
    (rep,) = exhaustive_check(fmt, Op.MUL, [Property.Q_T], impl=mul_original,
                              label="mul_original", limit=limit)
    return rep


# --------------------------------------------------------------------------
# randomized checks


def _random_value(rng: random.Random, fmt: FpFormat) -> float:
    p = fmt.significand_bits
    c = rng.random()
    sign = -1.0 if rng.random() < 0.5 else 1.0
    if c < 0.08:
        v = 0.0
    elif c < 0.16:
        v = math.ldexp(rng.randrange(1, 1 << p), fmt.emin - p)
    elif c < 0.20:
        v = fmt.max_finite
    elif c < 0.30:
        v = math.inf
    elif c < 0.40:
        v = float(rng.randrange(1, 17))  # exact cancellations and products
        if not fmt.represents(v):
            v = 1.0
    elif c < 0.45:
        v = fmt.min_normal if rng.random() < 0.5 else fmt.min_subnormal
    else:
        e = rng.randint(fmt.emin, fmt.emax)
        v = math.ldexp(rng.randrange(1 << p, 1 << (p + 1)), e - p)
    return math.copysign(v, sign)


def random_interval(rng: random.Random, fmt: FpFormat = BINARY64) -> Interval:
    """A valid interval with bounds stratified over zeros, subnormals, all
    binades, max finite and infinities; about one in eight is degenerate."""
    while True:
        a = _random_value(rng, fmt)
        b = a if rng.random() < 0.125 else _random_value(rng, fmt)
        if b < a:
            a, b = b, a
        if a == math.inf or b == -math.inf:
            continue
        return Interval(FpValue._raw(fmt, a), FpValue._raw(fmt, b))


def _qs_points(x: Interval):
    a, b = x.inf.value, x.sup.value
    pts = [Fraction(v) for v in (a, b) if math.isfinite(v)]
    if math.isfinite(a) and math.isfinite(b):
        fa, fb = Fraction(a), Fraction(b)
        pts += [(3 * fa + fb) / 4, (fa + fb) / 2, (fa + 3 * fb) / 4]
    elif math.isfinite(a):
        pts += [Fraction(a) + k for k in (1, 2, 3)]
    elif math.isfinite(b):
        pts += [Fraction(b) - k for k in (1, 2, 3)]
    else:
        pts += [Fraction(-1), Fraction(0), Fraction(1)]
    return pts


_EXACT_OPS = {
    Op.ADD: lambda u, v: u + v,
    Op.SUB: lambda u, v: u - v,
    Op.MUL: lambda u, v: u * v,
    Op.DIV: lambda u, v: u / v,
}


def random_check(
    op,
    properties: Iterable = (Property.BRANCH,),
    count: int = 1_000_000,
    seed: int = 1,
    fmt: FpFormat = BINARY64,
    *,
    impl: Optional[Callable] = None,
    limit: int = MAX_COUNTEREXAMPLES,
) -> list:
    """Check ``properties`` on ``count`` seeded random interval pairs."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must fit in 64 bits")
    op = Op(op)
    props = [p if isinstance(p, Property) else Property.parse(p) for p in properties]
    if op is not Op.DIV:
        props = [p for p in props if p is not Property.Q_Z]
    props = [p for p in props if p is not Property.EXTREMA]
    impl = impl or OPERATORS[op.value]
    rng = random.Random(seed)
    reports = {p: CheckReport(fmt.name, op.value, p.value) for p in props}
    timers = {p: 0.0 for p in props}
    exact = _EXACT_OPS[op]
    clock = time.perf_counter
    shared = 0.0
    for k in range(count):
        t0 = clock()
        x = random_interval(rng, fmt)
        y = random_interval(rng, fmt)
        has_zero = y.inf.value <= 0.0 <= y.sup.value
        applicable = not (op is Op.DIV and has_zero)
        try:
            r = impl(x, y)
            actual = r
        except DivisionByZeroInterval:
            r, actual = None, "zero_division_detected"
        except Exception as e:  # keep going; record below
            r, actual = None, repr(e)
        shared += clock() - t0
        for p in props:
            t1 = clock()
            rep = reports[p]
            if p is Property.Q_Z:
                rep.cases_checked += 1
                if (r is None and actual == "zero_division_detected") != has_zero:
                    rep.record(k, x, y, "zero_division_detected" if has_zero
                               else "quotient", actual, limit)
            elif p is Property.ROUNDING:
                for a in x:
                    for b in y:
                        e = _exact(op, a.value, b.value)
                        br = None if e is None else _bracket(e, fmt)
                        for d, name in ((0, "down"), (1, "up")):
                            got = dir_op(op, name, a, b).value
                            rep.cases_checked += 1
                            good = got != got if br is None else got == br[d].value
                            if not good:
                                rep.record(k, a, b, "nan" if br is None else br[d],
                                           FpValue._raw(fmt, got), limit)
            elif p is Property.BRANCH and not applicable:
                rep.cases_checked += 1
                if actual != "zero_division_detected":
                    rep.record(k, x, y, "zero_division_detected", actual, limit)
            elif applicable:
                rep.cases_checked += 1
                if r is None:
                    rep.record(k, x, y, "interval", actual, limit)
                elif p is Property.Q_V:
                    if not valid(r):
                        rep.record(k, x, y, "valid interval", actual, limit)
                elif p is Property.Q_T or p is Property.BRANCH:
                    exp = hull_of_corners(op, x, y) if p is Property.Q_T \
                        else reference_op(op, x, y)
                    if not (exp.lo.value == r.inf.value and exp.hi.value == r.sup.value):
                        rep.record(k, x, y, exp, r, limit)
                elif p is Property.Q_S:
                    for u in _qs_points(x):
                        for v in _qs_points(y):
                            if not real_in(exact(u, v), r):
                                rep.record(k, x, y, f"contains {exact(u, v)}", r, limit)
                                break
                        else:
                            continue
                        break
            timers[p] += clock() - t1
    out = []
    for p in props:
        reports[p].elapsed = shared + timers[p]
        out.append(reports[p])
    return out
