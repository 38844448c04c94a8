"""Directed-rounding arithmetic on FpValues.

Finite operands are split into integer ratios (``float.as_integer_ratio``),
combined exactly with Python integers and re-rounded by integer division.
No step reads or writes a hardware rounding mode, so results are pure
functions of their arguments.  Special operands follow IEEE-754.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from .formats import FormatMismatch, FpFormat, FpValue

__all__ = [
    "Op",
    "Direction",
    "dir_op",
    "round_rational",
    "add_down",
    "add_up",
    "sub_down",
    "sub_up",
    "mul_down",
    "mul_up",
    "div_down",
    "div_up",
]


class Op(str, enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"

    @property
    def symbol(self) -> str:
        return {"add": "+", "sub": "-", "mul": "*", "div": "/"}[self.value]


class Direction(str, enum.Enum):
    DOWN = "down"
    UP = "up"


_isfinite = math.isfinite
_copysign = math.copysign
_ldexp = math.ldexp
_INF = math.inf


def _round(n: int, d: int, up: bool, fmt: FpFormat) -> float:
    """Round the nonzero rational n/d (d > 0) towards -inf or +inf."""
    neg = n < 0
    if neg:
        n = -n
    away = up is not neg  # grow the magnitude?
    e = n.bit_length() - d.bit_length()
    if e >= 0:
        if n < d << e:
            e -= 1
    elif n << -e < d:
        e -= 1
    # 2**e <= n/d < 2**(e+1)
    p = fmt.significand_bits
    q = (e if e > fmt.emin else fmt.emin) - p
    if q >= 0:
        m, r = divmod(n, d << q)
    else:
        m, r = divmod(n << -q, d)
    if r and away:
        m += 1
    qmax = fmt.emax - p
    if q > qmax or (q == qmax and m >> (p + 1)):
        v = _INF if away else fmt.max_finite
    else:
        v = _ldexp(m, q)
    return -v if neg else v


def _add(a: float, b: float, up: bool, fmt: FpFormat) -> float:
    if not (_isfinite(a) and _isfinite(b)):
        return a + b
    if b == 0.0:
        if a == 0.0:
            # +0 unless both zeros are -0 (up), -0 unless both are +0 (down)
            if up:
                return a + b
            return 0.0 if _copysign(1.0, a) > 0 and _copysign(1.0, b) > 0 else -0.0
        return a
    if a == 0.0:
        return b
    na, da = a.as_integer_ratio()
    nb, db = b.as_integer_ratio()
    # denominators are powers of two
    if da >= db:
        n = na + nb * (da // db)
        d = da
    else:
        n = na * (db // da) + nb
        d = db
    if n == 0:
        return 0.0 if up else -0.0
    return _round(n, d, up, fmt)


def _sub(a: float, b: float, up: bool, fmt: FpFormat) -> float:
    return _add(a, -b, up, fmt)


def _mul(a: float, b: float, up: bool, fmt: FpFormat) -> float:
    if not (_isfinite(a) and _isfinite(b)) or a == 0.0 or b == 0.0:
        return a * b  # exact: signed zero, signed infinity, or NaN
    na, da = a.as_integer_ratio()
    nb, db = b.as_integer_ratio()
    return _round(na * nb, da * db, up, fmt)


def _div(a: float, b: float, up: bool, fmt: FpFormat) -> float:
    if a != a or b != b:
        return math.nan
    sign = _copysign(1.0, a) * _copysign(1.0, b)
    if not _isfinite(a):
        return math.nan if not _isfinite(b) else _copysign(_INF, sign)
    if not _isfinite(b):
        return _copysign(0.0, sign)
    if b == 0.0:
        return math.nan if a == 0.0 else _copysign(_INF, sign)
    if a == 0.0:
        return _copysign(0.0, sign)
    na, da = a.as_integer_ratio()
    nb, db = b.as_integer_ratio()
    n, d = na * db, da * nb
    if d < 0:
        n, d = -n, -d
    return _round(n, d, up, fmt)


_KERNELS = {Op.ADD: _add, Op.SUB: _sub, Op.MUL: _mul, Op.DIV: _div}


def dir_op(op, direction, x: FpValue, y: FpValue) -> FpValue:
    """``x op y`` rounded towards -inf (``down``) or +inf (``up``)."""
    fmt = x.fmt
    if y.fmt is not fmt and y.fmt != fmt:
        raise FormatMismatch(f"{fmt.name} vs {y.fmt.name}")
    kernel = _KERNELS[Op(op)]
    up = Direction(direction) is Direction.UP
    return FpValue._raw(fmt, kernel(x.value, y.value, up, fmt))


def round_rational(r, direction, fmt: FpFormat) -> FpValue:
    """Round an exact rational (or +-inf) into ``fmt`` in the given direction.

    Exact zero becomes +0.  This is the production counterpart of
    :func:`fpinterval.fpcore.exact.exact_round`.
    """
    up = Direction(direction) is Direction.UP
    if isinstance(r, float) and not _isfinite(r):
        if r != r:
            raise ValueError("cannot round NaN")
        return FpValue._raw(fmt, r)
    r = Fraction(r)
    if r == 0:
        return FpValue._raw(fmt, 0.0)
    return FpValue._raw(fmt, _round(r.numerator, r.denominator, up, fmt))


def _pair(kernel, up: bool):
    def f(x: FpValue, y: FpValue) -> FpValue:
        fmt = x.fmt
        if y.fmt is not fmt and y.fmt != fmt:
            raise FormatMismatch(f"{fmt.name} vs {y.fmt.name}")
        return FpValue._raw(fmt, kernel(x.value, y.value, up, fmt))

    f.__name__ = f"{kernel.__name__[1:]}_{'up' if up else 'down'}"
    f.__qualname__ = f.__name__
    return f


add_down = _pair(_add, False)
add_up = _pair(_add, True)
sub_down = _pair(_sub, False)
sub_up = _pair(_sub, True)
mul_down = _pair(_mul, False)
mul_up = _pair(_mul, True)
div_down = _pair(_div, False)
div_up = _pair(_div, True)
