"""Binary floating-point formats and the values that live in them.

Every supported format embeds exactly into binary64: its exponent range and
precision are no wider than those of a Python ``float``.  An :class:`FpValue`
therefore stores its datum as a plain float, and IEEE-754 comparison
semantics (``-0 == +0``, NaN unordered) come straight from the hardware.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field

__all__ = [
    "FpFormat",
    "FpValue",
    "FpClass",
    "Ordering",
    "FormatMismatch",
    "EnumerationTooLarge",
    "BINARY64",
    "E2M1",
    "E3M2",
    "ENUMERATION_CAP",
    "parse_format",
    "encode",
    "decode",
    "enumerate_values",
    "classify",
    "is_zero",
    "is_finite",
    "is_plus_infinity",
    "is_minus_infinity",
    "is_infinite",
    "is_not_nan",
    "is_nan",
    "is_positive",
    "is_negative",
    "fp_compare",
    "fp_lt",
    "fp_le",
    "fp_gt",
    "fp_ge",
    "fp_eq",
    "identical",
    "successor",
    "predecessor",
    "format_value",
    "parse_value",
]

#: Largest number of encodings :func:`enumerate_values` will expand.
ENUMERATION_CAP = 1 << 16


class FormatMismatch(ValueError):
    """Two operands of one operation belong to different formats."""


class EnumerationTooLarge(ValueError):
    """The format has more encodings than :data:`ENUMERATION_CAP`."""


@dataclass(frozen=True)
class FpFormat:
    """An IEEE-754 style binary format with subnormals, two zeros, two infinities.

    ``significand_bits`` counts stored fraction bits; the leading bit is
    implicit.  Formats wider than binary64 in either field are rejected.
    """

    exponent_bits: int
    significand_bits: int
    name: str = field(default="", compare=False)

    bias: int = field(init=False, repr=False, compare=False)
    emin: int = field(init=False, repr=False, compare=False)
    emax: int = field(init=False, repr=False, compare=False)
    max_finite: float = field(init=False, repr=False, compare=False)
    min_normal: float = field(init=False, repr=False, compare=False)
    min_subnormal: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.exponent_bits < 2 or self.significand_bits < 1:
            raise ValueError("need exponent_bits >= 2 and significand_bits >= 1")
        if self.exponent_bits > 11 or self.significand_bits > 52:
            raise ValueError("format does not embed in binary64")
        if not self.name:
            object.__setattr__(
                self, "name", f"E{self.exponent_bits}M{self.significand_bits}"
            )
        bias = (1 << (self.exponent_bits - 1)) - 1
        p = self.significand_bits
        setattr_ = object.__setattr__
        setattr_(self, "bias", bias)
        setattr_(self, "emin", 1 - bias)
        setattr_(self, "emax", bias)
        setattr_(self, "max_finite", math.ldexp((1 << (p + 1)) - 1, bias - p))
        setattr_(self, "min_normal", math.ldexp(1.0, 1 - bias))
        setattr_(self, "min_subnormal", math.ldexp(1.0, 1 - bias - p))

    @property
    def width(self) -> int:
        return 1 + self.exponent_bits + self.significand_bits

    @property
    def encoding_count(self) -> int:
        return 1 << self.width

    @property
    def enumerable(self) -> bool:
        return self.encoding_count <= ENUMERATION_CAP

    def represents(self, v: float) -> bool:
        """True if the float ``v`` is exactly a member of this format."""
        if not math.isfinite(v) or v == 0.0:
            return True
        a = abs(v)
        if a > self.max_finite:
            return False
        m, e = math.frexp(a)  # a = m * 2**e, 0.5 <= m < 1
        # lowest set bit must not fall below the ulp of a's binade
        quantum = max(e - 1, self.emin) - self.significand_bits
        return math.ldexp(a, -quantum).is_integer()

    def __str__(self):
        return self.name


BINARY64 = FpFormat(11, 52, "binary64")
E2M1 = FpFormat(2, 1)
E3M2 = FpFormat(3, 2)

_NAMED = {"binary64": BINARY64, "double": BINARY64}
_MINIFLOAT = re.compile(r"E(\d+)M(\d+)", re.IGNORECASE)


def parse_format(text: str) -> FpFormat:
    """Resolve ``binary64`` or a minifloat name such as ``E3M2``."""
    key = text.strip()
    if key.lower() in _NAMED:
        return _NAMED[key.lower()]
    m = _MINIFLOAT.fullmatch(key)
    if not m:
        raise ValueError(f"unknown format {text!r}; expected binary64 or EkMm")
    fmt = FpFormat(int(m.group(1)), int(m.group(2)))
    return BINARY64 if fmt == BINARY64 else fmt


class FpValue:
    """One member of F ∪ {-inf, +inf, NaN} for a given format.

    Python comparison operators follow IEEE-754, so ``FpValue`` behaves like
    a float in ``<``/``==`` tests.  Use :func:`identical` to tell the two
    zeros apart.
    """

    __slots__ = ("fmt", "value")

    fmt: FpFormat
    value: float

    def __init__(self, fmt: FpFormat, value: float):
        value = float(value)
        if fmt is not BINARY64 and not fmt.represents(value):
            raise ValueError(f"{value!r} is not representable in {fmt.name}")
        _set_fmt(self, fmt)
        _set_value(self, value)

    def __setattr__(self, name, value):
        raise AttributeError("FpValue is immutable")

    def __reduce__(self):
        return (FpValue, (self.fmt, self.value))

    def __repr__(self):
        return f"FpValue({self.fmt.name}, {format_value(self, 'hex')})"

    def __str__(self):
        return format_value(self)

    def __float__(self):
        return self.value

    def __hash__(self):
        # -0 and +0 compare equal, so they must hash equal
        return hash(self.value)

    def __eq__(self, other):
        if isinstance(other, FpValue):
            return self.value == other.value
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, FpValue):
            return self.value < other.value
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, FpValue):
            return self.value <= other.value
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, FpValue):
            return self.value > other.value
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, FpValue):
            return self.value >= other.value
        return NotImplemented

    @classmethod
    def _raw(cls, fmt: FpFormat, value: float) -> "FpValue":
        # trusted constructor for results already known to be representable
        obj = object.__new__(cls)
        _set_fmt(obj, fmt)
        _set_value(obj, value)
        return obj

    @classmethod
    def nan(cls, fmt: FpFormat) -> "FpValue":
        return cls._raw(fmt, math.nan)

    @classmethod
    def inf(cls, fmt: FpFormat, sign: int = 1) -> "FpValue":
        return cls._raw(fmt, math.copysign(math.inf, sign))

    @classmethod
    def zero(cls, fmt: FpFormat, sign: int = 1) -> "FpValue":
        return cls._raw(fmt, math.copysign(0.0, sign))

    @classmethod
    def max_finite(cls, fmt: FpFormat, sign: int = 1) -> "FpValue":
        return cls._raw(fmt, math.copysign(fmt.max_finite, sign))

    @classmethod
    def min_subnormal(cls, fmt: FpFormat, sign: int = 1) -> "FpValue":
        return cls._raw(fmt, math.copysign(fmt.min_subnormal, sign))


_set_fmt = FpValue.fmt.__set__  # type: ignore[attr-defined]
_set_value = FpValue.value.__set__  # type: ignore[attr-defined]


# --------------------------------------------------------------------------
# bit-level codec


def encode(x: FpValue) -> int:
    """Bit pattern of ``x`` (sign | exponent | fraction); NaN is the quiet NaN."""
    fmt = x.fmt
    p = fmt.significand_bits
    v = x.value
    sign = 1 if math.copysign(1.0, v) < 0 else 0
    top = (1 << fmt.exponent_bits) - 1
    if math.isnan(v):
        return (top << p) | (1 << (p - 1))
    if math.isinf(v):
        exp, frac = top, 0
    elif v == 0.0:
        exp, frac = 0, 0
    else:
        a = abs(v)
        m, e = math.frexp(a)
        e -= 1  # a = 1.f * 2**e
        if e < fmt.emin:
            exp = 0
            frac = int(math.ldexp(a, p - fmt.emin))
        else:
            exp = e + fmt.bias
            frac = int(math.ldexp(a, p - e)) - (1 << p)
    return (sign << (fmt.width - 1)) | (exp << p) | frac


def decode(fmt: FpFormat, bits: int) -> FpValue:
    if not 0 <= bits < fmt.encoding_count:
        raise ValueError(f"bit pattern {bits:#x} out of range for {fmt.name}")
    p = fmt.significand_bits
    frac = bits & ((1 << p) - 1)
    exp = (bits >> p) & ((1 << fmt.exponent_bits) - 1)
    sign = -1.0 if bits >> (fmt.width - 1) else 1.0
    if exp == (1 << fmt.exponent_bits) - 1:
        v = math.nan if frac else math.inf
    elif exp == 0:
        v = math.ldexp(frac, fmt.emin - p)
    else:
        v = math.ldexp((1 << p) | frac, exp - fmt.bias - p)
    return FpValue._raw(fmt, math.copysign(v, sign) if not math.isnan(v) else v)


_ENUM_CACHE: dict = {}


def enumerate_values(fmt: FpFormat) -> tuple:
    """Every distinct value of ``fmt``: non-NaN ascending (-0 before +0), NaN last."""
    if not fmt.enumerable:
        raise EnumerationTooLarge(
            f"{fmt.name} has {fmt.encoding_count} encodings (cap {ENUMERATION_CAP})"
        )
    cached = _ENUM_CACHE.get(fmt)
    if cached is None:
        values = [decode(fmt, b) for b in range(fmt.encoding_count)]
        ordered = sorted(
            (x for x in values if not math.isnan(x.value)),
            key=lambda x: (x.value, math.copysign(1.0, x.value)),
        )
        cached = tuple(ordered) + (FpValue.nan(fmt),)
        _ENUM_CACHE[fmt] = cached
    return cached


def successor(x: FpValue) -> FpValue:
    """Next value of the format towards +inf (``+inf`` and NaN are fixed points)."""
    v = x.value
    if math.isnan(v) or v == math.inf:
        return x
    if v == 0.0:
        return FpValue.min_subnormal(x.fmt)
    if v == -math.inf:
        return FpValue.max_finite(x.fmt, -1)
    bits = encode(x)
    bits = bits - 1 if v < 0 else bits + 1
    out = decode(x.fmt, bits)
    return FpValue.zero(x.fmt, -1) if out.value == 0.0 else out


def predecessor(x: FpValue) -> FpValue:
    v = x.value
    if math.isnan(v) or v == -math.inf:
        return x
    neg = FpValue._raw(x.fmt, -v)
    out = successor(neg)
    return FpValue._raw(x.fmt, -out.value)


# --------------------------------------------------------------------------
# classification and comparison


class FpClass(enum.Enum):
    NEG_INF = "neg_inf"
    FINITE = "finite"
    POS_INF = "pos_inf"
    NAN = "nan"


class Ordering(enum.Enum):
    LT = "lt"
    EQ = "eq"
    GT = "gt"
    UNORDERED = "unordered"


def classify(x: FpValue) -> FpClass:
    v = x.value
    if v != v:
        return FpClass.NAN
    if v == math.inf:
        return FpClass.POS_INF
    if v == -math.inf:
        return FpClass.NEG_INF
    return FpClass.FINITE


def is_zero(x: FpValue) -> bool:
    return x.value == 0.0


def is_finite(x: FpValue) -> bool:
    return math.isfinite(x.value)


def is_plus_infinity(x: FpValue) -> bool:
    return x.value == math.inf


def is_minus_infinity(x: FpValue) -> bool:
    return x.value == -math.inf


def is_infinite(x: FpValue) -> bool:
    return math.isinf(x.value)


def is_nan(x: FpValue) -> bool:
    return x.value != x.value


def is_not_nan(x: FpValue) -> bool:
    return x.value == x.value


def is_positive(x: FpValue) -> bool:
    """Sign bit clear and not NaN (+0 and +inf count as positive)."""
    v = x.value
    return v == v and math.copysign(1.0, v) > 0


def is_negative(x: FpValue) -> bool:
    v = x.value
    return v == v and math.copysign(1.0, v) < 0


def _check(x: FpValue, y: FpValue):
    if x.fmt != y.fmt:
        raise FormatMismatch(f"{x.fmt.name} vs {y.fmt.name}")


def fp_compare(x: FpValue, y: FpValue) -> Ordering:
    _check(x, y)
    a, b = x.value, y.value
    if a < b:
        return Ordering.LT
    if a > b:
        return Ordering.GT
    if a == b:
        return Ordering.EQ
    return Ordering.UNORDERED


def fp_lt(x: FpValue, y: FpValue) -> bool:
    _check(x, y)
    return x.value < y.value


def fp_le(x: FpValue, y: FpValue) -> bool:
    _check(x, y)
    return x.value <= y.value


def fp_gt(x: FpValue, y: FpValue) -> bool:
    _check(x, y)
    return x.value > y.value


def fp_ge(x: FpValue, y: FpValue) -> bool:
    _check(x, y)
    return x.value >= y.value


def fp_eq(x: FpValue, y: FpValue) -> bool:
    _check(x, y)
    return x.value == y.value


def identical(x: FpValue, y: FpValue) -> bool:
    """Same format and same datum, distinguishing -0 from +0; all NaNs match."""
    if x.fmt != y.fmt:
        return False
    a, b = x.value, y.value
    if a != a:
        return b != b
    return a == b and math.copysign(1.0, a) == math.copysign(1.0, b)


# --------------------------------------------------------------------------
# text form


def format_value(x: FpValue, style: str = "decimal") -> str:
    """Render ``x`` as decimal (shortest round-trip) or hexfloat text.

    Infinities print as ``+inf``/``-inf``, zeros keep their sign
    (``0``/``-0`` in decimal, ``0x0p+0``/``-0x0p+0`` in hex).
    """
    v = x.value
    if v != v:
        return "nan"
    if math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    if style == "hex":
        if v == 0.0:
            return "-0x0p+0" if math.copysign(1.0, v) < 0 else "0x0p+0"
        mant, _, exp = v.hex().partition("p")
        if "." in mant:
            mant = mant.rstrip("0").rstrip(".")
        return f"{mant}p{exp}"
    if style != "decimal":
        raise ValueError(f"unknown output style {style!r}")
    if v == 0.0:
        return "-0" if math.copysign(1.0, v) < 0 else "0"
    s = repr(v)
    return s[:-2] if s.endswith(".0") else s


def parse_value(text: str, fmt: FpFormat) -> FpValue:
    """Inverse of :func:`format_value`; the text must denote a value of ``fmt`` exactly."""
    from .exact import parse_exact  # local: exact depends on this module

    t = text.strip()
    low = t.lower()
    if low == "nan":
        return FpValue.nan(fmt)
    q = parse_exact(t)
    if isinstance(q, float):  # infinity
        return FpValue.inf(fmt, 1 if q > 0 else -1)
    if q == 0:
        return FpValue.zero(fmt, -1 if t.startswith("-") else 1)
    try:
        v = float(q)
    except OverflowError:
        v = math.nan
    if v != q or not fmt.represents(v):
        raise ValueError(f"{text!r} is not exactly representable in {fmt.name}")
    return FpValue._raw(fmt, v)
