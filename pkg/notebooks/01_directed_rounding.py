"""Directed rounding, one format at a time.

Run with ``python notebooks/01_directed_rounding.py`` or step through the
cells in an editor that understands ``# %%`` markers.
"""

# %%
from fractions import Fraction

from fpinterval.fpcore import (
    BINARY64,
    E3M2,
    FpValue,
    dir_op,
    enumerate_values,
    exact_round,
    format_value,
)

# %% [markdown]
# E3M2 is a 6-bit format: 3 exponent bits, 2 fraction bits.  Small enough
# to print every value.

# %%
vals = [v for v in enumerate_values(E3M2) if v.value == v.value]
print(len(vals), "non-NaN values")
print(" ".join(format_value(v) for v in vals))

# %% [markdown]
# Rounding down picks the largest value not above the exact result,
# rounding up the smallest value not below it.  1/3 falls between 0.3125
# and 0.375.

# %%
third = Fraction(1, 3)
print(exact_round(third, "down", E3M2), exact_round(third, "up", E3M2))

# %%
one, three = FpValue(E3M2, 1.0), FpValue(E3M2, 3.0)
print("1/3 down:", dir_op("div", "down", one, three))
print("1/3 up:  ", dir_op("div", "up", one, three))

# %% [markdown]
# Overflow is asymmetric: toward -inf a positive overflow stops at the
# largest finite value, toward +inf it becomes +inf.

# %%
for fmt in (E3M2, BINARY64):
    mx = FpValue.max_finite(fmt)
    print(fmt.name, dir_op("add", "down", mx, mx), dir_op("add", "up", mx, mx))

# %% [markdown]
# At the other end, a product smaller than the least subnormal still
# rounds up to that subnormal.

# %%
t = FpValue.min_subnormal(E3M2)
print(dir_op("mul", "down", t, t), dir_op("mul", "up", t, t))

# %%
# signed zeros: an exact cancellation gives -0 when rounding down
x = FpValue(BINARY64, 1.5)
print(format_value(dir_op("sub", "down", x, x)), format_value(dir_op("sub", "up", x, x)))
