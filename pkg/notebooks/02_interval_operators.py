"""The four interval operators on a few hand-picked inputs."""

# %%
from fpinterval import E3M2, DivisionByZeroInterval, interval
from fpinterval.interval import hull_of_corners
from fpinterval.ops import mul, mul_original

# %% [markdown]
# Intervals are built from text so decimal inputs round outward.  0.1 is
# not a binary64 number, so it becomes a one-ulp-wide interval.

# %%
tenth = interval("0.1")
print(tenth.to_text("hex"))
print(tenth + tenth + tenth)

# %% [markdown]
# Infinite bounds follow the usual rules.  inf - inf has no value, and the
# bound it would have produced is simply skipped.

# %%
pos = interval(0, "inf")
print(pos - pos)
print(interval(0, 0) * interval("-inf", "inf"))

# %% [markdown]
# Multiplication splits on the signs of both operands.  When both straddle
# zero, the bounds come from two candidates each.

# %%
for a, b in [((1, 2), (3, 4)), ((-1, 2), (3, 4)), ((-1, 2), (-3, 4)), ((-2, -1), (-3, 4))]:
    x, y = interval(*a), interval(*b)
    print(f"{x} * {y} = {x * y}")

# %%
# the branch structure gives the same bounds as the hull of the corner products
x, y = interval(-1.5, 2), interval(-3, 5)
lo, hi = hull_of_corners("mul", x, y)
print(x * y, (lo.value, hi.value))

# %% [markdown]
# Division needs 0 outside the divisor.

# %%
try:
    interval(1, 2) / interval(-1, 1)
except DivisionByZeroInterval as e:
    print("refused:", e)

# %% [markdown]
# The older multiplication from the kv library widens [0,0] times an
# unbounded factor to the whole line.  Still sound, just not tight.

# %%
z, half = interval(0, 0, E3M2), interval(0, "inf", E3M2)
print("tight:", mul(z, half), " original:", mul_original(z, half))

# %%
# repeated use of a variable overestimates: x - x is not [0,0]
x = interval(1, 2)
d = x - x
print(d, "width", d.sup.value - d.inf.value)
