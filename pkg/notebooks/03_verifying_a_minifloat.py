"""Checking every interval pair of a small format, and watching a check fail."""

# %%
import numpy as np

from fpinterval.fpcore import E2M1, E3M2
from fpinterval.oracle import (
    Property,
    exhaustive_check,
    negative_control,
    random_check,
    valid_intervals,
)
from fpinterval.ops import mul

# %% [markdown]
# E2M1 has 15 values including NaN and 104 valid intervals, so one operator
# means 10816 ordered pairs.

# %%
values, intervals, bounds = valid_intervals(E2M1)
print(len(values), "values,", len(intervals), "intervals")
for op in ("add", "sub", "mul", "div"):
    for rep in exhaustive_check(E2M1, op):
        print(rep.to_line())

# %% [markdown]
# The checker has to be able to fail.  The kv-original multiplication is
# not tight for [0,0] times an unbounded interval, and the tightness check
# reports exactly those pairs.

# %%
rep = negative_control(E2M1)
print(rep.to_line())
for c in rep.first_counterexamples[:3]:
    print("  ", c)

# %% [markdown]
# Widths of all E3M2 products, to see how often the result is unbounded.

# %%
_, ivs, _ = valid_intervals(E3M2)
rng = np.random.default_rng(0)
pick = rng.integers(0, len(ivs), size=(20000, 2))
widths = np.array([(lambda r: r.sup.value - r.inf.value)(mul(ivs[i], ivs[j])) for i, j in pick])
print("unbounded:", np.isinf(widths).mean())
print("degenerate:", (widths == 0).mean())
print("median finite width:", np.median(widths[np.isfinite(widths)]))

# %% [markdown]
# binary64 cannot be enumerated; seeded random pairs stand in.

# %%
for rep in random_check("div", [Property.BRANCH, Property.Q_Z], count=5000, seed=1):
    print(rep.to_line())
