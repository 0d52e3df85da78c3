# %% [markdown]
# Invariant spaces of small ternary Jordan algebras
#
# An algebra is a symmetric structure tensor T[i, j, k, l]: the coefficient
# of e_l in [[e_i, e_j, e_k]].  Everything below is exact.

# %%
import numpy as np

from ternary_jordan import fixtures as fx
from ternary_jordan.algebra import annihilator, derived, validate_ternary
from ternary_jordan.spaces import SpaceKind as K, complete_fprime, invariant_space

np.set_printoptions(formatter={"object": str})
KINDS = (K.DER, K.QDER, K.GDER, K.ZDER, K.CENTROID, K.QCENTROID)

# %%
# one-dimensional algebra with [[e,e,e]] = e
F2 = fx.get("F2")
print(validate_ternary(F2).as_dict())
for k in KINDS:
    print(f"{k.value:<10}", invariant_space(F2, k).projected.dim)

# %%
# a quasiderivation f comes with its companion f'; on F2 it is f' = 3f
print(complete_fprime(F2, [[5]]))

# %%
# the table for every shipped ternary fixture
print(f"{'name':<12}" + "".join(f"{k.value:>10}" for k in KINDS) + f"{'Z':>4}{'A^3':>5}")
for name in fx.TERNARY:
    A = fx.get(name)
    dims = [invariant_space(A, k, allow_char_3=True, require_valid=False).projected.dim
            for k in KINDS]
    print(f"{name:<12}" + "".join(f"{d:>10}" for d in dims)
          + f"{annihilator(A).dim:>4}{derived(A).dim:>5}")

# %%
# canonical bases: equal spaces give equal bases entry by entry
S = invariant_space(fx.get("F2*unital2"), K.QDER)
for f in S.maps():
    print(f)
