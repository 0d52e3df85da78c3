# %% [markdown]
# Building new algebras from old ones

# %%
import numpy as np

from ternary_jordan import fixtures as fx
from ternary_jordan.algebra import TernaryAlgebra, validate_binary, validate_ternary
from ternary_jordan.constructions import (j_alpha, kerphi_split, l_u_embed, tensor_ternary,
                                          tilde)
from ternary_jordan.errors import NotJordan
from ternary_jordan.linalg import QQ
from ternary_jordan.spaces import SpaceKind as K, invariant_space

np.set_printoptions(formatter={"object": str})

# %%
# j_alpha turns a binary Jordan algebra and a covector killing J*J into a ternary product.
# The two-dimensional J3 below fails the binary Jordan identity, so the strict call refuses it.
J3 = fx.get("J3")
print("J3 Jordan:", validate_binary(J3).valid)
try:
    j_alpha(J3, [0, 1])
except NotJordan as exc:
    print("refused:", exc)
F3 = j_alpha(J3, [0, 1], strict=False)
print("output Jordan:", validate_ternary(F3).valid, validate_ternary(F3).witnesses[:1])

# %%
# a base that does satisfy the hypotheses: the truncated polynomials over GF(3)
print("char 3 example valid:", validate_ternary(fx.get("F4")).valid)

# %%
# tensoring with a commutative associative algebra
T = tensor_ternary(fx.get("F2"), fx.get("unital2"))
print(T.tensor[0, 0, 0], T.tensor[0, 0, 1])

# %%
# the graded algebra A + uA + u^2 A and the map l_u
t = tilde(fx.get("F2"))
print("Der(tilde):", invariant_space(t.algebra, K.DER).projected.dim,
      "ZDer(tilde):", invariant_space(t.algebra, K.ZDER).projected.dim)
print(l_u_embed(t, [[1]]))

# %%
# kernel of phi inside the tensor cube, and its symmetric / antisymmetric parts
for n in range(1, 5):
    c = kerphi_split(TernaryAlgebra.zero(QQ, n))
    print(n, c.sym_plus.dim, c.sym_minus.dim)
