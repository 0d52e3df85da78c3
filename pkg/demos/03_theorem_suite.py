# %% [markdown]
# Running the theorem checks
#
# Each check reports pass, fail or skipped (hypotheses not met); skipped is
# never counted as a failure.

# %%
import numpy as np

from ternary_jordan import fixtures as fx
from ternary_jordan.linalg import QQ, Subspace
from ternary_jordan.theorems import CheckId, Options, idempotent_decomposition, verify_all

np.set_printoptions(formatter={"object": str})

# %%
for name in fx.TERNARY:
    A = fx.get(name)
    o = Options(allow_char_3=True, allow_invalid=name in fx.INVALID)
    st = [r.status for r in verify_all(A, options=o)]
    print(f"{name:<12} pass={st.count('pass'):>2} skipped={st.count('skipped'):>2} "
          f"fail={st.count('fail')}")

# %%
# a single report in full
r = verify_all(fx.get("F2"), [CheckId.T5_3])[0]
print(r.status, r.dimensions)
for s in r.subchecks:
    print("  ", s["status"], s["name"])

# %%
# direct sum decompositions correspond to idempotents of the centroid
A = fx.get("F2+F2")
res = idempotent_decomposition(A, "to_idempotent",
                               (Subspace.span(QQ, 2, [[1, 0]]), Subspace.span(QQ, 2, [[0, 1]])))
print(res.psi, res.involution, sep="\n")
back = idempotent_decomposition(A, "to_decomposition", res.psi)
print(back.image.matrix(), back.kernel.matrix(), sep="\n")
