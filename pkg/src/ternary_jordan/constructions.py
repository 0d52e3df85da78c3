"""Recipes that build new algebras (and maps between them) from old ones."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import (BinaryAlgebra, TernaryAlgebra, homomorphism_witness, multisets,
                      right_mul, structure_subspaces, validate_binary, validate_ternary,
                      apply_map)
from .errors import (AlphaNotVanishing, CharacteristicNotSupported, ConditionCheckInfeasible,
                     DimensionMismatch, IdentityViolated, KernelNotInvariant, NotADerivation,
                     NotCommutativeAssociative, NotEpimorphism, NotJordan,
                     SliceConditionFails)
from .linalg import FieldSpec, Subspace, kernel, rank, solve
from .spaces import complete_fprime, der_witness, derived_frame


def _covector(field: FieldSpec, n: int, alpha) -> np.ndarray:
    alpha = field.array(list(alpha))
    if alpha.shape != (n,):
        raise DimensionMismatch(f"covector of length {alpha.shape[0]} in dim {n}")
    return alpha


def j_alpha(J: BinaryAlgebra, alpha, strict: bool = True) -> TernaryAlgebra:
    """``[[x,y,z]] = a(x) y.z + a(y) z.x + a(z) x.y`` for a covector killing ``J.J``.

    With ``strict`` the Jordan property of ``J`` and of the output are
    enforced; ``strict=False`` builds the tensor regardless.
    """
    F, n, B = J.field, J.dim, J.tensor
    a = _covector(F, n, alpha)
    if not J.is_commutative:
        raise NotCommutativeAssociative("binary algebra is not commutative")
    for i, j in multisets(n, 2):
        if F.reduce(a @ B[i, j]) != 0:
            raise AlphaNotVanishing("covector does not vanish on J.J", (i, j))
    if strict:
        rep = validate_binary(J)
        if not rep.valid:
            raise NotJordan("binary algebra is not Jordan", rep.witnesses[:1])
    T = (np.einsum("i,jkl->ijkl", a, B) + np.einsum("j,kil->ijkl", a, B)
         + np.einsum("k,ijl->ijkl", a, B)) if n else F.zeros((0, 0, 0, 0))
    A = TernaryAlgebra.from_tensor(F, T, J.labels)
    if strict:
        rep = validate_ternary(A)
        if not rep.valid:
            raise IdentityViolated("j_alpha output is not ternary Jordan", rep.witnesses[:1])
    return A


def ternary_slice(A: TernaryAlgebra, z0, strict: bool = True) -> BinaryAlgebra:
    """``x.y = [[x, y, z0]]``, defined when ``R(z0, z0) = 0``."""
    F, n = A.field, A.dim
    z0 = F.array(list(z0))
    if z0.shape != (n,):
        raise DimensionMismatch(f"vector of length {z0.shape[0]} in dim {n}")
    R = right_mul(A, z0, z0)
    for x in range(n):
        if any(v != 0 for v in R[:, x]):
            raise SliceConditionFails("[[x, z0, z0]] != 0", x)
    B = F.reduce(np.einsum("ijkl,k->ijl", A.tensor, z0)) if n else F.zeros((0, 0, 0))
    J = BinaryAlgebra.from_tensor(F, B, A.labels)
    if any(v != 0 for v in J.right_mul(z0).reshape(-1)):
        raise IdentityViolated("z0 is not central in the slice")
    if strict and validate_ternary(A).valid and not validate_binary(J).valid:
        raise IdentityViolated("slice of a ternary Jordan algebra is not Jordan")
    return J


@dataclass(frozen=True)
class HomBinaryResult:
    algebra: BinaryAlgebra
    mode: str
    condition: bool
    method: str
    witness: object = None
    jordan: bool | None = None


def _derivation_witness_binary(C: BinaryAlgebra, h):
    F, B = C.field, C.tensor
    lhs = F.reduce(np.einsum("ijl,ml->ijm", B, h))
    rhs = F.reduce(np.einsum("ai,ajm->ijm", h, B) + np.einsum("aj,iam->ijm", h, B))
    bad = np.argwhere(lhs != rhs)
    return tuple(int(t) for t in bad[0][:2]) if len(bad) else None


def _condition_32_polar(C: BinaryAlgebra, h):
    """Fully linearised ``h(b a^2 h^2(a)) = 0`` on basis multisets ``a`` and basis ``b``."""
    F, n = C.field, C.dim
    h2 = F.reduce(h @ h)
    eye = F.eye(n)
    for a1, a2, a3 in multisets(n):
        for b in range(n):
            total = F.zeros(n)
            for p, q, r in set(itertools.permutations((a1, a2, a3))):
                v = C.mul(C.mul(C.mul(eye[b], eye[p]), eye[q]), h2[:, r])
                total = total + apply_map(F, h, v)
            if any(x != 0 for x in F.reduce(total)):
                return (a1, a2, a3, b)
    return None


def _condition_32_exhaustive(C: BinaryAlgebra, h):
    F, n = C.field, C.dim
    h2 = F.reduce(h @ h)
    for a in itertools.product(F.elements(), repeat=n):
        a = np.array(a, dtype=object)
        a2h = C.mul(C.mul(a, a), apply_map(F, h2, a))
        for b in itertools.product(F.elements(), repeat=n):
            v = apply_map(F, h, C.mul(np.array(b, dtype=object), a2h))
            if any(x != 0 for x in v):
                return (tuple(int(x) for x in a), tuple(b))
    return None


def hom_binary(C: BinaryAlgebra, h, mode: str, strict: bool = True,
               max_enum: int = 10 ** 6) -> HomBinaryResult:
    """``a.b = a h(b) + b h(a)`` on a commutative associative algebra.

    ``mode='delta'`` needs ``h`` to be a derivation and tests
    ``h(b a^2 h^2(a)) = 0``; ``mode='omega'`` tests
    ``(a - h(a))(b - h(b)) = 0``.  The bilinear condition is checked on basis
    pairs.  The cubic one is polarised when the characteristic is 0 or at
    least 5, enumerated over all ``(a, b)`` when ``|F|^(2n) <= max_enum``, and
    refused otherwise.  ``strict=False`` tolerates a non-associative ``C``.
    """
    F, n = C.field, C.dim
    h = F.array(h)
    if h.shape != (n, n):
        raise DimensionMismatch(f"map of shape {h.shape} in dim {n}")
    if mode not in ("delta", "omega"):
        raise ValueError(f"mode must be 'delta' or 'omega', not {mode!r}")
    if F.p == 2:
        raise CharacteristicNotSupported("characteristic 2")
    if not C.is_commutative:
        raise NotCommutativeAssociative("not commutative")
    if strict and not C.is_associative:
        raise NotCommutativeAssociative("not associative", C.associativity_witness)
    B = C.tensor
    if mode == "delta":
        w = _derivation_witness_binary(C, h)
        if w is not None:
            raise NotADerivation("h(ab) != h(a)b + a h(b)", w)
    # e_i . e_j = e_i h(e_j) + e_j h(e_i)
    P = F.reduce(np.einsum("iml,mj->ijl", B, h) + np.einsum("jml,mi->ijl", B, h)) if n else B
    out = BinaryAlgebra.from_tensor(F, P, C.labels)

    if mode == "omega":
        g = F.reduce(F.eye(n) - h)
        witness = None
        for i, j in multisets(n, 2):
            if any(x != 0 for x in C.mul(g[:, i], g[:, j])):
                witness = (i, j)
                break
        method = "basis-pairs"
    elif F.p == 0 or F.p >= 5:
        witness = _condition_32_polar(C, h)
        method = "polarization"
    elif F.p ** (2 * n) <= max_enum:
        witness = _condition_32_exhaustive(C, h)
        method = "exhaustive"
    else:
        raise ConditionCheckInfeasible(f"|F|^(2n) = {F.p}^{2 * n} exceeds {max_enum}")
    jordan = validate_binary(out).valid
    holds = witness is None
    if strict and holds != jordan:
        raise IdentityViolated(f"condition {'holds' if holds else 'fails'} but Jordan is {jordan}")
    return HomBinaryResult(out, mode, holds, method, witness, jordan)


def tensor_ternary(A: TernaryAlgebra, C: BinaryAlgebra, strict: bool = True) -> TernaryAlgebra:
    """``[[x(a), y(b), z(c)]] = [[x,y,z]] (abc)`` on coordinates ``i*m + r``."""
    F = A.field
    if C.field != F:
        raise DimensionMismatch(f"fields {F} and {C.field}")
    if not C.is_commutative or not C.is_associative:
        raise NotCommutativeAssociative("second factor must be commutative associative",
                                        C.associativity_witness)
    n, m = A.dim, C.dim
    B = C.tensor
    if n == 0 or m == 0:
        return TernaryAlgebra.zero(F, n * m)
    abc = np.einsum("rsv,vqw->rsqw", B, B)
    T = np.einsum("ijkl,rsqw->irjskqlw", A.tensor, abc).reshape(n * m, n * m, n * m, n * m)
    labels = None
    if A.labels or C.labels:
        labels = [f"{A.name(i)}*{C.labels[r] if C.labels else r}" for i in range(n) for r in range(m)]
    out = TernaryAlgebra.from_tensor(F, T, labels)
    if strict and structure_subspaces(A).perfect and C.is_unital \
            and not structure_subspaces(out).perfect:
        raise IdentityViolated("perfect times unital should be perfect")
    return out


@dataclass(frozen=True)
class TildeAlgebra:
    """``A t + A t^2 + A t^3`` (coordinates in that block order)."""

    base: TernaryAlgebra
    algebra: TernaryAlgebra
    derived_block: Subspace
    u_block: Subspace

    @property
    def n(self) -> int:
        return self.base.dim

    @property
    def grading(self) -> dict:
        n = self.n
        return {"t": (0, n), "t2": (n, 2 * n), "t3": (2 * n, 3 * n)}


def _embed(field, N, offset, vectors):
    out = []
    for v in vectors:
        w = [field.zero] * N
        w[offset:offset + len(v)] = list(v)
        out.append(w)
    return Subspace.span(field, N, out)


def tilde(A: TernaryAlgebra) -> TildeAlgebra:
    F, n = A.field, A.dim
    prods = {}
    for key, vec in A.products:
        prods[key] = (F.zero,) * (2 * n) + tuple(vec)
    labels = [f"{A.name(i)}{s}" for s in ("t", "t2", "t3") for i in range(n)]
    T = TernaryAlgebra.from_products(F, 3 * n, prods, labels)
    D = structure_subspaces(A).derived
    eye = F.eye(n)
    U = [eye[c] for c in D.complement_indices()]
    return TildeAlgebra(A, T, _embed(F, 3 * n, 2 * n, D.basis), _embed(F, 3 * n, 2 * n, U))


def l_u_embed(T: TildeAlgebra, f) -> np.ndarray:
    """``f`` on the t-block, 0 on t^2, ``f' P`` on t^3 with P the projection onto the derived part."""
    A = T.base
    F, n = A.field, A.dim
    f = F.array(f)
    fp = complete_fprime(A, f)
    L = F.zeros((3 * n, 3 * n))
    if n == 0:
        return L
    D, _, M, Minv = derived_frame(A)
    r = D.dim
    P = F.reduce(M[:, :r] @ Minv[:r, :])
    L[:n, :n] = f
    L[2 * n:, 2 * n:] = F.reduce(fp @ P)
    w = der_witness(T.algebra, L)
    if w is not None:
        raise IdentityViolated("l_u(f) is not a derivation", w)
    return L


@dataclass(frozen=True)
class TensorCube:
    """Subspaces of F^{n^3}, coordinate ``(i, j, k) -> i*n*n + j*n + k``."""

    n: int
    phi: np.ndarray
    kernel_phi: Subspace
    sym_plus: Subspace
    sym_minus: Subspace


def cube_index(n: int, i: int, j: int, k: int) -> int:
    return i * n * n + j * n + k


def phi_matrix(A: TernaryAlgebra) -> np.ndarray:
    """The ``n x n^3`` matrix of ``x (x) y (x) z -> [[x, y, z]]``."""
    n = A.dim
    return A.tensor.reshape(n ** 3, n).T.copy()


def kerphi_split(A: TernaryAlgebra) -> TensorCube:
    F, n = A.field, A.dim
    N = n ** 3
    phi = phi_matrix(A)
    K = kernel(phi, F, N)
    plus, minus = [], []
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        for k in range(n):
            v = [F.zero] * N
            v[cube_index(n, i, j, k)] += F.one
            v[cube_index(n, j, i, k)] += F.one
            plus.append(v)
            if i != j:
                w = [F.zero] * N
                w[cube_index(n, i, j, k)] = F.one
                w[cube_index(n, j, i, k)] = F(-1)
                minus.append(w)
    Sp, Sm = Subspace.span(F, N, plus), Subspace.span(F, N, minus)
    if Sp.dim != n * n * (n + 1) // 2 or Sm.dim != n * n * (n - 1) // 2 or (Sp + Sm).dim != N:
        raise IdentityViolated("symmetric split has the wrong dimensions")
    return TensorCube(n, phi, K, Sp, Sm)


def d_star(field: FieldSpec, D) -> np.ndarray:
    """``D x I x I + I x D x I + I x I x D`` on F^{n^3}."""
    D = field.array(D)
    n = D.shape[0]
    if D.shape != (n, n):
        raise DimensionMismatch(f"map of shape {D.shape}")
    I = field.eye(n)
    return field.reduce(np.kron(np.kron(D, I), I) + np.kron(np.kron(I, D), I)
                        + np.kron(np.kron(I, I), D))


def right_inverse(field: FieldSpec, pi) -> np.ndarray:
    m, n = pi.shape
    cols = []
    eye = field.eye(m)
    for t in range(m):
        x = solve(pi, eye[t], field)
        if x is None:
            raise NotEpimorphism("map is not surjective")
        cols.append(x)
    return np.array(cols, dtype=object).T if cols else field.zeros((n, 0))


def check_epimorphism(A1: TernaryAlgebra, A2: TernaryAlgebra, pi):
    F = A1.field
    pi = F.array(pi)
    if pi.shape != (A2.dim, A1.dim):
        raise DimensionMismatch(f"map of shape {pi.shape} from dim {A1.dim} to {A2.dim}")
    if rank(pi, F) != A2.dim:
        raise NotEpimorphism(f"rank {rank(pi, F)} < {A2.dim}")
    w = homomorphism_witness(A1, A2, pi)
    if w is not None:
        raise NotEpimorphism(f"not an algebra map at basis triple {w}")
    return pi


def induced_endomorphism(pi, f, A1: TernaryAlgebra | None = None,
                         A2: TernaryAlgebra | None = None, field: FieldSpec | None = None):
    """The unique ``g`` with ``g pi = pi f``, given ``f(Ker pi) <= Ker pi``."""
    if A1 is not None:
        field = A1.field
        pi = check_epimorphism(A1, A2, pi)
    F = field
    pi, f = F.array(pi), F.array(f)
    m, n = pi.shape
    if f.shape != (n, n):
        raise DimensionMismatch(f"map of shape {f.shape} on dim {n}")
    if rank(pi, F) != m:
        raise NotEpimorphism("map is not surjective")
    K = kernel(pi, F, n)
    for t, v in enumerate(K.vectors()):
        if any(x != 0 for x in F.reduce(pi @ F.reduce(f @ v))):
            raise KernelNotInvariant("f moves Ker(pi) out of itself", t)
    sigma = right_inverse(F, pi)
    g = F.reduce(pi @ f @ sigma) if m else F.zeros((0, 0))
    if np.any(F.reduce(g @ pi - pi @ f) != 0):
        raise IdentityViolated("induced map does not intertwine")
    return g
