"""Ternary and binary algebras given by structure constants.

Coordinates: a vector is a length-n sequence of field scalars, and a linear
map is an n x n matrix ``f`` with ``f[a, b]`` the coefficient of ``e_a`` in
``f(e_b)``.  Flattening a map to F^{n^2} is row-major, index ``a*n + b``.

A ternary structure tensor ``T`` has shape (n, n, n, n) with ``T[i, j, k, l]``
the coefficient of ``e_l`` in ``[[e_i, e_j, e_k]]``.  Only the entries with
``i <= j <= k`` are stored; the dense tensor is derived on first use.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

import numpy as np

from .errors import (AmbientMismatch, DimensionMismatch, IndexOutOfRange,
                     NotAnIdeal, SymmetryConflict)
from .linalg import FieldSpec, Subspace, kernel_of_rows, QQ


def multisets(n: int, k: int = 3):
    return itertools.combinations_with_replacement(range(n), k)


def _clean_vector(field: FieldSpec, n: int, value) -> tuple:
    """Accept a dense sequence or a sparse ``{index: scalar}`` mapping."""
    out = [field.zero] * n
    if isinstance(value, Mapping):
        for l, v in value.items():
            if not 0 <= l < n:
                raise IndexOutOfRange(f"coordinate {l} outside 0..{n - 1}")
            out[l] = field(v)
    else:
        value = list(value)
        if len(value) != n:
            raise DimensionMismatch(f"vector of length {len(value)} in dim {n}")
        out = [field(v) for v in value]
    return tuple(out)


def _vec(field: FieldSpec, n: int, x) -> np.ndarray:
    x = np.asarray(x, dtype=object)
    if x.shape != (n,):
        raise DimensionMismatch(f"vector of shape {x.shape} in dim {n}")
    return x


@dataclass(frozen=True)
class TernaryAlgebra:
    """A totally symmetric trilinear product on F^n."""

    field: FieldSpec
    dim: int
    products: tuple = ()
    labels: tuple | None = dc_field(default=None, compare=False)

    @classmethod
    def from_products(cls, field: FieldSpec, dim: int, products, labels=None) -> "TernaryAlgebra":
        """Build from ``{(i, j, k): value}``; each key stands for its whole orbit.

        Two keys in one orbit must carry the same value.
        """
        items = products.items() if isinstance(products, Mapping) else products
        table = {}
        for args, value in items:
            args = tuple(args)
            if len(args) != 3:
                raise DimensionMismatch(f"ternary product needs 3 arguments, got {args}")
            for a in args:
                if not 0 <= a < dim:
                    raise IndexOutOfRange(f"basis index {a} outside 0..{dim - 1}")
            key = tuple(sorted(args))
            vec = _clean_vector(field, dim, value)
            if key in table and table[key] != vec:
                raise SymmetryConflict(f"conflicting values for permutations of {key}")
            table[key] = vec
        canon = tuple(sorted((k, v) for k, v in table.items() if any(x != 0 for x in v)))
        return cls(field, dim, canon, tuple(labels) if labels is not None else None)

    @classmethod
    def from_tensor(cls, field: FieldSpec, T, labels=None) -> "TernaryAlgebra":
        T = np.asarray(T, dtype=object)
        n = T.shape[0]
        if T.shape != (n, n, n, n):
            raise DimensionMismatch(f"structure tensor of shape {T.shape}")
        T = field.reduce(T)
        for i, j, k in itertools.product(range(n), repeat=3):
            key = tuple(sorted((i, j, k)))
            if any(T[i, j, k, l] != T[key + (l,)] for l in range(n)):
                raise SymmetryConflict(f"tensor not symmetric at {(i, j, k)}")
        return cls.from_products(field, n, {key: T[key] for key in multisets(n)}, labels)

    @classmethod
    def zero(cls, field: FieldSpec, dim: int) -> "TernaryAlgebra":
        return cls(field, dim, ())

    @cached_property
    def tensor(self) -> np.ndarray:
        n = self.dim
        T = self.field.zeros((n, n, n, n))
        for key, vec in self.products:
            for perm in set(itertools.permutations(key)):
                T[perm] = np.array(vec, dtype=object)
        T.setflags(write=False)
        return T

    def product(self, i: int, j: int, k: int) -> np.ndarray:
        return self.tensor[i, j, k].copy()

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def name(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i}"

    def __repr__(self):
        return f"TernaryAlgebra({self.field}, dim={self.dim}, {len(self.products)} products)"


@dataclass(frozen=True)
class BinaryAlgebra:
    """A bilinear product on F^n, stored as the full table ``(i, j) -> e_i e_j``."""

    field: FieldSpec
    dim: int
    products: tuple = ()
    labels: tuple | None = dc_field(default=None, compare=False)

    @classmethod
    def from_products(cls, field: FieldSpec, dim: int, products, commutative: bool = False,
                      labels=None) -> "BinaryAlgebra":
        """``commutative=True`` fills in ``(j, i)`` from ``(i, j)``."""
        items = products.items() if isinstance(products, Mapping) else products
        table = {}
        for args, value in items:
            args = tuple(args)
            if len(args) != 2:
                raise DimensionMismatch(f"binary product needs 2 arguments, got {args}")
            for a in args:
                if not 0 <= a < dim:
                    raise IndexOutOfRange(f"basis index {a} outside 0..{dim - 1}")
            vec = _clean_vector(field, dim, value)
            keys = {args, args[::-1]} if commutative else {args}
            for key in keys:
                if key in table and table[key] != vec:
                    raise SymmetryConflict(f"conflicting values for {key}")
                table[key] = vec
        canon = tuple(sorted((k, v) for k, v in table.items() if any(x != 0 for x in v)))
        return cls(field, dim, canon, tuple(labels) if labels is not None else None)

    @classmethod
    def from_tensor(cls, field: FieldSpec, B, labels=None) -> "BinaryAlgebra":
        B = np.asarray(B, dtype=object)
        n = B.shape[0]
        return cls.from_products(field, n, {(i, j): B[i, j] for i in range(n) for j in range(n)},
                                 labels=labels)

    @cached_property
    def tensor(self) -> np.ndarray:
        """``B[i, j, l]``: coefficient of ``e_l`` in ``e_i e_j``."""
        n = self.dim
        B = self.field.zeros((n, n, n))
        for key, vec in self.products:
            B[key] = np.array(vec, dtype=object)
        B.setflags(write=False)
        return B

    def mul(self, x, y) -> np.ndarray:
        n = self.dim
        x, y = _vec(self.field, n, x), _vec(self.field, n, y)
        if n == 0:
            return self.field.zeros(0)
        return self.field.reduce(np.einsum("i,j,ijl->l", x, y, self.tensor))

    def right_mul(self, y) -> np.ndarray:
        """Matrix of ``v -> v y``."""
        y = _vec(self.field, self.dim, y)
        return self.field.reduce(np.einsum("j,ijl->li", y, self.tensor))

    @cached_property
    def is_commutative(self) -> bool:
        B = self.tensor
        return bool(np.all(B == B.transpose(1, 0, 2)))

    @cached_property
    def associativity_witness(self):
        """First basis triple with ``(xy)z != x(yz)``, or None."""
        f, B = self.field, self.tensor
        if self.dim == 0:
            return None
        left = f.reduce(np.einsum("ijm,mkl->ijkl", B, B))
        right = f.reduce(np.einsum("jkm,iml->ijkl", B, B))
        bad = np.argwhere(left != right)
        return tuple(int(t) for t in bad[0][:3]) if len(bad) else None

    @property
    def is_associative(self) -> bool:
        return self.associativity_witness is None

    @cached_property
    def unit(self):
        """The two-sided identity element, or None."""
        f, n = self.field, self.dim
        # unknown u with u e_j = e_j and e_j u = e_j for all j
        rows, rhs = [], []
        B = self.tensor
        for j in range(n):
            for l in range(n):
                rows.append([B[a, j, l] for a in range(n)])
                rhs.append(f.one if l == j else f.zero)
                rows.append([B[j, a, l] for a in range(n)])
                rhs.append(f.one if l == j else f.zero)
        if n == 0:
            return None
        from .linalg import solve
        u = solve(np.array(rows, dtype=object), rhs, f)
        return None if u is None else tuple(u)

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def __repr__(self):
        return f"BinaryAlgebra({self.field}, dim={self.dim}, {len(self.products)} products)"


# ---------------------------------------------------------------------------
# products and operators
# ---------------------------------------------------------------------------

def triple_product(A: TernaryAlgebra, x, y, z) -> np.ndarray:
    n = A.dim
    x, y, z = (_vec(A.field, n, v) for v in (x, y, z))
    if n == 0:
        return A.field.zeros(0)
    return A.field.reduce(np.einsum("i,j,k,ijkl->l", x, y, z, A.tensor))


def right_mul(A: TernaryAlgebra, y, z) -> np.ndarray:
    """Matrix of ``v -> [[v, y, z]]``."""
    n = A.dim
    y, z = _vec(A.field, n, y), _vec(A.field, n, z)
    if n == 0:
        return A.field.zeros((0, 0))
    return A.field.reduce(np.einsum("j,k,ijkl->li", y, z, A.tensor))


def right_mul_basis(A: TernaryAlgebra, a: int, b: int) -> np.ndarray:
    return A.tensor[:, a, b, :].T.copy()


def inner_commutator(A: TernaryAlgebra, x1, x2, y1, y2) -> np.ndarray:
    """``R(x1,x2) R(y1,y2) - R(y1,y2) R(x1,x2)``."""
    P, Q = right_mul(A, x1, x2), right_mul(A, y1, y2)
    return A.field.reduce(P @ Q - Q @ P)


def apply_map(field: FieldSpec, f, x) -> np.ndarray:
    return field.reduce(np.asarray(f, dtype=object) @ np.asarray(x, dtype=object))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    symmetric: bool
    jordan: bool
    witnesses: list
    criterion: str = "operator"
    checks: dict = dc_field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return self.symmetric and self.jordan

    def __bool__(self):
        return self.valid

    def as_dict(self) -> dict:
        return {"valid": self.valid, "symmetric": self.symmetric, "jordan": self.jordan, "criterion": self.criterion,
                "checks": dict(sorted(self.checks.items())), "witnesses": self.witnesses}


_INT64_SAFE = 2 ** 62


def _integer_tensor(field: FieldSpec, T: np.ndarray):
    """An integer tensor proportional to ``T`` and its scale factor.

    The Jordan condition is homogeneous of degree 3 in the structure
    constants, so it may be tested on ``L * T`` for any nonzero ``L``.
    """
    if field.p:
        return np.vectorize(int, otypes=[object])(T) if T.size else T, 1
    L = 1
    for v in T.flat:
        L = L * v.denominator // math.gcd(L, v.denominator)
    return np.vectorize(lambda v: int(v * L), otypes=[object])(T) if T.size else T, L


def _compact(field, arr):
    """Switch to int64 when every intermediate of the Jordan scan fits."""
    n = arr.shape[0]
    if field.p:
        bound = n ** 3 * 4 * field.p ** 3
    else:
        m = max((abs(v) for v in arr.flat), default=0)
        bound = 6 * n ** 3 * m ** 3 + 1
    if bound < _INT64_SAFE:
        return arr.astype(np.int64)
    return arr


def jordan_commutators(field: FieldSpec, T: np.ndarray):
    """All commutators ``[R_p, R_q]`` for multiset pairs ``p < q``.

    Returns ``(pairs, D)`` with ``D[t]`` the (integer-scaled) commutator for
    ``pairs[t]``.  ``R(a,b)`` is bilinear and symmetric in ``(a, b)``, so these
    span every commutator of right multiplications.
    """
    n = T.shape[0]
    R = np.array([T[:, a, b, :].T for a, b in multisets(n, 2)], dtype=T.dtype)
    keys = list(multisets(n, 2))
    pairs = list(itertools.combinations(range(len(keys)), 2))
    if not pairs:
        return [], np.zeros((0, n, n), dtype=T.dtype)
    P = R[[p for p, _ in pairs]]
    Q = R[[q for _, q in pairs]]
    D = np.einsum("tab,tbc->tac", P, Q) - np.einsum("tab,tbc->tac", Q, P)
    if field.p:
        D = D % field.p
    return [(keys[p], keys[q]) for p, q in pairs], D


def _leibniz_defect(field: FieldSpec, T, D):
    """``D[[x,y,z]] - [[Dx,y,z]] - [[x,Dy,z]] - [[x,y,Dz]]`` for each map in ``D``."""
    lhs = np.einsum("ijkl,tml->tijkm", T, D)
    s1 = np.einsum("tai,ajkm->tijkm", D, T)
    rhs = s1 + s1.transpose(0, 2, 1, 3, 4) + s1.transpose(0, 2, 3, 1, 4)
    diff = lhs - rhs
    if field.p:
        diff = diff % field.p
    return diff


def validate_tensor(field: FieldSpec, T, max_witnesses: int = 8) -> ValidationReport:
    """Symmetry, then the commutator-is-a-derivation condition on basis elements."""
    T = field.reduce(np.asarray(T, dtype=object))
    n = T.shape[0]
    for perm in itertools.permutations(range(3)):
        if not np.all(T == T.transpose(perm + (3,))):
            bad = np.argwhere(T != T.transpose(perm + (3,)))[0]
            return ValidationReport(False, False, [{"kind": "symmetry",
                                                    "args": [int(t) for t in bad[:3]]}])
    if n == 0:
        return ValidationReport(True, True, [])
    Ti, scale = _integer_tensor(field, T)
    Ti = _compact(field, Ti)
    pairs, D = jordan_commutators(field, Ti)
    if not pairs:
        return ValidationReport(True, True, [])
    diff = _leibniz_defect(field, Ti, D)
    bad = np.argwhere(diff != 0)
    if not len(bad):
        return ValidationReport(True, True, [])
    witnesses, seen = [], set()
    for t, i, j, k, _ in bad:
        key = (int(t), tuple(sorted((int(i), int(j), int(k)))))
        if key in seen:
            continue
        seen.add(key)
        (x1, x2), (y1, y2) = pairs[t]
        Dm = field.reduce(np.array(D[t], dtype=object)) if field.p else \
            np.vectorize(lambda v: field(v) / field(scale) ** 2, otypes=[object])(D[t])
        u, v, w = key[1]
        lhs = apply_map(field, Dm, T[u, v, w])
        rhs = field.reduce(np.einsum("ai,ajkm->ijkm", Dm, T))
        rhs = field.reduce(rhs[u, v, w] + rhs[v, u, w] + rhs[w, u, v])
        witnesses.append({
            "kind": "jordan", "commutator": [[int(x1), int(x2)], [int(y1), int(y2)]],
            "args": [int(u), int(v), int(w)],
            "lhs": [field.format(c) for c in lhs], "rhs": [field.format(c) for c in rhs]})
        if len(witnesses) >= max_witnesses:
            break
    return ValidationReport(True, False, witnesses)


@lru_cache(maxsize=512)
def validate_ternary(A: TernaryAlgebra) -> ValidationReport:
    return validate_tensor(A.field, A.tensor)


def _jordan_identity_polarized(J: BinaryAlgebra):
    """Fully linearised ``(x^2 y) x = x^2 (y x)`` over basis multisets.

    Equivalent to the cubic identity when 6 is invertible in the field.  Both
    sides are cubic in the structure constants, so an integer multiple of the
    table is used.
    """
    f, n = J.field, J.dim
    if n == 0:
        return None
    B, _ = _integer_tensor(f, J.tensor)
    sq = np.einsum("pqa,aym->pqym", B, B)              # (e_p e_q) e_y
    U = np.einsum("pqya,arm->pqyrm", sq, B)            # ((e_p e_q) e_y) e_r
    V = np.einsum("pqa,yrb,abm->pqyrm", B, B, B)       # (e_p e_q)(e_y e_r)
    W = U - V
    axes = (0, 1, 3)
    total = sum(W.transpose(*_place(perm, axes)) for perm in itertools.permutations(axes))
    if f.p:
        total = np.vectorize(lambda v: int(v) % f.p, otypes=[object])(total)
    for a, b, c in multisets(n):
        for y in range(n):
            t = total[a, b, y, c]
            if any(v != 0 for v in t):
                return {"kind": "jordan_identity", "args": [int(a), int(b), int(c)], "y": int(y),
                        "defect": [str(int(v)) for v in t]}
    return None


def _place(perm, axes):
    order = list(range(5))
    for src, dst in zip(axes, perm):
        order[dst] = src
    return order


def validate_binary(J: BinaryAlgebra) -> ValidationReport:
    """Commutativity, then ``[R_x, R_y]`` is a derivation for basis ``x < y``.

    When the characteristic is 0 or at least 5 the polarised Jordan identity
    is also evaluated and recorded under ``checks``.
    """
    f, n = J.field, J.dim
    B = J.tensor
    if not J.is_commutative:
        bad = np.argwhere(B != B.transpose(1, 0, 2))[0]
        return ValidationReport(False, False, [{"kind": "commutativity",
                                                "args": [int(bad[0]), int(bad[1])]}],
                                criterion="operator")
    witnesses = []
    R = [f.reduce(B[:, x, :].T) for x in range(n)]
    for x, y in itertools.combinations(range(n), 2):
        D = f.reduce(R[x] @ R[y] - R[y] @ R[x])
        # D(u v) - D(u) v - u D(v)
        lhs = f.reduce(np.einsum("uvl,ml->uvm", B, D))
        du = np.einsum("au,avm->uvm", D, B)
        rhs = du + np.einsum("av,uam->uvm", D, B)
        diff = f.reduce(lhs - rhs)
        bad = np.argwhere(diff != 0)
        if len(bad):
            u, v = int(bad[0][0]), int(bad[0][1])
            witnesses.append({"kind": "operator", "commutator": [x, y], "args": [u, v],
                              "lhs": [f.format(c) for c in lhs[u, v]],
                              "rhs": [f.format(c) for c in f.reduce(rhs[u, v])]})
    report = ValidationReport(True, not witnesses, witnesses, criterion="operator")
    report.checks["operator"] = not witnesses
    if f.p not in (2, 3):
        w = _jordan_identity_polarized(J)
        report.checks["jordan_identity"] = w is None
        if w is not None:
            report.witnesses.append(w)
            report.jordan = False
    return report


# ---------------------------------------------------------------------------
# substructures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureSubspaces:
    derived: Subspace
    annihilator: Subspace

    @property
    def perfect(self) -> bool:
        return self.derived.is_full


@lru_cache(maxsize=512)
def structure_subspaces(A: TernaryAlgebra) -> StructureSubspaces:
    f, n, T = A.field, A.dim, A.tensor
    derived = Subspace.span(f, n, [T[key] for key in multisets(n)])
    rows = [T[:, i, j, l] for i, j in multisets(n, 2) for l in range(n)]
    return StructureSubspaces(derived, kernel_of_rows(f, n, rows))


def derived(A: TernaryAlgebra) -> Subspace:
    return structure_subspaces(A).derived


def annihilator(A: TernaryAlgebra) -> Subspace:
    return structure_subspaces(A).annihilator


def is_perfect(A: TernaryAlgebra) -> bool:
    return structure_subspaces(A).perfect


@dataclass(frozen=True)
class IdealReport:
    is_ideal: bool
    is_perfect_ideal: bool
    centralizer: Subspace
    witness: tuple | None = None


def _check_ambient(A, S: Subspace):
    if S.ambient_dim != A.dim or S.field != A.field:
        raise AmbientMismatch(f"subspace of {S.field}^{S.ambient_dim} in algebra of dim {A.dim}")


def ideal_witness(A: TernaryAlgebra, S: Subspace):
    """``(s, i, j)`` with ``[[s_basis, e_i, e_j]]`` outside ``S``, or None."""
    _check_ambient(A, S)
    f, T = A.field, A.tensor
    for idx, s in enumerate(S.vectors()):
        img = f.reduce(np.einsum("a,aijl->ijl", s, T)) if A.dim else None
        for i, j in multisets(A.dim, 2):
            if not S.contains(img[i, j]):
                return (idx, i, j)
    return None


def is_ideal(A: TernaryAlgebra, S: Subspace) -> bool:
    return ideal_witness(A, S) is None


def centralizer(A: TernaryAlgebra, S: Subspace) -> Subspace:
    """``{x : [[x, y, z]] = 0 for y in S, z in A}``."""
    _check_ambient(A, S)
    f, n, T = A.field, A.dim, A.tensor
    rows = []
    for s in S.vectors():
        M = f.reduce(np.einsum("b,abkl->akl", s, T))
        for k in range(n):
            for l in range(n):
                rows.append(M[:, k, l])
    return kernel_of_rows(f, n, rows)


def products_span(A: TernaryAlgebra, S: Subspace) -> Subspace:
    """Span of ``[[s, s', s'']]`` over basis triples of ``S``."""
    vs = S.vectors()
    out = [triple_product(A, vs[a], vs[b], vs[c]) for a, b, c in multisets(len(vs))]
    return Subspace.span(A.field, A.dim, out)


def ideal_tools(A: TernaryAlgebra, S: Subspace) -> IdealReport:
    w = ideal_witness(A, S)
    perfect = w is None and products_span(A, S) == S
    return IdealReport(w is None, perfect, centralizer(A, S), w)


def ideal_generated(A: TernaryAlgebra, vectors) -> Subspace:
    """Smallest ideal containing the given vectors."""
    f, n, T = A.field, A.dim, A.tensor
    S = Subspace.span(f, n, vectors)
    while True:
        new = list(S.basis)
        for s in S.vectors():
            img = f.reduce(np.einsum("a,aijl->ijl", s, T))
            new.extend(img[i, j] for i, j in multisets(n, 2))
        S2 = Subspace.span(f, n, new)
        if S2 == S:
            return S
        S = S2


# ---------------------------------------------------------------------------
# new algebras from old
# ---------------------------------------------------------------------------

def direct_sum(A: TernaryAlgebra, B: TernaryAlgebra):
    """``(A + B, (iota_A, iota_B))`` with the embeddings as matrices."""
    if A.field != B.field:
        raise AmbientMismatch(f"fields {A.field} and {B.field}")
    f, na, nb = A.field, A.dim, B.dim
    prods = {}
    for key, vec in A.products:
        prods[key] = tuple(vec) + (f.zero,) * nb
    for key, vec in B.products:
        prods[tuple(k + na for k in key)] = (f.zero,) * na + tuple(vec)
    labels = None
    if A.labels or B.labels:
        labels = [f"{A.name(i)}_1" for i in range(na)] + [f"{B.name(i)}_2" for i in range(nb)]
    S = TernaryAlgebra.from_products(f, na + nb, prods, labels)
    iota_a = f.zeros((na + nb, na))
    iota_b = f.zeros((na + nb, nb))
    for i in range(na):
        iota_a[i, i] = f.one
    for i in range(nb):
        iota_b[na + i, i] = f.one
    return S, (iota_a, iota_b)


def block_embed(field: FieldSpec, f, g) -> np.ndarray:
    """``diag(f, g)``."""
    a, b = f.shape[0], g.shape[0]
    M = field.zeros((a + b, a + b))
    M[:a, :a] = f
    M[a:, a:] = g
    return M


def projection_along(field: FieldSpec, n: int, I: Subspace, indices: Sequence[int]) -> np.ndarray:
    """Coordinates modulo ``I`` in the basis ``e_c, c in indices``."""
    from .linalg import inverse
    cols = [np.array(v, dtype=object) for v in I.basis]
    eye = field.eye(n)
    cols += [eye[c] for c in indices]
    M = np.array(cols, dtype=object).T if cols else field.zeros((n, 0))
    Minv = inverse(M, field)
    return Minv[I.dim:, :]


def quotient(A: TernaryAlgebra, I: Subspace):
    """``(A / I, pi)``; coordinates of ``A / I`` are the greedy complement of ``I``."""
    w = ideal_witness(A, I)
    if w is not None:
        raise NotAnIdeal("subspace is not an ideal", w)
    f, n = A.field, A.dim
    idx = I.complement_indices()
    pi = projection_along(f, n, I, idx)
    m = len(idx)
    prods = {}
    for a, b, c in multisets(m):
        prods[(a, b, c)] = apply_map(f, pi, A.tensor[idx[a], idx[b], idx[c]])
    labels = [A.name(i) for i in idx] if A.labels else None
    return TernaryAlgebra.from_products(f, m, prods, labels), pi


def homomorphism_witness(A1: TernaryAlgebra, A2: TernaryAlgebra, pi):
    """Basis triple where ``pi [[x,y,z]] != [[pi x, pi y, pi z]]``, or None."""
    f = A1.field
    pi = np.asarray(pi, dtype=object)
    if pi.shape != (A2.dim, A1.dim):
        raise DimensionMismatch(f"map of shape {pi.shape} from dim {A1.dim} to {A2.dim}")
    if A1.dim == 0:
        return None
    lhs = f.reduce(np.einsum("ml,ijkl->ijkm", pi, A1.tensor))
    rhs = f.reduce(np.einsum("ai,bj,ck,abcm->ijkm", pi, pi, pi, A2.tensor)) if A2.dim else lhs
    bad = np.argwhere(lhs != rhs)
    return tuple(int(t) for t in bad[0][:3]) if len(bad) else None


# ---------------------------------------------------------------------------
# forms and the multiplication algebra
# ---------------------------------------------------------------------------

def invariant_form_witness(A: TernaryAlgebra, G):
    """``(x, y, z, w)`` with ``G([[x,y,z]], w) != G(x, [[w,y,z]])``, or None."""
    f, n = A.field, A.dim
    G = np.asarray(G, dtype=object)
    if G.shape != (n, n):
        raise DimensionMismatch(f"Gram matrix of shape {G.shape} in dim {n}")
    if n == 0:
        return None
    lhs = f.reduce(np.einsum("xyzl,lw->xyzw", A.tensor, G))
    rhs = f.reduce(np.einsum("xl,wyzl->xyzw", G, A.tensor))
    bad = np.argwhere(lhs != rhs)
    return tuple(int(t) for t in bad[0]) if len(bad) else None


def invariant_form_check(A: TernaryAlgebra, G) -> bool:
    return invariant_form_witness(A, G) is None


def invariant_forms(A: TernaryAlgebra) -> Subspace:
    """All invariant bilinear forms, as flattened Gram matrices in F^{n^2}."""
    f, n, T = A.field, A.dim, A.tensor
    rows = []
    for x, y, z, w in itertools.product(range(n), repeat=4):
        row = {}
        for l in range(n):
            if T[x, y, z, l]:
                row[l * n + w] = row.get(l * n + w, 0) + T[x, y, z, l]
            if T[w, y, z, l]:
                row[x * n + l] = row.get(x * n + l, 0) - T[w, y, z, l]
        row = {k: v for k, v in row.items() if f(v) != 0}
        if row:
            rows.append(row)
    return kernel_of_rows(f, n * n, rows)


@dataclass(frozen=True)
class MultAlgebra:
    space: Subspace
    trace: tuple

    @property
    def dim(self) -> int:
        return self.space.dim


@lru_cache(maxsize=256)
def mult_algebra(A: TernaryAlgebra) -> MultAlgebra:
    """Associative span of the right multiplications ``R(e_i, e_j)``.

    ``trace`` lists the dimension after each closure round.
    """
    f, n = A.field, A.dim
    gens = [right_mul_basis(A, a, b).reshape(-1) for a, b in multisets(n, 2)]
    S = Subspace.span(f, n * n, gens)
    trace = [S.dim]
    while True:
        mats = [np.array(v, dtype=object).reshape(n, n) for v in S.basis]
        new = list(S.basis)
        for P in mats:
            for Q in mats:
                new.append(f.reduce(P @ Q).reshape(-1))
        S2 = Subspace.span(f, n * n, new)
        trace.append(S2.dim)
        if S2 == S:
            return MultAlgebra(S, tuple(trace))
        S = S2


# ---------------------------------------------------------------------------
# random algebras
# ---------------------------------------------------------------------------

def random_ternary(field: FieldSpec, n: int, rng: random.Random, density: float = 1.0,
                   values: Sequence | None = None) -> TernaryAlgebra:
    """A random symmetric tensor: each canonical entry drawn independently."""
    if values is None:
        values = list(field.elements()) if field.p else [-2, -1, 0, 1, 2]
    prods = {}
    for key in multisets(n):
        vec = [field(rng.choice(values)) if rng.random() < density else field.zero
               for _ in range(n)]
        prods[key] = vec
    return TernaryAlgebra.from_products(field, n, prods)
