"""Derivation-type operator spaces as kernels of linear constraint systems.

Unknowns are matrix entries.  A single map ``f`` occupies ``n*n`` unknowns
(row-major), a pair ``(f, f')`` occupies ``2n^2`` and a quadruple
``(f1, f2, f3, f')`` occupies ``4n^2``, in that block order.

Because the product is totally symmetric, most systems only need basis
triples ``i <= j <= k``.  The quadruple system of generalized derivations is
the exception: its three maps sit in distinguishable slots, so every ordered
triple is imposed.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (TernaryAlgebra, multisets, structure_subspaces, validate_ternary)
from .errors import (CharacteristicNotSupported, IdentityViolated, InvalidAlgebra,
                     NotAQuasiderivation, NotInDelta, NotInQuasicentroid, DimensionMismatch)
from .linalg import FieldSpec, Subspace, exact_einsum, kernel_of_rows, inverse


class SpaceKind(str, enum.Enum):
    DER = "Der"
    QDER = "QDer"
    GDER = "GDer"
    ZDER = "ZDer"
    CENTROID = "Centroid"
    QCENTROID = "QCentroid"
    DELTA = "Delta"

    @classmethod
    def parse(cls, text: str) -> "SpaceKind":
        for k in cls:
            if text in (k.value, k.name):
                return k
        aliases = {"Gamma": cls.CENTROID, "QGamma": cls.QCENTROID}
        if text in aliases:
            return aliases[text]
        raise ValueError(f"unknown space kind {text!r}")


BLOCKS = {SpaceKind.QDER: 2, SpaceKind.GDER: 4, SpaceKind.DELTA: 4}


@dataclass(frozen=True)
class InvariantSpaceResult:
    kind: SpaceKind
    space: Subspace
    projected: Subspace

    @property
    def dim(self) -> int:
        """Dimension of the operator space (the projected one for pair/quadruple kinds)."""
        return self.projected.dim

    def maps(self) -> list:
        n2 = self.projected.ambient_dim
        n = int(round(n2 ** 0.5))
        return [np.array(v, dtype=object).reshape(n, n) for v in self.projected.basis]


def check_characteristic(field: FieldSpec, allow_char_3: bool = False):
    if field.p == 2:
        raise CharacteristicNotSupported("characteristic 2 is not supported")
    if field.p == 3 and not allow_char_3:
        raise CharacteristicNotSupported("characteristic 3 requires allow_char_3")


# ---------------------------------------------------------------------------
# constraint assembly
# ---------------------------------------------------------------------------

def _accumulate(row: dict, key: int, value):
    if value:
        row[key] = row.get(key, 0) + value


def _identity_rows(A: TernaryAlgebra, slots, triples, out=None):
    """Rows of ``sum_s sign_s [[.., f_s e_{t_s}, ..]] - f'[[e_i,e_j,e_k]] = 0``.

    ``slots`` is a list of ``(position, offset, sign)``; ``out`` is the offset
    of ``f'`` or None, in which case the right-hand side is omitted.
    """
    n, T, f = A.dim, A.tensor, A.field
    rows = []
    for t in triples:
        for m in range(n):
            row = {}
            for pos, off, sign in slots:
                others = list(t)
                b = t[pos]
                for a in range(n):
                    others[pos] = a
                    c = T[others[0], others[1], others[2], m]
                    if c:
                        _accumulate(row, off + a * n + b, sign * c)
            if out is not None:
                for l in range(n):
                    c = T[t[0], t[1], t[2], l]
                    if c:
                        _accumulate(row, out + m * n + l, -c)
            row = {k: v for k, v in row.items() if f(v) != 0}
            if row:
                rows.append(row)
    return rows


def _constraint_rows(A: TernaryAlgebra, kind: SpaceKind):
    n = A.dim
    N = n * n
    ms = list(multisets(n))
    leibniz = [(0, 0, 1), (1, 0, 1), (2, 0, 1)]
    if kind is SpaceKind.DER:
        return N, _identity_rows(A, leibniz, ms, out=0)
    if kind is SpaceKind.QDER:
        return 2 * N, _identity_rows(A, leibniz, ms, out=N)
    if kind in (SpaceKind.GDER, SpaceKind.DELTA):
        slots = [(0, 0, 1), (1, N, 1), (2, 2 * N, 1)]
        triples = list(itertools.product(range(n), repeat=3))
        return 4 * N, _identity_rows(A, slots, triples, out=3 * N)
    if kind is SpaceKind.CENTROID:
        # f[[x,y,z]] = [[fx,y,z]] for all x and y <= z; the other slots follow by symmetry
        triples = [(i, j, k) for i in range(n) for j, k in multisets(n, 2)]
        return N, _identity_rows(A, [(0, 0, 1)], triples, out=0)
    if kind is SpaceKind.QCENTROID:
        # [[fx,y,z]] = [[x,fy,z]] for x < y; the third slot follows by symmetry
        triples = [(i, j, k) for i, j in itertools.combinations(range(n), 2) for k in range(n)]
        return N, _identity_rows(A, [(0, 0, 1), (1, 0, -1)], triples)
    if kind is SpaceKind.ZDER:
        T = A.tensor
        rows = []
        # [[f e_b, e_i, e_j]] = 0: image inside the annihilator
        for b in range(n):
            for i, j in multisets(n, 2):
                for m in range(n):
                    row = {a * n + b: T[a, i, j, m] for a in range(n) if T[a, i, j, m]}
                    if row:
                        rows.append(row)
        # f vanishes on the derived subspace
        for d in structure_subspaces(A).derived.basis:
            for a in range(n):
                row = {a * n + b: d[b] for b in range(n) if d[b]}
                if row:
                    rows.append(row)
        return N, rows
    raise ValueError(kind)


def project_block(S: Subspace, n: int, block: int = 0) -> Subspace:
    N = n * n
    return Subspace.span(S.field, N, [r[block * N:(block + 1) * N] for r in S.basis])


@lru_cache(maxsize=1024)
def invariant_space(A: TernaryAlgebra, kind, allow_char_3: bool = False,
                    require_valid: bool = True) -> InvariantSpaceResult:
    """Solve the constraint system of ``kind`` on ``A``.

    ``require_valid=False`` skips the Jordan pre-check; the systems themselves
    only use the symmetry of the product.
    """
    kind = SpaceKind(kind)
    check_characteristic(A.field, allow_char_3)
    if require_valid:
        rep = validate_ternary(A)
        if not rep.valid:
            raise InvalidAlgebra("not a ternary Jordan algebra", )
    ncols, rows = _constraint_rows(A, kind)
    space = kernel_of_rows(A.field, ncols, rows)
    projected = project_block(space, A.dim) if kind in BLOCKS else space
    return InvariantSpaceResult(kind, space, projected)


def all_spaces(A: TernaryAlgebra, allow_char_3: bool = False, require_valid: bool = True) -> dict:
    return {k: invariant_space(A, k, allow_char_3, require_valid) for k in SpaceKind}


# ---------------------------------------------------------------------------
# direct membership tests (tensor identities, independent of the row assembly)
# ---------------------------------------------------------------------------

def _mat(A, f):
    f = np.asarray(f, dtype=object)
    if f.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"map of shape {f.shape} on algebra of dim {A.dim}")
    return f


def slot_terms(A: TernaryAlgebra, f1, f2=None, f3=None):
    """``[[f1 e_i, e_j, e_k]] + [[e_i, f2 e_j, e_k]] + [[e_i, e_j, f3 e_k]]`` as (n,n,n,n)."""
    T, F = A.tensor, A.field
    f2 = f1 if f2 is None else f2
    f3 = f1 if f3 is None else f3
    s = exact_einsum(F, "ai,ajkm->ijkm", _mat(A, f1), T)
    s = s + exact_einsum(F, "aj,iakm->ijkm", _mat(A, f2), T)
    s = s + exact_einsum(F, "ak,ijam->ijkm", _mat(A, f3), T)
    return F.reduce(s)


def out_term(A: TernaryAlgebra, g):
    """``g [[e_i, e_j, e_k]]`` as (n,n,n,n)."""
    return exact_einsum(A.field, "ijkl,ml->ijkm", A.tensor, _mat(A, g))


def _first_bad(diff):
    bad = np.argwhere(diff != 0)
    return tuple(int(t) for t in bad[0][:3]) if len(bad) else None


def delta_witness(A, f1, f2, f3, fp):
    if A.dim == 0:
        return None
    return _first_bad(A.field.reduce(slot_terms(A, f1, f2, f3) - out_term(A, fp)))


def qder_witness(A, f, fp):
    return delta_witness(A, f, f, f, fp)


def der_witness(A, D):
    return delta_witness(A, D, D, D, D)


def centroid_witness(A, f):
    if A.dim == 0:
        return None
    F, T = A.field, A.tensor
    s1 = F.reduce(np.einsum("ai,ajkm->ijkm", _mat(A, f), T))
    return _first_bad(F.reduce(s1 - out_term(A, f)))


def qcentroid_witness(A, f):
    if A.dim == 0:
        return None
    F, T = A.field, A.tensor
    s1 = F.reduce(np.einsum("ai,ajkm->ijkm", _mat(A, f), T))
    s2 = F.reduce(np.einsum("aj,iakm->ijkm", _mat(A, f), T))
    s3 = F.reduce(np.einsum("ak,ijam->ijkm", _mat(A, f), T))
    w = _first_bad(F.reduce(s1 - s2))
    return w if w is not None else _first_bad(F.reduce(s2 - s3))


def zder_witness(A, f):
    st = structure_subspaces(A)
    f = _mat(A, f)
    F = A.field
    for b in range(A.dim):
        if not st.annihilator.contains(F.reduce(f[:, b])):
            return ("image", b)
    for t, d in enumerate(st.derived.vectors()):
        if any(x != 0 for x in F.reduce(f @ d)):
            return ("derived", t)
    return None


def is_in_centroid(A, f) -> bool:
    return centroid_witness(A, f) is None


def is_in_qcentroid(A, f) -> bool:
    return qcentroid_witness(A, f) is None


def is_derivation(A, D) -> bool:
    return der_witness(A, D) is None


# ---------------------------------------------------------------------------
# splitting, completion and the quasicentroid product
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneralizedSplit:
    qder_part: np.ndarray
    fprime: np.ndarray
    qgamma_parts: tuple


def split_generalized(A: TernaryAlgebra, f1, f2, f3, fp, allow_char_3: bool = False) -> GeneralizedSplit:
    """``f1 = (f1+f2+f3)/3 + (2f1-f2-f3)/3`` with the pieces in QDer and the quasicentroid."""
    F = A.field
    if F.p in (2, 3):
        raise CharacteristicNotSupported("the splitting divides by 3")
    f1, f2, f3, fp = (F.reduce(_mat(A, g)) for g in (f1, f2, f3, fp))
    w = delta_witness(A, f1, f2, f3, fp)
    if w is not None:
        raise NotInDelta("quadruple fails the generalized derivation identity", w)
    third = F.inv(3)
    q = F.reduce((f1 + f2 + f3) * third)
    parts = tuple(F.reduce((2 * a - b - c) * third)
                  for a, b, c in ((f1, f2, f3), (f2, f1, f3), (f3, f1, f2)))
    w = qder_witness(A, q, fp)
    if w is not None:
        raise IdentityViolated("averaged part is not a quasiderivation", w)
    for g in parts:
        w = qcentroid_witness(A, g)
        if w is not None:
            raise IdentityViolated("difference part is not in the quasicentroid", w)
    if np.any(F.reduce(q + parts[0] - f1) != 0):
        raise IdentityViolated("parts do not re-sum to f1")
    return GeneralizedSplit(q, fp, parts)


def derived_frame(A: TernaryAlgebra):
    """Basis change ``M = [derived basis | e_c for c in U]`` and its inverse."""
    F, n = A.field, A.dim
    D = structure_subspaces(A).derived
    U = D.complement_indices()
    eye = F.eye(n)
    cols = [np.array(v, dtype=object) for v in D.basis] + [eye[c] for c in U]
    M = np.array(cols, dtype=object).T if n else F.zeros((0, 0))
    return D, U, M, (inverse(M, F) if n else M)


def complete_fprime(A: TernaryAlgebra, f):
    """The companion ``f'`` of a quasiderivation, fixed to vanish on the complement U.

    On the derived subspace ``f'`` is forced: it is solved from a spanning set
    of products, then every remaining product equation is checked, which also
    asserts that any two companions agree there.
    """
    F, n = A.field, A.dim
    f = F.reduce(_mat(A, f))
    if n == 0:
        return f
    D, U, M, Minv = derived_frame(A)
    r = D.dim
    if r == 0:
        return F.zeros((n, n))
    lhs = slot_terms(A, f)
    T = A.tensor
    coords = Minv[:r, :]
    # choose r products spanning the derived space
    chosen, X = [], []
    from .linalg import Echelon
    ech = Echelon(F, n)
    for key in multisets(n):
        if ech.add(T[key]):
            chosen.append(key)
            X.append(F.reduce(coords @ T[key]))
        if len(chosen) == r:
            break
    X = np.array(X, dtype=object).T            # r x r, column t = coords of chosen t
    Y = np.array([lhs[key] for key in chosen], dtype=object).T   # n x r
    W = F.reduce(Y @ inverse(X, F))            # column t = f'(d_t)
    fp = F.reduce(W @ coords)
    w = qder_witness(A, f, fp)
    if w is not None:
        raise NotAQuasiderivation("no companion f' exists", w)
    return fp


def qgamma_bullet(A: TernaryAlgebra, f, g):
    """``fg + gf`` for quasicentroid elements, checked to stay in the quasicentroid."""
    F = A.field
    f, g = F.reduce(_mat(A, f)), F.reduce(_mat(A, g))
    for h in (f, g):
        w = qcentroid_witness(A, h)
        if w is not None:
            raise NotInQuasicentroid("argument is not in the quasicentroid", w)
    out = F.reduce(f @ g + g @ f)
    w = qcentroid_witness(A, out)
    if w is not None:
        raise IdentityViolated("f.g left the quasicentroid", w)
    return out


def commutator(field: FieldSpec, f, g):
    return field.reduce(f @ g - g @ f)


def flat(f) -> tuple:
    return tuple(np.asarray(f, dtype=object).reshape(-1))
