"""Exact scalars over Q or GF(p) and the subspace calculus built on them.

Scalars are plain Python objects: :class:`fractions.Fraction` over the
rationals and ``int`` residues in ``[0, p)`` over GF(p).  Matrices are numpy
arrays of ``dtype=object`` holding such scalars, so ``@`` and ``+`` are exact;
over GF(p) results must be passed through :meth:`FieldSpec.reduce`.

Every subspace is stored by the reduced row echelon form of a spanning set,
which is unique, so two subspaces are equal exactly when their bases are
entry-for-entry identical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import AmbientMismatch, BadField, NotSquare


def _scaled_ints(field, arr):
    """Integer array and scale ``L`` with ``arr = ints / L``."""
    arr = np.asarray(arr, dtype=object)
    if field.p or arr.size == 0:
        return arr, 1
    L = 1
    for v in arr.flat:
        d = v.denominator if isinstance(v, Fraction) else 1
        if d != 1:
            L = L * d // math.gcd(L, d)
    if L == 1:
        return np.vectorize(int, otypes=[object])(arr), 1
    return np.vectorize(lambda v: int(v * L), otypes=[object])(arr), L


def exact_einsum(field, spec: str, *operands) -> np.ndarray:
    """``np.einsum`` on exact operands, with Fractions cleared to integers first."""
    scaled = [_scaled_ints(field, op) for op in operands]
    out = np.einsum(spec, *[s for s, _ in scaled])
    scale = 1
    for _, L in scaled:
        scale *= L
    if field.p:
        return np.vectorize(lambda v: int(v) % field.p, otypes=[object])(out) if np.size(out) \
            else np.asarray(out, dtype=object)
    if np.ndim(out) == 0:
        return np.asarray(Fraction(int(out), scale), dtype=object)
    return np.vectorize(lambda v: Fraction(int(v), scale), otypes=[object])(out) if out.size \
        else np.asarray(out, dtype=object)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``p == 0``) or the prime field GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise BadField(f"{self.p} is not prime")

    @property
    def kind(self) -> str:
        return "Rationals" if self.p == 0 else "PrimeField"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def order(self):
        return self.p if self.p else None

    def admissible(self, allow_char_3: bool = False) -> bool:
        """Characteristic guard for results that assume char F not in {2, 3}."""
        if self.p == 2:
            return False
        if self.p == 3:
            return allow_char_3
        return True

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, x):
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / Fraction(a)
        return pow(int(a), -1, self.p)

    def div(self, a, b):
        return self(a * self.inv(b))

    def elements(self):
        if not self.p:
            raise ValueError("the rationals are not enumerable")
        return range(self.p)

    def array(self, data) -> np.ndarray:
        """Coerce nested data into an object array of canonical scalars."""
        raw = np.array(data, dtype=object)
        out = np.empty(raw.shape, dtype=object)
        for idx in np.ndindex(raw.shape):
            out[idx] = self(raw[idx])
        return out

    def reduce(self, arr):
        """Bring an object array (or scalar) back to canonical representatives."""
        if self.p == 0:
            if isinstance(arr, np.ndarray):
                return np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr
            return Fraction(arr)
        return arr % self.p

    def zeros(self, shape) -> np.ndarray:
        return np.full(shape, self.zero, dtype=object)

    def eye(self, n: int) -> np.ndarray:
        m = self.zeros((n, n))
        for i in range(n):
            m[i, i] = self.one
        return m

    def matmul(self, a, b) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[1:])
        return self.reduce(a @ b)

    def format(self, x) -> str:
        x = self(x)
        if self.p:
            return str(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __str__(self):
        return "Q" if self.p == 0 else f"GF({self.p})"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().replace(" ", "")
        if t in ("Q", "QQ"):
            return cls(0)
        if t.startswith("GF(") and t.endswith(")"):
            try:
                return cls(int(t[3:-1]))
            except ValueError:
                pass
        raise BadField(f"unknown field {text!r}; expected 'Q' or 'GF(p)'")


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _int_row(row: dict) -> dict:
    """Scale a rational sparse row to coprime integers (same span)."""
    den = 1
    for v in row.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    r = {c: int(v * den) for c, v in row.items()}
    g = 0
    for v in r.values():
        g = math.gcd(g, v)
    if g > 1:
        r = {c: v // g for c, v in r.items()}
    return r


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


class Echelon:
    """Incremental row echelon form of a set of sparse rows.

    Rows are dicts ``column -> scalar``.  Over Q rows are kept as primitive
    integer vectors (fraction-free elimination); over GF(p) pivots are
    normalised to 1.  ``rref()`` returns the unique reduced form.
    """

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.pivots: dict = {}

    def _prepare(self, row) -> dict:
        if isinstance(row, dict):
            items = row.items()
        else:
            items = enumerate(row)
        f = self.field
        r = {}
        for c, v in items:
            v = f(v)
            if v != 0:
                r[c] = v
        return _int_row(r) if f.p == 0 else r

    def _reduce(self, r: dict) -> dict:
        p = self.field.p
        pivots = self.pivots
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                return r
            a = r[c]
            if p == 0:
                b = prow[c]
                new = {k: v * b for k, v in r.items()}
                for k, v in prow.items():
                    w = new.get(k, 0) - a * v
                    if w:
                        new[k] = w
                    else:
                        new.pop(k, None)
                r = _primitive(new)
            else:
                for k, v in prow.items():
                    w = (r.get(k, 0) - a * v) % p
                    if w:
                        r[k] = w
                    else:
                        r.pop(k, None)
        return r

    def add(self, row) -> bool:
        """Insert a row; return True when it enlarged the row space."""
        r = self._reduce(self._prepare(row))
        if not r:
            return False
        c = min(r)
        if self.field.p:
            inv = pow(r[c], -1, self.field.p)
            r = {k: v * inv % self.field.p for k, v in r.items()}
        elif r[c] < 0:
            r = {k: -v for k, v in r.items()}
        self.pivots[c] = r
        return True

    def residue(self, row) -> dict:
        return self._reduce(self._prepare(row))

    def contains(self, row) -> bool:
        return not self.residue(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref(self) -> list:
        """Reduced row echelon form as dense tuples, pivots ascending."""
        f = self.field
        p = f.p
        cols = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in cols}
        for ci in reversed(cols):
            ri = rows[ci]
            for cj in cols:
                if cj >= ci:
                    break
                rj = rows[cj]
                a = rj.get(ci)
                if not a:
                    continue
                if p == 0:
                    b = ri[ci]
                    new = {k: v * b for k, v in rj.items()}
                    for k, v in ri.items():
                        w = new.get(k, 0) - a * v
                        if w:
                            new[k] = w
                        else:
                            new.pop(k, None)
                    rows[cj] = _primitive(new)
                else:
                    for k, v in ri.items():
                        w = (rj.get(k, 0) - a * v) % p
                        if w:
                            rj[k] = w
                        else:
                            rj.pop(k, None)
        out = []
        for c in cols:
            r = rows[c]
            dense = [f.zero] * self.ncols
            if p == 0:
                lead = r[c]
                for k, v in r.items():
                    dense[k] = Fraction(v, lead)
            else:
                for k, v in r.items():
                    dense[k] = v
            out.append(tuple(dense))
        return out


def _rows_of(M) -> list:
    if isinstance(M, np.ndarray):
        return [M[i] for i in range(M.shape[0])]
    return list(M)


def rref(M, field: FieldSpec, ncols: int | None = None) -> list:
    rows = _rows_of(M)
    if ncols is None:
        ncols = M.shape[1] if isinstance(M, np.ndarray) else len(rows[0])
    e = Echelon(field, ncols)
    for r in rows:
        e.add(r)
    return e.rref()


def rank(M, field: FieldSpec) -> int:
    ncols = M.shape[1] if isinstance(M, np.ndarray) else len(M[0])
    e = Echelon(field, ncols)
    for r in _rows_of(M):
        e.add(r)
    return e.rank


def _null_basis(reduced: list, ncols: int, field: FieldSpec) -> list:
    pivcols = []
    for r in reduced:
        pivcols.append(next(i for i, v in enumerate(r) if v != 0))
    free = [c for c in range(ncols) if c not in set(pivcols)]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in zip(reduced, pivcols):
            if r[fc] != 0:
                v[pc] = field(-r[fc])
        basis.append(v)
    return basis


def kernel_of_rows(field: FieldSpec, ncols: int, rows: Iterable) -> "Subspace":
    """Null space of the matrix whose rows are given (dense or sparse dicts)."""
    e = Echelon(field, ncols)
    for r in rows:
        e.add(r)
    return Subspace.span(field, ncols, _null_basis(e.rref(), ncols, field))


def kernel(M, field: FieldSpec, ncols: int | None = None) -> "Subspace":
    """``{v : M v = 0}``; an empty matrix yields the whole ambient space."""
    if ncols is None:
        ncols = M.shape[1]
    return kernel_of_rows(field, ncols, _rows_of(M))


def solve(M, b, field: FieldSpec):
    """One solution ``x`` of ``M x = b`` (free variables set to 0), or None."""
    M = np.asarray(M, dtype=object)
    m, n = M.shape
    e = Echelon(field, n + 1)
    for i in range(m):
        row = {j: M[i, j] for j in range(n) if M[i, j] != 0}
        if b[i] != 0:
            row[n] = b[i]
        e.add(row)
    if n in e.pivots:
        return None
    x = [field.zero] * n
    for r in e.rref():
        pc = next(i for i, v in enumerate(r) if v != 0)
        x[pc] = r[n]
    return field.array(x)


def inverse(M, field: FieldSpec) -> np.ndarray:
    n = M.shape[0]
    if M.shape != (n, n):
        raise NotSquare(f"shape {M.shape}")
    aug = np.concatenate([M, field.eye(n)], axis=1)
    red = rref(aug, field, 2 * n)
    if len(red) < n or any(red[i][i] != 1 for i in range(n)):
        raise ZeroDivisionError("matrix is singular")
    return field.array([r[n:] for r in red])


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of F^d held by the RREF of a spanning set."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable = ()) -> "Subspace":
        e = Echelon(field, ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in F^{ambient_dim}")
            e.add(v)
        return cls(field, ambient_dim, tuple(e.rref()))

    @classmethod
    def full(cls, field: FieldSpec, d: int) -> "Subspace":
        return cls.span(field, d, field.eye(d))

    @classmethod
    def zero(cls, field: FieldSpec, d: int) -> "Subspace":
        return cls(field, d, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def pivots(self) -> tuple:
        return tuple(next(i for i, v in enumerate(r) if v != 0) for r in self.basis)

    def matrix(self) -> np.ndarray:
        if not self.basis:
            return self.field.zeros((0, self.ambient_dim))
        return np.array(self.basis, dtype=object)

    def vectors(self) -> list:
        return [np.array(r, dtype=object) for r in self.basis]

    def _echelon(self) -> Echelon:
        e = Echelon(self.field, self.ambient_dim)
        for r in self.basis:
            e.add(r)
        return e

    def contains(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in F^{self.ambient_dim}")
        return self._echelon().contains(v)

    def coordinates(self, v):
        """Coefficients of ``v`` in the canonical basis, or None if ``v`` is outside."""
        if not self.contains(v):
            return None
        f = self.field
        return [f(v[c]) for c in self.pivots]

    def _check(self, other: "Subspace"):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(
                f"{self.field}^{self.ambient_dim} vs {other.field}^{other.ambient_dim}")

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        e = other._echelon()
        return all(e.contains(r) for r in self.basis)

    def __le__(self, other):
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: eliminate rows ``[s | s]`` and ``[t | 0]``."""
        self._check(other)
        d, f = self.ambient_dim, self.field
        zero = (f.zero,) * d
        e = Echelon(f, 2 * d)
        for s in self.basis:
            e.add(tuple(s) + tuple(s))
        for t in other.basis:
            e.add(tuple(t) + zero)
        meet = [r[d:] for r in e.rref() if all(x == 0 for x in r[:d])]
        return Subspace.span(f, d, meet)

    __and__ = intersection

    def complement_indices(self) -> tuple:
        """Standard basis indices completing this subspace, greedy in index order."""
        e = self._echelon()
        chosen = []
        for i in range(self.ambient_dim):
            if e.rank == self.ambient_dim:
                break
            v = {i: self.field.one}
            if e.add(v):
                chosen.append(i)
        return tuple(chosen)

    def complement(self) -> "Subspace":
        f, d = self.field, self.ambient_dim
        eye = f.eye(d)
        return Subspace.span(f, d, [eye[i] for i in self.complement_indices()])

    def image(self, M) -> "Subspace":
        """Image of this subspace under a matrix acting on column vectors."""
        f = self.field
        return Subspace.span(f, M.shape[0], [f.reduce(M @ v) for v in self.vectors()])

    def __repr__(self):
        return f"Subspace({self.field}^{self.ambient_dim}, dim={self.dim})"


@dataclass(frozen=True)
class Lattice:
    sum: Subspace
    intersection: Subspace
    equal: bool
    is_direct: bool
    first_in_second: bool
    second_in_first: bool

    def contains(self, v) -> bool:
        """Membership in the sum."""
        return self.sum.contains(v)


def lattice(S: Subspace, T: Subspace) -> Lattice:
    """Sum, intersection, equality and directness of two subspaces."""
    total = S + T
    meet = S.intersection(T)
    return Lattice(
        sum=total,
        intersection=meet,
        equal=S == T,
        is_direct=total.dim == S.dim + T.dim,
        first_in_second=meet == S,
        second_in_first=meet == T,
    )


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Polynomial with coefficients lowest degree first."""

    field: FieldSpec
    coeffs: tuple

    @classmethod
    def make(cls, field: FieldSpec, coeffs: Sequence) -> "Polynomial":
        c = [field(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return cls(field, tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Polynomial":
        lead = self.field.inv(self.coeffs[-1])
        return Polynomial.make(self.field, [c * lead for c in self.coeffs])

    def __call__(self, x):
        """Evaluate at a scalar or a square matrix (Horner)."""
        f = self.field
        if isinstance(x, np.ndarray):
            n = x.shape[0]
            acc = f.zeros((n, n))
            for c in reversed(self.coeffs):
                acc = f.reduce(acc @ x + c * f.eye(n))
            return acc
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f(acc * x + c)
        return acc

    def divmod(self, other: "Polynomial"):
        f = self.field
        r = list(self.coeffs)
        d = other.coeffs
        if not d:
            raise ZeroDivisionError("polynomial division by zero")
        inv = f.inv(d[-1])
        q = [f.zero] * max(len(r) - len(d) + 1, 0)
        while len(r) >= len(d) and r:
            k = len(r) - len(d)
            t = f(r[-1] * inv)
            q[k] = t
            for i, c in enumerate(d):
                r[i + k] = f(r[i + k] - t * c)
            while r and r[-1] == 0:
                r.pop()
        return Polynomial.make(f, q), Polynomial.make(f, r)

    def divides(self, other: "Polynomial") -> bool:
        return not other.divmod(self)[1].coeffs

    def derivative(self) -> "Polynomial":
        return Polynomial.make(self.field, [i * c for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while b.coeffs:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a.coeffs else a

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def __str__(self):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            s = self.field.format(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and s == "1":
                s = ""
            elif mono and s == "-1":
                s = "-"
            terms.append(f"{s}{'*' if s not in ('', '-') and mono else ''}{mono}" or s)
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _require_square(M):
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"shape {M.shape}")


def minimal_polynomial(M, field: FieldSpec) -> Polynomial:
    """Monic generator of ``{p : p(M) = 0}``.

    The powers ``I, M, M^2, ...`` are flattened and the first power lying in
    the span of its predecessors fixes the relation.
    """
    M = np.asarray(M, dtype=object)
    _require_square(M)
    n = M.shape[0]
    if n == 0:
        return Polynomial(field, (field.one,))
    powers = [field.eye(n).reshape(-1)]
    P = field.eye(n)
    for k in range(1, n + 1):
        P = field.matmul(P, M)
        target = P.reshape(-1)
        A = np.array(powers, dtype=object).T
        c = solve(A, target, field)
        if c is not None:
            return Polynomial.make(field, [field(-x) for x in c] + [field.one])
        powers.append(target)
    raise AssertionError("Cayley-Hamilton bound exceeded")


def _divisors(m: int) -> list:
    m = abs(m)
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def field_roots(poly: Polynomial) -> list:
    """Roots lying in the base field, ascending.

    Over Q the polynomial is scaled to integer coefficients; a rational root
    ``r/s`` in lowest terms then has ``r`` dividing the lowest nonzero
    coefficient and ``s`` dividing the leading one.  Over GF(p) every residue
    is tried.
    """
    f = poly.field
    if poly.degree < 1:
        return []
    if f.p:
        return [x for x in f.elements() if poly(x) == 0]
    den = 1
    for c in poly.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in poly.coeffs]
    roots = set()
    shift = 0
    while ints[shift] == 0:
        shift += 1
    if shift:
        roots.add(Fraction(0))
    ints = ints[shift:]
    if len(ints) > 1:
        for r in _divisors(ints[0]):
            for s in _divisors(ints[-1]):
                for cand in (Fraction(r, s), Fraction(-r, s)):
                    if poly(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def rational_eigenspaces(M, field: FieldSpec) -> list:
    """``[(eigenvalue, eigenspace)]`` for eigenvalues in the base field only."""
    M = np.asarray(M, dtype=object)
    _require_square(M)
    n = M.shape[0]
    out = []
    for lam in field_roots(minimal_polynomial(M, field)):
        out.append((lam, kernel(field.reduce(M - lam * field.eye(n)), field, n)))
    return out


def flatten(M) -> tuple:
    return tuple(np.asarray(M, dtype=object).reshape(-1))


def unflatten(v, n: int) -> np.ndarray:
    return np.array(list(v), dtype=object).reshape(n, n)
