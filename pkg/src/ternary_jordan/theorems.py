"""Mechanical verification of structural results on concrete algebras.

Each check recomputes both sides of a claim and records sub-results.  A check
whose hypotheses are not met reports ``skipped`` with the reason; it never
reports ``fail`` for that.  Individual sub-results are skipped the same way
when only part of a statement is conditional.
"""
from __future__ import annotations

import dataclasses
import enum
import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import (BinaryAlgebra, TernaryAlgebra, annihilator, block_embed, centralizer,
                      direct_sum, ideal_generated, ideal_tools, ideal_witness,
                      invariant_forms, mult_algebra, multisets, quotient, right_mul_basis,
                      structure_subspaces, validate_binary, validate_ternary)
from .constructions import (check_epimorphism, induced_endomorphism, kerphi_split,
                            l_u_embed, tilde)
from .errors import (CharacteristicNotSupported, IdentityViolated, MissingExtras, NotIdeals,
                     NotIdempotentInCentroid, TernaryJordanError)
from .linalg import (FieldSpec, Polynomial, Subspace, kernel, kernel_of_rows, lattice,
                     minimal_polynomial, rational_eigenspaces)
from .spaces import (SpaceKind, centroid_witness, commutator, complete_fprime,
                     invariant_space, qgamma_bullet, split_generalized)


class CheckId(str, enum.Enum):
    T4_1 = "T4_1"
    P4_3 = "P4_3"
    T4_4 = "T4_4"
    T4_5 = "T4_5"
    T4_6 = "T4_6"
    T4_7 = "T4_7"
    R4_2 = "R4_2"
    T5_2 = "T5_2"
    T5_3 = "T5_3"
    T6_1 = "T6_1"
    T6_3 = "T6_3"
    P7_3 = "P7_3"
    P7_4 = "P7_4"
    P7_6 = "P7_6"
    T7_7 = "T7_7"
    CentroidObservations = "CentroidObservations"


CENTROID_CHECKS = {CheckId.P7_3, CheckId.P7_4, CheckId.P7_6, CheckId.T7_7,
             CheckId.CentroidObservations}


@dataclass
class Options:
    allow_char_3: bool = False
    allow_invalid: bool = False
    seed: int = 0
    max_enum: int = 10 ** 6
    samples: int = 8


@dataclass
class CheckReport:
    id: CheckId
    hypotheses_met: bool = True
    reasons: list = dc_field(default_factory=list)
    subchecks: list = dc_field(default_factory=list)
    dimensions: dict = dc_field(default_factory=dict)
    witnesses: list = dc_field(default_factory=list)
    observations: dict = dc_field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.hypotheses_met:
            return "skipped"
        states = [s["status"] for s in self.subchecks]
        if "fail" in states:
            return "fail"
        if "pass" in states:
            return "pass"
        return "skipped"

    @property
    def passed(self):
        s = self.status
        return None if s == "skipped" else s == "pass"

    def as_dict(self) -> dict:
        return {
            "id": self.id.value,
            "status": self.status,
            "passed": self.passed,
            "hypotheses_met": self.hypotheses_met,
            "reasons": list(self.reasons),
            "dimensions": dict(sorted(self.dimensions.items())),
            "subchecks": list(self.subchecks),
            "witnesses": list(self.witnesses),
            "observations": dict(sorted(self.observations.items())),
        }


class _Recorder:
    def __init__(self, report: CheckReport):
        self.r = report

    def check(self, name: str, ok: bool, witness=None, detail=None):
        entry = {"name": name, "status": "pass" if ok else "fail"}
        if detail is not None:
            entry["detail"] = detail
        self.r.subchecks.append(entry)
        if not ok and witness is not None:
            self.r.witnesses.append({"check": name, "witness": _jsonable(witness)})
        return ok

    def skip(self, name: str, reason: str):
        self.r.subchecks.append({"name": name, "status": "skipped", "detail": reason})

    def dim(self, key: str, value: int):
        self.r.dimensions[key] = int(value)


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    return str(x)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _maps(S: Subspace, n: int) -> list:
    return [np.array(v, dtype=object).reshape(n, n) for v in S.basis]


def _flat(f) -> tuple:
    return tuple(np.asarray(f, dtype=object).reshape(-1))


class _Members:
    """Repeated membership tests against one subspace."""

    def __init__(self, S: Subspace):
        self.e = S._echelon()


def _pairwise(F, fs, gs, op):
    return [(i, j, op(f, g)) for i, f in enumerate(fs) for j, g in enumerate(gs)]


def _closure(rec, name, F, space: Subspace, fs, gs, op, n):
    mem = _Members(space)
    bad = None
    for i, j, h in _pairwise(F, fs, gs, op):
        if not mem.e.contains(_flat(h)):
            bad = (i, j)
            break
    rec.check(name, bad is None, bad)


def _is_zero(m) -> bool:
    return all(v == 0 for v in np.asarray(m).reshape(-1))


def _embed_ops(F: FieldSpec, S: Subspace, n: int, offset: int, N: int) -> list:
    out = []
    for f in _maps(S, n):
        M = F.zeros((N, N))
        M[offset:offset + n, offset:offset + n] = f
        out.append(_flat(M))
    return out


def _space(A, kind, opts):
    return invariant_space(A, kind, allow_char_3=opts.allow_char_3, require_valid=False)


def _gate(A: TernaryAlgebra, report: CheckReport, opts: Options, section7: bool) -> bool:
    p = A.field.p
    if p == 2:
        report.hypotheses_met = False
        report.reasons.append("characteristic 2 is not supported")
        return False
    if p == 3 and not section7 and not opts.allow_char_3:
        report.hypotheses_met = False
        report.reasons.append("characteristic 3 requires allow_char_3")
        return False
    if not validate_ternary(A).valid:
        if not opts.allow_invalid:
            report.hypotheses_met = False
            report.reasons.append("input is not a ternary Jordan algebra")
            return False
        report.reasons.append("input is not a ternary Jordan algebra; checked anyway (allow_invalid)")
    return True


# ---------------------------------------------------------------------------
# derivation-type spaces
# ---------------------------------------------------------------------------

def _spaces4(A, opts):
    K = SpaceKind
    return {k: _space(A, k, opts) for k in (K.DER, K.QDER, K.GDER, K.ZDER, K.CENTROID,
                                            K.QCENTROID)}


def _record_dims(rec, sp):
    for k, r in sp.items():
        rec.dim(k.value, r.projected.dim)


def _t4_1(A, rec, opts, extras):
    F, n = A.field, A.dim
    sp = _spaces4(A, opts)
    _record_dims(rec, sp)
    K = SpaceKind
    for k in (K.GDER, K.QDER, K.QCENTROID, K.CENTROID):
        S = sp[k].projected
        fs = _maps(S, n)
        _closure(rec, f"{k.value} closed under commutator", F, S, fs, fs,
                 lambda f, g: commutator(F, f, g), n)
    Z = annihilator(A)
    if Z.dim == 0:
        for k in (K.QCENTROID, K.CENTROID):
            fs = _maps(sp[k].projected, n)
            bad = next(((i, j) for i, j, h in _pairwise(F, fs, fs, lambda f, g: commutator(F, f, g))
                        if not _is_zero(h)), None)
            rec.check(f"{k.value} abelian", bad is None, bad)
    else:
        rec.skip("abelian quasicentroid and centroid", f"Z(A) = 0 required, found dim {Z.dim}")


def _t4_3(A, rec, opts, extras):
    F, n = A.field, A.dim
    K = SpaceKind
    sp = _spaces4(A, opts)
    _record_dims(rec, sp)
    der, gam = _maps(sp[K.DER].projected, n), _maps(sp[K.CENTROID].projected, n)
    qd, qg = _maps(sp[K.QDER].projected, n), _maps(sp[K.QCENTROID].projected, n)
    br = lambda f, g: commutator(F, f, g)
    _closure(rec, "(1) [Der, Gamma] in Gamma", F, sp[K.CENTROID].projected, der, gam, br, n)
    _closure(rec, "(2) [QDer, QGamma] in QGamma", F, sp[K.QCENTROID].projected, qd, qg, br, n)
    _closure(rec, "(3) [QGamma, QGamma] in QDer", F, sp[K.QDER].projected, qg, qg, br, n)
    G = sp[K.CENTROID].projected
    rec.check("(4) Gamma in QDer", G <= sp[K.QDER].projected)
    rec.check("(5) QGamma in GDer", sp[K.QCENTROID].projected <= sp[K.GDER].projected)
    _closure(rec, "(6) Gamma Der in Der", F, sp[K.DER].projected, gam, der,
             lambda g, f: F.reduce(g @ f), n)
    meet = sp[K.QDER].projected & sp[K.QCENTROID].projected
    rec.check("(7) Gamma in QDer and QGamma", G <= meet)


def _t4_4(A, rec, opts, extras):
    F, n = A.field, A.dim
    K = SpaceKind
    sp = _spaces4(A, opts)
    _record_dims(rec, sp)
    L = lattice(sp[K.QDER].projected, sp[K.QCENTROID].projected)
    rec.dim("QDer+QGamma", L.sum.dim)
    rec.check("GDer = QDer + QGamma", L.sum == sp[K.GDER].projected)
    qg, gd = _maps(sp[K.QCENTROID].projected, n), _maps(sp[K.GDER].projected, n)
    _closure(rec, "[QGamma, GDer] in QGamma", F, sp[K.QCENTROID].projected, qg, gd,
             lambda f, g: commutator(F, f, g), n)
    Z = annihilator(A)
    if Z.dim == 0:
        bad = next(((i, j) for i, j, h in _pairwise(F, qg, qg, lambda f, g: commutator(F, f, g))
                    if not _is_zero(h)), None)
        rec.check("QGamma abelian", bad is None, bad)
    else:
        rec.skip("QGamma abelian", f"Z(A) = 0 required, found dim {Z.dim}")
    if F.p in (2, 3):
        rec.skip("splitting of Delta", "division by 3 needs characteristic other than 3")
        return
    delta = _space(A, K.DELTA, opts).space
    N = n * n
    ok, bad = True, None
    for t, v in enumerate(delta.basis):
        blocks = [np.array(v[b * N:(b + 1) * N], dtype=object).reshape(n, n) for b in range(4)]
        try:
            split_generalized(A, *blocks)
        except TernaryJordanError as exc:
            ok, bad = False, (t, str(exc))
            break
    rec.check("Delta splits into QDer + QGamma parts", ok, bad)


def _t4_5(A, rec, opts, extras):
    F = A.field
    B = extras.get("B", A)
    if B.field != F:
        raise MissingExtras("second algebra must share the field")
    if not validate_ternary(B).valid and not opts.allow_invalid:
        rec.r.hypotheses_met = False
        rec.r.reasons.append("second summand is not a ternary Jordan algebra")
        return
    S, (ia, ib) = direct_sum(A, B)
    na, nb, N = A.dim, B.dim, A.dim + B.dim
    ZS = annihilator(S)
    emb = Subspace.span(F, N, [F.reduce(ia @ v) for v in annihilator(A).vectors()]
                        + [F.reduce(ib @ v) for v in annihilator(B).vectors()])
    rec.dim("Z(A+B)", ZS.dim)
    rec.check("Z(A+B) = Z(A) + Z(B)", ZS == emb)
    if ZS.dim:
        rec.skip("block decompositions", f"Z(A+B) = 0 required, found dim {ZS.dim}")
        return
    K = SpaceKind
    for k in (K.DER, K.GDER, K.QDER, K.QCENTROID, K.CENTROID):
        whole = _space(S, k, opts).projected
        parts = (_embed_ops(F, _space(A, k, opts).projected, na, 0, N)
                 + _embed_ops(F, _space(B, k, opts).projected, nb, na, N))
        rec.dim(f"{k.value}(A+B)", whole.dim)
        rec.check(f"{k.value}(A+B) = {k.value}(A) + {k.value}(B)",
                  whole == Subspace.span(F, N * N, parts))


def _t4_6(A, rec, opts, extras):
    K = SpaceKind
    sp = _spaces4(A, opts)
    _record_dims(rec, sp)
    meet = sp[K.CENTROID].projected & sp[K.DER].projected
    rec.dim("Gamma&Der", meet.dim)
    rec.check("ZDer = Gamma & Der", meet == sp[K.ZDER].projected)


def _t4_7(A, rec, opts, extras):
    F, n = A.field, A.dim
    S = _space(A, SpaceKind.QCENTROID, opts).projected
    rec.dim("QCentroid", S.dim)
    fs = _maps(S, n)
    bad = None
    prods = {}
    for i, j in multisets(len(fs), 2):
        try:
            h = qgamma_bullet(A, fs[i], fs[j])
        except TernaryJordanError as exc:
            bad = (i, j, str(exc))
            break
        prods[(i, j)] = S.coordinates(_flat(h))
    rec.check("bullet closure", bad is None, bad)
    if bad is None and fs:
        J = BinaryAlgebra.from_products(F, len(fs), prods, commutative=True)
        rep = validate_binary(J)
        rec.check(f"(QGamma, bullet) Jordan ({'+'.join(sorted(rep.checks))})", rep.valid,
                  rep.witnesses[:1])


def _r4_2(A, rec, opts, extras):
    F, n = A.field, A.dim
    K = SpaceKind
    Z = annihilator(A)
    qg = _maps(_space(A, K.QCENTROID, opts).projected, n)
    gm = _maps(_space(A, K.CENTROID, opts).projected, n)
    for name, fs, gs in (("QGamma,QGamma", qg, qg), ("QGamma,Gamma", qg, gm),
                         ("Gamma,Gamma", gm, gm)):
        bad = None
        for i, j, h in _pairwise(F, fs, gs, lambda f, g: commutator(F, f, g)):
            if any(not Z.contains(h[:, c]) for c in range(n)):
                bad = (i, j)
                break
        rec.check(f"[{name}] maps A into Z(A)", bad is None, bad)


# ---------------------------------------------------------------------------
# the graded extension and the tensor cube
# ---------------------------------------------------------------------------

def _lu_image(A, opts):
    T = tilde(A)
    qd = _space(A, SpaceKind.QDER, opts)
    images = [l_u_embed(T, f) for f in _maps(qd.projected, A.dim)]
    return T, qd, images


def _t5_2(A, rec, opts, extras):
    F, n = A.field, A.dim
    T, qd, images = _lu_image(A, opts)
    der_t = _space(T.algebra, SpaceKind.DER, opts).projected
    img = Subspace.span(F, 9 * n * n, [_flat(L) for L in images])
    rec.dim("QDer(A)", qd.projected.dim)
    rec.dim("l_u(QDer(A))", img.dim)
    rec.dim("Der(tilde A)", der_t.dim)
    rec.check("l_u(QDer) in Der(tilde A)", img <= der_t)
    rec.check("l_u injective", img.dim == qd.projected.dim)
    # every companion gives the same map: f' agrees on the derived part
    st = structure_subspaces(A)
    N = n * n
    bad = None
    for t, v in enumerate(qd.space.basis):
        f = np.array(v[:N], dtype=object).reshape(n, n)
        fp = np.array(v[N:], dtype=object).reshape(n, n)
        ref = complete_fprime(A, f)
        if any(not _is_zero(F.reduce((fp - ref) @ d)) for d in st.derived.vectors()):
            bad = t
            break
    rec.check("l_u independent of the companion f'", bad is None, bad)


def _t5_3(A, rec, opts, extras):
    F, n = A.field, A.dim
    T, qd, images = _lu_image(A, opts)
    img = Subspace.span(F, 9 * n * n, [_flat(L) for L in images])
    der_t = _space(T.algebra, SpaceKind.DER, opts).projected
    zder_t = _space(T.algebra, SpaceKind.ZDER, opts).projected
    rec.dim("Der(tilde A)", der_t.dim)
    rec.dim("l_u(QDer(A))", img.dim)
    rec.dim("ZDer(tilde A)", zder_t.dim)
    Z = annihilator(A)
    if Z.dim:
        rec.r.hypotheses_met = False
        rec.r.reasons.append(f"Z(A) = 0 required, found dim {Z.dim}")
        return
    L = lattice(img, zder_t)
    rec.dim("intersection", L.intersection.dim)
    rec.check("l_u(QDer) & ZDer(tilde A) = 0", L.intersection.dim == 0)
    rec.check("Der(tilde A) = l_u(QDer) + ZDer(tilde A)", L.sum == der_t)


def d_star_action(field: FieldSpec, D, v, n: int) -> np.ndarray:
    """``d_star(D) v`` computed on the (n, n, n) reshaping of ``v``."""
    X = np.array(v, dtype=object).reshape(n, n, n)
    out = (np.einsum("ai,ijk->ajk", D, X) + np.einsum("aj,ijk->iak", D, X)
           + np.einsum("ak,ijk->ija", D, X))
    return field.reduce(out.reshape(-1))


def kerphi_stabilizer(A: TernaryAlgebra) -> Subspace:
    """``{D : d_star(D) Ker(phi) <= Ker(phi)}`` as a subspace of F^{n^2}.

    For ``v`` in Ker(phi) the condition is ``phi(d_star(D) v) = 0``, linear
    in ``D``; each matrix unit ``E_ab`` contributes one column.
    """
    F, n = A.field, A.dim
    cube = kerphi_split(A)
    phi = cube.phi
    rows = []
    units = []
    for a in range(n):
        for b in range(n):
            E = F.zeros((n, n))
            E[a, b] = F.one
            units.append(E)
    for v in cube.kernel_phi.basis:
        cols = [F.reduce(phi @ d_star_action(F, E, v, n)) for E in units]
        for m in range(n):
            rows.append([c[m] for c in cols])
    return kernel_of_rows(F, n * n, rows)


def _t6_1(A, rec, opts, extras):
    X = kerphi_stabilizer(A)
    Q = _space(A, SpaceKind.QDER, opts).projected
    cube = kerphi_split(A)
    rec.dim("Ker(phi)", cube.kernel_phi.dim)
    rec.dim("X", X.dim)
    rec.dim("QDer", Q.dim)
    rec.check("X = QDer", X == Q)


def _t6_3(A, rec, opts, extras):
    n = A.dim
    Q = _space(A, SpaceKind.QDER, opts).projected
    st = structure_subspaces(A)
    rec.dim("QDer", Q.dim)
    rec.dim("derived", st.derived.dim)
    if Q.dim != n * n or st.derived.dim == 0:
        rec.r.hypotheses_met = False
        rec.r.reasons.append(f"needs QDer = gl (dim {n * n}, found {Q.dim}) and nonzero derived "
                             f"(found dim {st.derived.dim})")
        return
    rec.check("dim A <= 2", n <= 2, n)
    if n == 1:
        rec.check("simple", st.derived.dim == 1)
    else:
        rec.skip("simple", "dimension is not 1")
    if n == 2:
        rec.check("[[A,A,A]] = A", st.derived.is_full)
    else:
        rec.skip("[[A,A,A]] = A", "dimension is not 2")


# ---------------------------------------------------------------------------
# centroid, ideals and decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdempotentResult:
    psi: np.ndarray
    kernel: Subspace
    image: Subspace
    involution: np.ndarray


def _is_in_gamma(A, f) -> bool:
    return centroid_witness(A, f) is None


def idempotent_decomposition(A: TernaryAlgebra, direction: str, payload) -> IdempotentResult:
    """Ideals ``(I, J)`` with ``I + J = A`` direct, or an idempotent ``psi`` in the centroid.

    ``to_idempotent`` returns ``psi`` with ``psi|I = id`` and ``psi|J = 0``;
    ``to_decomposition`` returns ``(Ker psi, Im psi)``.  ``involution`` is
    ``2 psi - id`` (``id`` on one summand, ``-id`` on the other), also in the
    centroid.
    """
    F, n = A.field, A.dim
    if direction == "to_idempotent":
        I, J = payload
        for S in (I, J):
            w = ideal_witness(A, S)
            if w is not None:
                raise NotIdeals("summand is not an ideal", w)
        L = lattice(I, J)
        if not (L.is_direct and L.sum.is_full):
            raise NotIdeals("summands do not form a direct decomposition",
                            (L.intersection.dim, L.sum.dim))
        M = np.array(list(I.basis) + list(J.basis), dtype=object).T
        from .linalg import inverse
        P = F.zeros((n, n))
        for t in range(I.dim):
            P[t, t] = F.one
        psi = F.reduce(M @ P @ inverse(M, F))
    elif direction == "to_decomposition":
        psi = F.array(payload)
        if psi.shape != (n, n):
            raise NotIdempotentInCentroid("wrong shape", psi.shape)
        if np.any(F.reduce(psi @ psi - psi) != 0):
            raise NotIdempotentInCentroid("psi^2 != psi")
        if _is_zero(psi) or np.all(psi == F.eye(n)):
            raise NotIdempotentInCentroid("psi is 0 or id")
        w = centroid_witness(A, psi)
        if w is not None:
            raise NotIdempotentInCentroid("psi is not in the centroid", w)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if np.any(F.reduce(psi @ psi - psi) != 0):
        raise IdentityViolated("constructed map is not idempotent")
    w = centroid_witness(A, psi)
    if w is not None:
        raise IdentityViolated("projection onto an ideal summand is not in the centroid", w)
    K = kernel(psi, F, n)
    Im = Subspace.span(F, n, [psi[:, c] for c in range(n)])
    for S in (K, Im):
        w = ideal_witness(A, S)
        if w is not None:
            raise NotIdeals("kernel or image is not an ideal", w)
    L = lattice(K, Im)
    if not (L.intersection.dim == 0 and L.sum.is_full):
        raise IdentityViolated("kernel and image do not decompose A")
    inv = F.reduce(2 * psi - F.eye(n))
    w = centroid_witness(A, inv)
    if w is not None:
        raise IdentityViolated("2 psi - id is not in the centroid", w)
    return IdempotentResult(psi, K, Im, inv)


def enumerate_space(S: Subspace, n: int, limit: int):
    """All elements of a subspace over GF(p), or None when there are more than ``limit``."""
    F = S.field
    if not F.p or F.p ** S.dim > limit:
        return None
    mats = _maps(S, n)

    def gen():
        for coeffs in itertools.product(range(F.p), repeat=S.dim):
            m = F.zeros((n, n))
            for c, b in zip(coeffs, mats):
                if c:
                    m = m + c * b
            yield F.reduce(m)
    return gen()


def centroid_idempotents(A: TernaryAlgebra, limit: int):
    """Idempotents of the centroid other than 0 and id (GF(p) only), or None if too large."""
    F, n = A.field, A.dim
    G = invariant_space(A, SpaceKind.CENTROID, allow_char_3=True, require_valid=False).projected
    elems = enumerate_space(G, n, limit)
    if elems is None:
        return None
    eye = F.eye(n)
    return [m for m in elems if not _is_zero(m) and not np.all(m == eye)
            and np.all(F.reduce(m @ m - m) == 0)]


def _zero_divisor(F, G: Subspace, n: int, limit: int):
    """``(psi, phi)`` in G, both nonzero, with ``psi phi = 0``; None if none; 'unknown' if too big."""
    elems = enumerate_space(G, n, limit)
    if elems is None:
        return "unknown"
    basis = _maps(G, n)
    for psi in elems:
        if _is_zero(psi):
            continue
        # kernel of phi -> psi phi on G, in G-coordinates
        cols = [_flat(F.reduce(psi @ b)) for b in basis]
        K = kernel(np.array(cols, dtype=object).T, F, len(basis)) if basis else None
        if K is not None and K.dim:
            c = K.basis[0]
            phi = F.reduce(sum((ci * b for ci, b in zip(c, basis)), F.zeros((n, n))))
            return psi, phi
    return None


def _projective_points(F: FieldSpec, n: int):
    for v in itertools.product(range(F.p), repeat=n):
        nz = next((x for x in v if x), None)
        if nz == 1:
            yield np.array(v, dtype=object)


def annihilating_ideal_pair(A: TernaryAlgebra, limit: int):
    """Nonzero ideals I, J with [[A, I, J]] = 0, searched over GF(p).

    Any such pair contains one generated by single vectors, so running over
    projective points is exhaustive.  Returns the generators, None, or
    'unknown' when the search exceeds ``limit``.
    """
    F, n, T = A.field, A.dim, A.tensor
    if not F.p or (F.p ** n) ** 2 > limit:
        return "unknown"
    pts = list(_projective_points(F, n))
    ideals = [ideal_generated(A, [x]) for x in pts]
    for a, I in enumerate(ideals):
        for b in range(a, len(ideals)):
            J = ideals[b]
            if all(_is_zero(F.reduce(np.einsum("i,j,kijl->kl", x, y, T)))
                   for x in I.vectors() for y in J.vectors()):
                return pts[a], pts[b]
    return None


def _indecomposable(A, extras, opts):
    """(flag or None, how) from extras or, over GF(p), the idempotent search."""
    if "indecomposable" in extras:
        return bool(extras["indecomposable"]), "supplied"
    idem = centroid_idempotents(A, opts.max_enum)
    if idem is None:
        return None, "not decidable without a supplied flag"
    return not idem, "exhaustive idempotent search"


def _p7_3(A, rec, opts, extras):
    F, n = A.field, A.dim
    G = _space(A, SpaceKind.CENTROID, opts).projected
    rec.dim("Gamma", G.dim)
    ran = False
    if "ideals" in extras:
        I, J = extras["ideals"]
        try:
            res = idempotent_decomposition(A, "to_idempotent", (I, J))
            back = idempotent_decomposition(A, "to_decomposition", res.psi)
            rec.check("ideals -> idempotent -> same ideals", back.image == I and back.kernel == J)
            rec.check("+id/-id map in Gamma", _is_in_gamma(A, res.involution))
        except TernaryJordanError as exc:
            rec.check("ideals -> idempotent", False, str(exc))
        ran = True
    if "psi" in extras:
        try:
            res = idempotent_decomposition(A, "to_decomposition", extras["psi"])
            rec.check("idempotent -> ideal decomposition", True,
                      detail={"kernel": res.kernel.dim, "image": res.image.dim})
        except TernaryJordanError as exc:
            rec.check("idempotent -> ideal decomposition", False, str(exc))
        ran = True
    if not ran:
        idem = centroid_idempotents(A, opts.max_enum)
        if idem is None:
            rec.skip("idempotent search", "needs GF(p) with small centroid, or supplied candidates")
        else:
            rec.dim("nontrivial idempotents", len(idem))
            ok, bad = True, None
            for t, psi in enumerate(idem):
                try:
                    idempotent_decomposition(A, "to_decomposition", psi)
                except TernaryJordanError as exc:
                    ok, bad = False, (t, str(exc))
                    break
            rec.check("every idempotent yields an ideal decomposition", ok, bad)
    if not structure_subspaces(A).perfect:
        rec.skip("Gamma symmetric for invariant forms", "A perfect required")
        return
    forms = [np.array(v, dtype=object).reshape(n, n) for v in invariant_forms(A).basis]
    forms += [F.array(g) for g in extras.get("forms", [])]
    rec.dim("invariant forms", len(forms))
    bad = None
    for s, psi in enumerate(_maps(G, n)):
        for t, Gm in enumerate(forms):
            if np.any(F.reduce(psi.T @ Gm - Gm @ psi) != 0):
                bad = (s, t)
                break
        if bad:
            break
    rec.check("Gamma symmetric for invariant forms", bad is None, bad)


def _p7_4(A, rec, opts, extras):
    F, n = A.field, A.dim
    G = _maps(_space(A, SpaceKind.CENTROID, opts).projected, n)
    st = structure_subspaces(A)
    if "I" in extras:
        subsets = list(extras["I"])
    else:
        eye = F.eye(n)
        subsets = [Subspace.span(F, n, [eye[i]]) for i in range(n)]
        subsets += [Subspace.full(F, n), st.annihilator, st.derived]
    bad = None
    for s, I in enumerate(subsets):
        C = centralizer(A, I)
        for t, psi in enumerate(G):
            if any(not C.contains(F.reduce(psi @ v)) for v in C.vectors()):
                bad = (s, t)
                break
        if bad:
            break
    rec.check(f"centralizers of {len(subsets)} subsets invariant under Gamma", bad is None, bad)
    cands = list(extras.get("perfect_ideals", []))
    if not cands:
        cands = [S for S in (st.derived, Subspace.full(F, n)) if S.dim]
    perfect = [S for S in cands if ideal_tools(A, S).is_perfect_ideal]
    if not perfect:
        rec.skip("perfect ideals invariant under Gamma", "no perfect ideal among candidates")
        return
    bad = None
    for s, J in enumerate(perfect):
        for t, psi in enumerate(G):
            if any(not J.contains(F.reduce(psi @ v)) for v in J.vectors()):
                bad = (s, t)
                break
    rec.check(f"{len(perfect)} perfect ideals invariant under Gamma", bad is None, bad)


def _divides_x2(poly: Polynomial) -> bool:
    return len(poly.coeffs) >= 2 and poly.coeffs[0] == 0 and poly.coeffs[1] == 0


def _p7_6(A, rec, opts, extras):
    F, n = A.field, A.dim
    Gs = _space(A, SpaceKind.CENTROID, opts).projected
    cands = _maps(Gs, n) + [F.array(f) for f in extras.get("f", [])]
    bad = None
    for t, f in enumerate(cands):
        if centroid_witness(A, f) is not None:
            rec.check(f"candidate {t} in Gamma", False, t)
            return
        Ker = kernel(f, F, n)
        Img = Subspace.span(F, n, [f[:, c] for c in range(n)])
        if ideal_witness(A, Ker) is not None or ideal_witness(A, Img) is not None:
            bad = t
            break
    rec.check(f"Ker and Im are ideals ({len(cands)} maps)", bad is None, bad)
    # minimal polynomial route: x^2 not dividing mu(f) splits A = Ker + Im
    split_bad, simple = None, []
    for t, f in enumerate(cands):
        mu = minimal_polynomial(f, F)
        if _is_zero(f) or _divides_x2(mu):
            continue
        L = lattice(kernel(f, F, n), Subspace.span(F, n, [f[:, c] for c in range(n)]))
        if not (L.is_direct and L.sum.is_full):
            split_bad = t
        simple.append(t)
    rec.check("x^2 not dividing mu(f) gives A = Ker(f) + Im(f)", split_bad is None, split_bad)
    flag, how = _indecomposable(A, extras, opts)
    rec.r.observations["indecomposable"] = {"value": flag, "how": how}
    if flag is None:
        rec.skip("invertible when indecomposable", how)
    elif not flag:
        rec.skip("invertible when indecomposable", "A is decomposable")
    else:
        bad = next((t for t in simple if kernel(cands[t], F, n).dim), None)
        rec.check("invertible when indecomposable", bad is None, bad)
    # field property, exhaustive over GF(p)
    if not F.p:
        rec.skip("Gamma is a field", "zero-divisor search needs a finite field")
        return
    if not flag:
        rec.skip("Gamma is a field", "A indecomposable required")
        return
    if not structure_subspaces(A).perfect:
        rec.skip("Gamma is a field", "A perfect required")
        return
    elems = enumerate_space(Gs, n, opts.max_enum)
    if elems is None:
        rec.skip("Gamma is a field", f"|Gamma| exceeds {opts.max_enum}")
        return
    elems = list(elems)
    if any(not minimal_polynomial(m, F).is_squarefree() for m in elems if not _is_zero(m)):
        rec.skip("Gamma is a field", "Gamma has non-semisimple elements")
        return
    zd = _zero_divisor(F, Gs, n, opts.max_enum)
    basis = _maps(Gs, n)
    comm = all(_is_zero(commutator(F, f, g)) for f in basis for g in basis)
    rec.check("Gamma is a field (no zero divisors, commutative)", zd is None and comm,
              None if zd is None else "zero divisor found")


def _t7_7(A, rec, opts, extras):
    F, n = A.field, A.dim
    if ("pi" in extras) != ("A2" in extras):
        raise MissingExtras("T7_7 needs both 'pi' and 'A2' or neither")
    if "pi" in extras:
        A2, pi = extras["A2"], F.array(extras["pi"])
    else:
        A2, pi = quotient(A, annihilator(A))
    if not validate_ternary(A2).valid and not opts.allow_invalid:
        rec.r.hypotheses_met = False
        rec.r.reasons.append("image algebra is not a ternary Jordan algebra")
        return
    try:
        check_epimorphism(A, A2, pi)
    except TernaryJordanError as exc:
        rec.r.hypotheses_met = False
        rec.r.reasons.append(f"not an epimorphism: {exc}")
        return
    m = A2.dim
    Kp = kernel(pi, F, n)
    rec.dim("Ker(pi)", Kp.dim)
    rec.dim("A2", m)
    # End(A1, Ker pi): pi f k = 0 for k in Ker pi, linear in f
    rows = []
    for k in Kp.vectors():
        for r in range(m):
            row = {}
            for a in range(n):
                for b in range(n):
                    c = F(pi[r, a] * k[b])
                    if c:
                        row[a * n + b] = c
            if row:
                rows.append(row)
    E = kernel_of_rows(F, n * n, rows)
    rec.dim("End(A1, Ker pi)", E.dim)
    endo = _maps(E, n)
    ind = lambda f: induced_endomorphism(pi, f, field=F)
    rng = random.Random(opts.seed)
    bad = None
    for s in range(opts.samples if endo else 0):
        f = F.reduce(sum((F(rng.randint(-2, 2)) * b for b in endo), F.zeros((n, n))))
        g = F.reduce(sum((F(rng.randint(-2, 2)) * b for b in endo), F.zeros((n, n))))
        if np.any(F.reduce(ind(F.reduce(f @ g)) - ind(f) @ ind(g)) != 0):
            bad = s
            break
    rec.check("pi_End multiplicative", bad is None, bad)
    gens_ok = all(np.all(ind(right_mul_basis(A, a, b)) == F.reduce(
        np.einsum("j,k,ijkl->li", pi[:, a], pi[:, b], A2.tensor) if m else F.zeros((0, 0))))
        for a, b in multisets(n, 2))
    rec.check("pi_End(R(x,y)) = R(pi x, pi y)", gens_ok)
    M1 = mult_algebra(A).space
    img = Subspace.span(F, m * m, [_flat(ind(f)) for f in _maps(M1, n)])
    rec.check("pi_End(Mult(A1)) = Mult(A2)", img == mult_algebra(A2).space)
    G1 = _space(A, SpaceKind.CENTROID, opts).projected
    G2 = _space(A2, SpaceKind.CENTROID, opts).projected
    GE = G1 & E
    rec.dim("Gamma(A1)&End", GE.dim)
    imgG = Subspace.span(F, m * m, [_flat(ind(f)) for f in _maps(GE, n)])
    rec.check("pi_End(Gamma(A1) & End) in Gamma(A2)", imgG <= G2)
    Z1 = annihilator(A)
    if Kp == Z1:
        rec.check("Ker(pi) = Z(A1) invariant under Gamma(A1)", G1 <= E)
    else:
        rec.skip("Ker(pi) = Z(A1) invariant under Gamma(A1)", "Ker(pi) = Z(A1) required")
    perfect = structure_subspaces(A).perfect
    if perfect and Kp <= Z1:
        rec.check("pi_Gamma injective", imgG.dim == GE.dim)
        if annihilator(A2).dim == 0:
            rec.check("pi_Gamma monomorphism on Gamma(A1)", G1 <= E and imgG.dim == G1.dim)
        else:
            rec.skip("pi_Gamma monomorphism on Gamma(A1)", "Z(A2) = 0 required")
    else:
        rec.skip("pi_Gamma injective", "A1 perfect and Ker(pi) in Z(A1) required")


def _observations(A, rec, opts, extras):
    F, n = A.field, A.dim
    G = _space(A, SpaceKind.CENTROID, opts).projected
    rec.dim("Gamma", G.dim)
    rec.check("id in Gamma", G.contains(_flat(F.eye(n))))
    obs = []
    for f in _maps(G, n):
        mu = minimal_polynomial(f, F)
        eig = rational_eigenspaces(f, F)
        obs.append({"minimal_polynomial": str(mu),
                    "eigenvalues": [[F.format(l), E.dim] for l, E in eig]})
    rec.r.observations["basis"] = obs
    rec.r.observations["Gamma_is_scalars"] = G.dim == 1 and G.contains(_flat(F.eye(n)))
    if not F.p:
        rec.skip("integral domain", "zero-divisor search needs a finite field")
        return
    hyp = annihilating_ideal_pair(A, opts.max_enum)
    if hyp == "unknown":
        rec.skip("integral domain", "ideal-pair search exceeds the enumeration bound")
        return
    if hyp is not None:
        rec.skip("integral domain", "A has nonzero ideals I, J with [[A, I, J]] = 0")
        return
    zd = _zero_divisor(F, G, n, opts.max_enum)
    if zd == "unknown":
        rec.skip("integral domain", f"|Gamma| exceeds {opts.max_enum}")
        return
    rec.check("integral domain (no zero divisors)", zd is None,
              None if zd is None else [_jsonable(zd[0]), _jsonable(zd[1])])


_DISPATCH = {
    CheckId.T4_1: _t4_1, CheckId.P4_3: _t4_3, CheckId.T4_4: _t4_4, CheckId.T4_5: _t4_5,
    CheckId.T4_6: _t4_6, CheckId.T4_7: _t4_7, CheckId.R4_2: _r4_2, CheckId.T5_2: _t5_2,
    CheckId.T5_3: _t5_3, CheckId.T6_1: _t6_1, CheckId.T6_3: _t6_3, CheckId.P7_3: _p7_3,
    CheckId.P7_4: _p7_4, CheckId.P7_6: _p7_6, CheckId.T7_7: _t7_7,
    CheckId.CentroidObservations: _observations,
}


def verify(A: TernaryAlgebra, check, extras: dict | None = None,
           options: Options | None = None) -> CheckReport:
    cid = CheckId(check)
    opts = options or Options()
    extras = extras or {}
    report = CheckReport(cid)
    centroid_check = cid in CENTROID_CHECKS
    if not _gate(A, report, opts, centroid_check):
        return report
    if centroid_check:
        opts = dataclasses.replace(opts, allow_char_3=True)
    _DISPATCH[cid](A, _Recorder(report), opts, extras)
    return report


def verify_all(A: TernaryAlgebra, checks=None, extras=None, options=None) -> list:
    ids = [CheckId(c) for c in checks] if checks else list(CheckId)
    return [verify(A, c, extras, options) for c in ids]
