"""Named example algebras used by tests, demos and the shipped JSON files."""
from __future__ import annotations

from functools import lru_cache

from .algebra import BinaryAlgebra, TernaryAlgebra, direct_sum
from .constructions import hom_binary, j_alpha, tensor_ternary, tilde
from .linalg import GF, QQ


def f1() -> TernaryAlgebra:
    """Zero product on Q^2."""
    return TernaryAlgebra.zero(QQ, 2)


def f2() -> TernaryAlgebra:
    """Q e with [[e,e,e]] = e."""
    return TernaryAlgebra.from_products(QQ, 1, {(0, 0, 0): [1]}, labels=["e"])


def nonassoc_algebra() -> BinaryAlgebra:
    """Commutative product on span{e, u}: ee = e, eu = e, uu = 0 (not associative)."""
    return BinaryAlgebra.from_products(QQ, 2, {(0, 0): [1, 0], (0, 1): [1, 0]},
                                       commutative=True, labels=["e", "u"])


OMEGA_DIAG = [[1, 0], [0, 0]]


def j3() -> BinaryAlgebra:
    """``a.b = a w(b) + b w(a)`` on the previous algebra: ee = 2e, eu = e, uu = 0."""
    return hom_binary(nonassoc_algebra(), OMEGA_DIAG, "omega", strict=False).algebra


def f3() -> TernaryAlgebra:
    """j_alpha of ``j3`` with alpha = u*: [[e,e,u]] = 2e, [[e,u,u]] = 2e."""
    return j_alpha(j3(), [0, 1], strict=False)


def f4_algebra() -> BinaryAlgebra:
    """GF(3)[t]/(t^3) on the basis 1, t, t^2."""
    return BinaryAlgebra.from_products(
        GF(3), 3, {(0, 0): [1, 0, 0], (0, 1): [0, 1, 0], (0, 2): [0, 0, 1], (1, 1): [0, 0, 1]},
        commutative=True, labels=["1", "t", "t2"])


# D(t) = t^2, D(1) = D(t^2) = 0: a derivation with D^2 = 0
F4_D = [[0, 0, 0], [0, 0, 0], [0, 1, 0]]


def f4_hom() -> BinaryAlgebra:
    return hom_binary(f4_algebra(), F4_D, "delta").algebra


def f4_ternary() -> TernaryAlgebra:
    """j_alpha of the delta-algebra on GF(3)[t]/(t^3), alpha = 1* + t*."""
    return j_alpha(f4_hom(), [1, 1, 0])


def unital2() -> BinaryAlgebra:
    """Q[s]/(s^2)."""
    return BinaryAlgebra.from_products(QQ, 2, {(0, 0): [1, 0], (0, 1): [0, 1]},
                                       commutative=True, labels=["1", "s"])


def f2f2() -> TernaryAlgebra:
    return direct_sum(f2(), f2())[0]


def f1f2() -> TernaryAlgebra:
    return direct_sum(f1(), f2())[0]


def tilde_f2() -> TernaryAlgebra:
    return tilde(f2()).algebra


def tensor_f2() -> TernaryAlgebra:
    return tensor_ternary(f2(), unital2())


TERNARY = {
    "F1": f1,
    "F2": f2,
    "F3": f3,
    "F2+F2": f2f2,
    "F1+F2": f1f2,
    "tilde(F2)": tilde_f2,
    "F2*unital2": tensor_f2,
    "F4": f4_ternary,
}

BINARY = {
    "nonassoc2": nonassoc_algebra,
    "J3": j3,
    "F4C": f4_algebra,
    "F4hom": f4_hom,
    "unital2": unital2,
}

# fixtures that fail the ternary Jordan identity (see the decisions ledger)
INVALID = {"F3"}


@lru_cache(maxsize=None)
def get(name: str):
    if name in TERNARY:
        return TERNARY[name]()
    return BINARY[name]()
