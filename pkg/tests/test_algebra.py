import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ternary_jordan import fixtures as fx
from ternary_jordan.algebra import (BinaryAlgebra, TernaryAlgebra, annihilator, centralizer,
                                    derived, direct_sum, homomorphism_witness, ideal_generated,
                                    ideal_tools, inner_commutator, invariant_form_check,
                                    invariant_forms, is_ideal, mult_algebra, quotient,
                                    random_ternary, right_mul, structure_subspaces,
                                    triple_product, validate_binary, validate_ternary)
from ternary_jordan.errors import (DimensionMismatch, IndexOutOfRange, NotAnIdeal,
                                   SymmetryConflict)
from ternary_jordan.linalg import GF, QQ, Subspace

E = QQ.array([1, 0])
U = QQ.array([0, 1])


def test_triple_products():
    F1, F2, F3 = fx.get("F1"), fx.get("F2"), fx.get("F3")
    assert list(triple_product(F1, [1, 2], [3, 4], [5, 6])) == [0, 0]
    assert list(triple_product(F2, [1], [1], [1])) == [1]
    # [[u, e+u, e]] = [[u,e,e]] + [[u,u,e]] = 2e + 2e
    assert list(triple_product(F3, U, E + U, E)) == [4, 0]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_triple_product_symmetric(c):
    A = fx.get("F1+F2")
    x, y, z = c[:3], c[3:], [c[0] - c[5], c[1], 2]
    ref = triple_product(A, x, y, z)
    for p in itertools.permutations((x, y, z)):
        assert np.all(triple_product(A, *p) == ref)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        triple_product(fx.get("F2"), [1, 0], [1], [1])


def test_right_mul_and_commutator():
    F2 = fx.get("F2")
    assert right_mul(F2, [1], [1]).tolist() == [[1]]
    assert np.all(right_mul(fx.get("F1"), [1, 2], [0, 1]) == 0)
    assert inner_commutator(F2, [1], [1], [1], [1]).tolist() == [[0]]


def test_from_products_conflict_and_range():
    with pytest.raises(SymmetryConflict):
        TernaryAlgebra.from_products(QQ, 2, {(0, 0, 1): [2, 0], (0, 1, 0): [3, 0]})
    with pytest.raises(IndexOutOfRange):
        TernaryAlgebra.from_products(QQ, 2, {(0, 0, 2): [1, 0]})


@pytest.mark.parametrize("name", ["F1", "F2", "F2+F2", "F1+F2", "tilde(F2)", "F2*unital2", "F4"])
def test_valid_fixtures_agree_with_oracle(name):
    A = fx.get(name)
    assert oracles.is_symmetric(A.tensor, A.dim)
    assert oracles.is_ternary_jordan(A.tensor, A.dim, A.field.p)
    rep = validate_ternary(A)
    assert rep.valid and rep.witnesses == []


def test_f3_is_not_ternary_jordan():
    # the commutator [R(e,e), R(e,u)] fails the Leibniz rule on (e,u,u)
    A = fx.get("F3")
    assert oracles.is_ternary_jordan(A.tensor, 2) is False
    rep = validate_ternary(A)
    assert rep.symmetric and not rep.jordan
    assert rep.witnesses


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_validation_matches_oracle_gf5(seed):
    A = random_ternary(GF(5), 2, random.Random(seed), density=0.5)
    assert validate_ternary(A).valid == oracles.is_ternary_jordan(A.tensor, 2, 5)


def test_validation_matches_oracle_rational():
    rng = random.Random(11)
    for _ in range(30):
        A = random_ternary(QQ, 2, rng, density=0.4, values=[-1, 1, Fraction(1, 2)])
        assert validate_ternary(A).valid == oracles.is_ternary_jordan(A.tensor, 2)


def _binary_jordan_brute(J, p=0):
    """(x^2 y) x = x^2 (y x) on coefficient vectors over a small grid."""
    F = J.field
    rng = range(-2, 3) if not p else range(p)
    for xv in itertools.product(rng, repeat=J.dim):
        for yv in itertools.product(rng, repeat=J.dim):
            x, y = F.array(list(xv)), F.array(list(yv))
            x2 = J.mul(x, x)
            if np.any(F.reduce(J.mul(J.mul(x2, y), x) - J.mul(x2, J.mul(y, x))) != 0):
                return False
    return True


def test_binary_validation():
    Z = BinaryAlgebra.from_products(QQ, 2, {})
    assert validate_binary(Z).valid
    J3 = fx.get("J3")
    assert J3.tensor[0, 0].tolist() == [2, 0] and J3.tensor[0, 1].tolist() == [1, 0]
    assert J3.tensor[1, 1].tolist() == [0, 0]
    assert _binary_jordan_brute(J3) is False
    assert not validate_binary(J3).valid
    non = BinaryAlgebra.from_products(QQ, 2, {(0, 0): [0, 1], (0, 1): [1, 0]}, commutative=True)
    assert validate_binary(non).valid == _binary_jordan_brute(non)
    assert not validate_binary(non).valid
    U2 = fx.get("unital2")
    assert validate_binary(U2).valid and _binary_jordan_brute(U2)


def test_nonassoc_algebra_not_associative():
    C = fx.get("nonassoc2")
    assert C.is_commutative and not C.is_associative


def test_structure_subspaces():
    F1, F2, F3 = fx.get("F1"), fx.get("F2"), fx.get("F3")
    assert derived(F1).dim == 0 and annihilator(F1).dim == 2
    assert derived(F2).is_full and annihilator(F2).dim == 0
    assert structure_subspaces(F2).perfect
    assert derived(F3) == Subspace.span(QQ, 2, [[1, 0]]) and annihilator(F3).dim == 0


@pytest.mark.parametrize("name", list(fx.TERNARY))
def test_annihilator_is_ideal(name):
    A = fx.get(name)
    assert ideal_tools(A, annihilator(A)).is_ideal


def test_ideal_tools():
    F1, F2, F3 = fx.get("F1"), fx.get("F2"), fx.get("F3")
    r = ideal_tools(F1, Subspace.span(QQ, 2, [[1, 0]]))
    assert r.is_ideal and r.centralizer.is_full
    r = ideal_tools(F2, Subspace.full(QQ, 1))
    assert r.is_ideal and r.is_perfect_ideal and r.centralizer.dim == 0
    assert not is_ideal(F3, Subspace.span(QQ, 2, [[0, 1]]))


def test_centralizer_brute_force_gf5():
    rng = random.Random(2)
    F = GF(5)
    for _ in range(10):
        A = random_ternary(F, 2, rng, density=0.5)
        S = Subspace.span(F, 2, [[1, rng.randrange(5)]])
        C = centralizer(A, S)
        members = [v for v in itertools.product(range(5), repeat=2)
                   if all(np.all(triple_product(A, list(v), s, z) == 0)
                          for s in S.vectors() for z in F.eye(2))]
        assert len(members) == 5 ** C.dim


def test_direct_sum_and_quotient():
    S, (ia, ib) = direct_sum(fx.get("F2"), fx.get("F2"))
    assert S.dim == 2
    T = S.tensor
    assert T[0, 0, 0].tolist() == [1, 0] and T[1, 1, 1].tolist() == [0, 1]
    assert np.all(T[0, 0, 1] == 0) and np.all(T[0, 1, 1] == 0)
    Q, pi = quotient(fx.get("F1"), Subspace.span(QQ, 2, [[1, 0]]))
    assert Q.dim == 1 and np.all(Q.tensor == 0)
    A = fx.get("F1+F2")
    I = Subspace.span(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    Q, pi = quotient(A, I)
    assert Q.dim == 1 and Q.tensor[0, 0, 0, 0] == 1
    assert homomorphism_witness(A, Q, pi) is None
    with pytest.raises(NotAnIdeal):
        quotient(fx.get("F3"), Subspace.span(QQ, 2, [[0, 1]]))


def test_z_of_direct_sum():
    A, B = fx.get("F1"), fx.get("F2")
    S, (ia, ib) = direct_sum(A, B)
    emb = Subspace.span(QQ, 3, [QQ.reduce(ia @ v) for v in annihilator(A).vectors()]
                        + [QQ.reduce(ib @ v) for v in annihilator(B).vectors()])
    assert annihilator(S) == emb


def test_invariant_forms():
    assert invariant_form_check(fx.get("F2"), [[7]])
    assert invariant_form_check(fx.get("F1"), [[1, 2], [3, 4]])
    assert not invariant_form_check(fx.get("F3"), [[1, 0], [0, 1]])


def test_invariant_forms_space_brute_gf3():
    A = fx.get("F4")
    forms = invariant_forms(A)
    count = 0
    for g in itertools.product(range(3), repeat=9):
        if invariant_form_check(A, np.array(g, dtype=object).reshape(3, 3)):
            count += 1
    assert count == 3 ** forms.dim


def test_mult_algebra():
    assert mult_algebra(fx.get("F1")).dim == 0
    assert mult_algebra(fx.get("F2")).dim == 1
    M = mult_algebra(fx.get("F3"))
    # closure by repeated products of the generators
    gens = [right_mul(fx.get("F3"), x, y) for x, y in ((E, E), (E, U), (U, U))]
    span = Subspace.span(QQ, 4, [g.reshape(-1) for g in gens])
    for _ in range(3):
        mats = [np.array(v, dtype=object).reshape(2, 2) for v in span.basis]
        span = Subspace.span(QQ, 4, list(span.basis) + [(a @ b).reshape(-1) for a in mats
                                                        for b in mats])
    assert M.space == span and M.dim == 2


def test_ideal_generated():
    A = fx.get("F2+F2")
    I = ideal_generated(A, [QQ.array([1, 0])])
    assert I == Subspace.span(QQ, 2, [[1, 0]])
