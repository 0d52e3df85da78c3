import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ternary_jordan import fixtures as fx
from ternary_jordan.algebra import (BinaryAlgebra, TernaryAlgebra, annihilator, quotient,
                                    random_ternary, structure_subspaces, validate_binary,
                                    validate_ternary)
from ternary_jordan.constructions import (check_epimorphism, d_star, hom_binary,
                                          induced_endomorphism, j_alpha, kerphi_split, l_u_embed,
                                          tensor_ternary, ternary_slice, tilde)
from ternary_jordan.errors import (AlphaNotVanishing, ConditionCheckInfeasible,
                                   KernelNotInvariant, NotADerivation, NotCommutativeAssociative,
                                   NotEpimorphism, NotJordan, SliceConditionFails)
from ternary_jordan.linalg import GF, QQ, Subspace
from ternary_jordan.spaces import SpaceKind, complete_fprime, invariant_space, is_derivation
from ternary_jordan.theorems import d_star_action


def test_j_alpha_reproduces_f3():
    A = j_alpha(fx.get("J3"), [0, 1], strict=False)
    T = A.tensor
    assert T[0, 0, 1].tolist() == [2, 0] and T[0, 1, 1].tolist() == [2, 0]
    assert np.all(T[0, 0, 0] == 0) and np.all(T[1, 1, 1] == 0)
    assert A == fx.get("F3")


def test_j_alpha_strict_rejects_non_jordan_input():
    with pytest.raises(NotJordan):
        j_alpha(fx.get("J3"), [0, 1])


def test_j_alpha_errors_and_zero():
    with pytest.raises(AlphaNotVanishing):
        j_alpha(fx.get("J3"), [1, 0], strict=False)
    A = j_alpha(fx.get("unital2"), [0, 0])
    assert np.all(A.tensor == 0)


def test_j_alpha_char3_fixture_valid():
    A = fx.get("F4")
    assert oracles.is_ternary_jordan(A.tensor, 3, 3)
    assert A.tensor[0, 0, 1].tolist() == [0, 0, 2]


def test_every_admissible_alpha_gives_a_multiple_of_f3():
    # alpha must kill the product space, which contains e, so alpha = (0, c)
    F3 = fx.get("F3").tensor
    for c in (1, 2, -3):
        T = j_alpha(fx.get("J3"), [0, c], strict=False).tensor
        assert np.all(T == F3 * c)


def test_slice():
    S = ternary_slice(fx.get("F1"), [1, 0])
    assert np.all(S.tensor == 0)
    S = ternary_slice(fx.get("tilde(F2)"), [0, 1, 0])
    assert np.all(S.tensor == 0) and validate_binary(S).valid
    with pytest.raises(SliceConditionFails):
        ternary_slice(fx.get("F2"), [1])


def test_slice_center_on_tensor_fixture():
    A = tilde(fx.get("F2*unital2")).algebra
    z0 = [0] * 6
    z0[5] = 1   # a t^3 vector: R(z0, z0) = 0
    S = ternary_slice(A, z0)
    for x in QQ.eye(6):
        assert np.all(S.mul(z0, x) == 0)


def test_hom_binary_omega_nonassoc2():
    r = hom_binary(fx.get("nonassoc2"), fx.OMEGA_DIAG, "omega", strict=False)
    assert r.condition is True and r.method == "basis-pairs"
    assert r.algebra == fx.get("J3")
    # the condition holds but the output is not Jordan: the base is not associative
    assert r.jordan is False
    with pytest.raises(NotCommutativeAssociative):
        hom_binary(fx.get("nonassoc2"), fx.OMEGA_DIAG, "omega")


def test_hom_binary_omega_identity():
    C = fx.get("unital2")
    r = hom_binary(C, np.eye(2, dtype=int).tolist(), "omega")
    assert r.condition and np.all(r.algebra.tensor == 2 * C.tensor)


def test_hom_binary_delta_f4():
    r = hom_binary(fx.get("F4C"), fx.F4_D, "delta")
    assert r.condition and r.jordan and r.method == "exhaustive"
    assert r.algebra.tensor[0, 1].tolist() == [0, 0, 1]
    with pytest.raises(ConditionCheckInfeasible):
        hom_binary(fx.get("F4C"), fx.F4_D, "delta", max_enum=100)
    with pytest.raises(NotADerivation):
        hom_binary(fx.get("F4C"), [[1, 0, 0], [0, 0, 0], [0, 0, 0]], "delta")


def _brute_condition_32(C, h, p):
    """h(b a^2 h^2(a)) = 0 for every a, b."""
    F = C.field
    h = F.array(h)
    for av in itertools.product(range(p), repeat=C.dim):
        a = F.array(list(av))
        a2h = C.mul(C.mul(a, a), F.reduce(h @ h @ a))
        for bv in itertools.product(range(p), repeat=C.dim):
            if np.any(F.reduce(h @ C.mul(F.array(list(bv)), a2h)) != 0):
                return False
    return True


def test_hom_binary_delta_matches_brute_gf5():
    F = GF(5)
    C = BinaryAlgebra.from_products(F, 3, {(0, 0): [1, 0, 0], (0, 1): [0, 1, 0],
                                           (0, 2): [0, 0, 1], (1, 1): [0, 0, 1]}, commutative=True)
    for h in ([[0, 0, 0], [0, 0, 0], [0, 1, 0]], [[0, 0, 0], [0, 1, 0], [0, 0, 2]],
              [[0, 0, 0], [1, 0, 0], [0, 2, 0]]):
        try:
            r = hom_binary(C, h, "delta")
        except NotADerivation:
            continue
        assert r.condition == _brute_condition_32(C, h, 5)
        assert r.method == "polarization"


def test_tensor():
    A = fx.get("F2")
    one = BinaryAlgebra.from_products(QQ, 1, {(0, 0): [1]})
    assert np.all(tensor_ternary(A, one).tensor == A.tensor)
    T = fx.get("F2*unital2")
    assert T.dim == 2 and structure_subspaces(T).perfect and validate_ternary(T).valid
    assert np.all(tensor_ternary(fx.get("F1"), fx.get("unital2")).tensor == 0)
    with pytest.raises(NotCommutativeAssociative):
        tensor_ternary(A, fx.get("nonassoc2"))


def test_tilde_structure():
    t = tilde(fx.get("F2"))
    T = t.algebra
    assert T.dim == 3 and T.tensor[0, 0, 0].tolist() == [0, 0, 1]
    nz = [k for k in itertools.product(range(3), repeat=3) if np.any(T.tensor[k] != 0)]
    assert nz == [(0, 0, 0)]
    assert annihilator(T) == Subspace.span(QQ, 3, [[0, 1, 0], [0, 0, 1]])
    assert t.derived_block == Subspace.span(QQ, 3, [[0, 0, 1]]) and t.u_block.dim == 0
    assert np.all(tilde(fx.get("F1")).algebra.tensor == 0)


@pytest.mark.parametrize("name", ["F2", "F2+F2", "F2*unital2", "F1"])
def test_tilde_grading(name):
    A = fx.get(name)
    T = tilde(A).algebra
    n = A.dim
    for i, j, k in itertools.product(range(3 * n), repeat=3):
        if max(i, j, k) >= n:
            assert np.all(T.tensor[i, j, k] == 0)
        else:
            assert np.all(T.tensor[i, j, k][2 * n:] == A.tensor[i, j, k])


def test_l_u():
    t = tilde(fx.get("F2"))
    assert l_u_embed(t, [[5]]).tolist() == [[5, 0, 0], [0, 0, 0], [0, 0, 15]]
    assert np.all(l_u_embed(t, [[0]]) == 0)
    t1 = tilde(fx.get("F1"))
    f = QQ.array([[1, 2], [3, 4]])
    L = l_u_embed(t1, f)
    assert np.all(L[:2, :2] == f) and np.all(L[2:, :] == 0) and np.all(L[:, 2:] == 0)


def test_l_u_lands_in_der_for_qder_basis():
    A = fx.get("F2*unital2")
    t = tilde(A)
    for f in invariant_space(A, SpaceKind.QDER).maps():
        L = l_u_embed(t, f)
        assert is_derivation(t.algebra, L)
        assert oracles.satisfies(t.algebra.tensor, 6, 0, "Der", L.reshape(-1))


def test_kerphi_split_examples():
    c = kerphi_split(fx.get("F2"))
    assert (c.kernel_phi.dim, c.sym_plus.dim, c.sym_minus.dim) == (0, 1, 0)
    c = kerphi_split(fx.get("F1"))
    assert (c.kernel_phi.dim, c.sym_plus.dim, c.sym_minus.dim) == (8, 6, 2)
    assert kerphi_split(fx.get("F3")).kernel_phi.dim == 7


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_kerphi_dimension_formulas(n):
    c = kerphi_split(TernaryAlgebra.zero(QQ, n))
    assert c.sym_plus.dim == n * n * (n + 1) // 2
    assert c.sym_minus.dim == n * n * (n - 1) // 2
    assert (c.sym_plus + c.sym_minus).is_full


def test_d_star():
    assert d_star(QQ, [[2]]).tolist() == [[6]]
    assert np.all(d_star(QQ, QQ.zeros((2, 2))) == 0)
    assert np.all(d_star(QQ, QQ.eye(2)) == 3 * QQ.eye(8))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9),
       st.lists(st.integers(-3, 3), min_size=9, max_size=9), st.integers(-3, 3))
def test_d_star_linear_and_action(a, b, alpha):
    D1, D2 = QQ.array(a).reshape(3, 3), QQ.array(b).reshape(3, 3)
    lhs = d_star(QQ, alpha * D1 + D2)
    assert np.all(lhs == alpha * d_star(QQ, D1) + d_star(QQ, D2))
    v = QQ.array(list(range(27)))
    assert np.all(QQ.reduce(d_star(QQ, D1) @ v) == d_star_action(QQ, D1, v, 3))


def test_d_star_preserves_split():
    rng = random.Random(8)
    c = kerphi_split(TernaryAlgebra.zero(QQ, 2))
    for _ in range(5):
        D = QQ.array([[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)])
        M = d_star(QQ, D)
        for S in (c.sym_plus, c.sym_minus):
            assert all(S.contains(QQ.reduce(M @ v)) for v in S.vectors())


def test_induced_endomorphism():
    F2 = fx.get("F2")
    assert induced_endomorphism([[1]], [[4]], F2, F2).tolist() == [[4]]
    A = fx.get("F1+F2")
    Q, pi = quotient(A, Subspace.span(QQ, 3, [[1, 0, 0], [0, 1, 0]]))
    f = QQ.array([[1, 2, 0], [3, 4, 0], [0, 0, 7]])
    assert induced_endomorphism(pi, f, A, Q).tolist() == [[7]]
    g = QQ.array([[1, 0, 0], [0, 1, 0], [1, 0, 1]])
    with pytest.raises(KernelNotInvariant):
        induced_endomorphism(pi, g, A, Q)
    with pytest.raises(NotEpimorphism):
        induced_endomorphism([[0, 0, 0]], f, field=QQ)
    B = fx.get("F2*unital2")
    M = QQ.array([[1, 2], [0, 3]])
    assert np.all(induced_endomorphism(QQ.eye(2), M, B, B) == M)
