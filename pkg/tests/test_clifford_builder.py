from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from pinlab.clifford_builder import (
    BASE_KINDS,
    LOW_DIM_TYPE_TO_CLASS,
    Q_I,
    Q_ONE,
    Quaternion,
    are_similar,
    base_rep,
    build_rep,
    chirality,
    classify,
    commutant_dimension,
    direct_sum,
    extend_to_odd,
    is_irreducible,
    monomial_decompose,
    quaternion_matrix,
    reality_census,
    low_dim_rep,
    low_dim_rows,
    tensor_build,
    verify_clifford,
    weyl_project,
)
from pinlab.exact_core import ExactMatrix, I_UNIT, matmul

signatures = st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda ts: 1 <= sum(ts) <= 6)


@pytest.mark.parametrize("kind", BASE_KINDS)
def test_base_reps_satisfy_clifford(kind):
    rep = base_rep(kind)
    assert verify_clifford(rep)
    assert is_irreducible(rep)


@settings(max_examples=25, deadline=None)
@given(signatures)
def test_build_rep_is_clifford_with_right_metric(ts):
    t, s = ts
    rep = build_rep(t, s)
    assert verify_clifford(rep)
    assert sorted(rep.signature.metric, reverse=True) == [1] * t + [-1] * s
    assert rep.dim == 2 ** ((t + s) // 2)


@pytest.mark.parametrize("t,s", [(1, 3), (3, 1), (2, 2), (4, 0), (0, 4), (1, 1)])
def test_even_reps_are_irreducible(t, s):
    assert is_irreducible(build_rep(t, s))


def test_only_the_31_group_has_a_real_representation():
    assert reality_census(base_rep("Majorana31")) == (4, 0, 0)
    assert reality_census(base_rep("Dirac13")) == (3, 1, 0)
    assert reality_census(base_rep("HatFrom13")) == (1, 3, 0)


def test_hat_from_13_is_i_times_standard():
    std, hat = base_rep("Dirac13"), base_rep("HatFrom13")
    for k in (1, 2, 3):
        assert hat.gamma(k) == std.gamma(k).scale(I_UNIT)
    assert hat.gamma(4) == std.gamma(0).scale(I_UNIT)


def test_dirac_and_chiral_are_similar():
    assert are_similar(base_rep("Dirac13"), base_rep("Chiral13"))
    assert are_similar(base_rep("HatFrom13"), base_rep("Majorana31"))


@pytest.mark.parametrize("target", ["AddTime", "AddSpace"])
@pytest.mark.parametrize("branch", ["PlusK", "MinusK"])
@pytest.mark.parametrize("ts", [(1, 1), (2, 0), (0, 2), (1, 3), (3, 1)])
def test_extend_to_odd(ts, target, branch):
    rep = extend_to_odd(build_rep(*ts), target, branch)
    assert verify_clifford(rep)
    assert rep.signature.metric[-1] == (1 if target == "AddTime" else -1)


def test_extend_needs_even():
    with pytest.raises(ValueError):
        extend_to_odd(build_rep(1, 2), "AddTime")


@pytest.mark.parametrize("k_sign", ["KSquaredPlus", "KSquaredMinus"])
def test_tensor_build(k_sign):
    a, b = build_rep(1, 1), build_rep(0, 2)
    rep = tensor_build(a, b, k_sign)
    assert verify_clifford(rep)
    t_b = b.signature.t if k_sign == "KSquaredPlus" else b.signature.s
    assert rep.signature.t == a.signature.t + t_b


def test_chirality_and_weyl_split():
    rep = base_rep("Chiral13")
    ch = chirality(rep)
    assert matmul(ch, ch) == ExactMatrix.identity(4)
    for g in rep.matrices:
        assert matmul(ch, g) == -matmul(g, ch)
    minus, plus = weyl_project(rep, (1, 2, 3, 4))
    assert tuple(a + b for a, b in zip(minus, plus)) == (1, 2, 3, 4)


def test_direct_sum_is_reducible():
    r = build_rep(1, 1)
    ds = direct_sum(r, r)
    assert verify_clifford(ds)
    assert commutant_dimension(ds) == 4


def test_monomial_decompose():
    rep = base_rep("Dirac13")
    x = rep.monomial((0, 2)).scale(-I_UNIT)
    assert monomial_decompose(rep, x) == (-I_UNIT, (0, 2))
    assert monomial_decompose(rep, ExactMatrix.identity(4) + rep.gamma(0)) is None


# classification


def test_classify_examples():
    assert classify(3, 1).label == "R(4)"
    assert classify(1, 3).label == "H(2)"
    assert classify(0, 1).label == "C(1)"
    assert classify(1, 0).label == "R(1)⊕R(1)"
    assert classify(0, 3).label == "H(1)⊕H(1)"


@pytest.mark.parametrize("m,n", [(m, n) for m in range(13) for n in range(13) if 1 <= m + n <= 12])
def test_classify_matches_pauli_string_oracle(m, n):
    assert classify(m, n).label == oracles.classify_oracle(m, n)


@settings(max_examples=60)
@given(st.integers(0, 12), st.integers(0, 12))
def test_period_eight(m, n):
    if m + n < 1:
        return
    a, b, c = classify(m, n), classify(m + 8, n), classify(m, n + 8)
    for x in (b, c):
        assert (x.field_, x.split) == (a.field_, a.split)
        assert x.k == 16 * a.k


@pytest.mark.parametrize("ts", low_dim_rows())
def test_low_dim_rows(ts):
    rep, typ = low_dim_rep(*ts)
    assert verify_clifford(rep)
    assert sorted(rep.signature.metric, reverse=True) == [1] * ts[0] + [-1] * ts[1]
    assert LOW_DIM_TYPE_TO_CLASS[typ] == classify(*ts).label


# quaternion tensor isomorphism

BASIS = [Quaternion.basis(k) for k in range(4)]


def test_quaternion_homomorphism_all_basis_pairs():
    for (a1, b1), (a2, b2) in product(product(BASIS, BASIS), repeat=2):
        lhs = quaternion_matrix(a1 * a2, b1 * b2)
        rhs = matmul(quaternion_matrix(a1, b1), quaternion_matrix(a2, b2))
        assert lhs == rhs


def test_quaternion_M_1_i():
    expected = ExactMatrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    assert quaternion_matrix(Q_ONE, Q_I) == expected


def test_quaternion_matrices_are_real():
    for a, b in product(BASIS, BASIS):
        assert quaternion_matrix(a, b).is_real()
