import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinlab.clifford_builder import base_rep, build_rep
from pinlab.conjugation_suite import (
    ConjugationError,
    Sign,
    Verdict,
    adjoint_sign_table,
    antiunitary_T,
    cc_apply,
    charge_conj,
    cpt_composite,
    hermitian_similarity,
    kramers_check,
    majorana_parity_test,
    odd_conj_choice,
    parity_eigenvalues,
    parity_flip_on_conjugates,
)
from pinlab.exact_core import FOURTH_ROOTS, ONE, ExactMatrix, conjugate, dagger, matmul

D13, H31, M31 = base_rep("Dirac13"), base_rep("HatFrom13"), base_rep("Majorana31")
ALL = [D13, H31, M31, base_rep("Chiral13")]


def test_charge_conjugation_dirac():
    c = charge_conj(D13)
    assert c.sign_convention == Sign.MINUS
    assert c.monomial == (2,) and c.text == "+-g2"
    assert c.cc_star == ONE and c.unique_up_to_scalar


def test_charge_conjugation_hat():
    c = charge_conj(H31)
    assert c.sign_convention == Sign.PLUS
    assert c.monomial == (H31.signature.index(2),) and c.text == "+-gh2"
    assert c.cc_star == ONE


def test_majorana_rep_has_trivial_c():
    c = charge_conj(M31)
    assert c.monomial == () and c.cc_star == ONE


@pytest.mark.parametrize("rep", ALL, ids=lambda r: r.kind)
def test_c_satisfies_definition(rep):
    c = charge_conj(rep)
    s = c.sign_convention.value_int
    for g in rep.matrices:
        assert matmul(c.matrix, conjugate(g)) == matmul(g.scale(s), c.matrix)


@pytest.mark.parametrize("rep", ALL, ids=lambda r: r.kind)
def test_hermitian_similarity_definition(rep):
    for sign in ("Plus", "Minus"):
        h = hermitian_similarity(rep, sign)
        if h.exists:
            s = Sign(sign).value_int
            for g in rep.matrices:
                assert matmul(h.matrix, g) == matmul(dagger(g).scale(s), h.matrix)


def test_h_plus_is_gamma0():
    assert hermitian_similarity(D13, "Plus").text == "+-g0"


@pytest.mark.parametrize("ts", [(1, 2), (2, 1), (0, 3), (3, 0), (1, 4), (4, 1), (2, 3), (3, 2), (0, 5), (5, 0)])
def test_odd_dimension_rules(ts):
    rep = build_rep(*ts)
    h = [s for s in ("Plus", "Minus") if hermitian_similarity(rep, s).exists]
    c = [s for s in ("Plus", "Minus") if charge_conj(rep, s).exists]
    assert len(h) == 1 and len(c) == 1
    rule = odd_conj_choice(*ts)
    assert h[0] == rule["H"].value and c[0] == rule["C"].value


def test_odd_rule_needs_odd():
    with pytest.raises(ConjugationError):
        odd_conj_choice(1, 3)


@pytest.mark.parametrize("rep", [D13, H31, M31], ids=lambda r: r.kind)
@pytest.mark.parametrize("parity", ["P1", "P3"])
def test_adjoint_signs(rep, parity):
    assert adjoint_sign_table(rep, parity) == {"1": 1, "P": 1, "T": -1, "PT": -1}


def test_majorana_discrimination():
    r13, r31 = majorana_parity_test(D13), majorana_parity_test(H31)
    assert r13.verdict == Verdict.INCOMPATIBLE and set(r13.signs.values()) == {-1}
    assert r31.verdict == Verdict.COMPATIBLE and set(r31.signs.values()) == {1}
    assert majorana_parity_test(M31).verdict == Verdict.COMPATIBLE


def test_parity_eigenvalues():
    assert parity_eigenvalues(D13) == {"1": 2, "-1": 2}
    assert parity_eigenvalues(H31) == {"i": 2, "-i": 2}


@pytest.mark.parametrize("rep", [D13, H31], ids=lambda r: r.kind)
def test_conjugate_flips_parity_eigenvalue(rep):
    assert parity_flip_on_conjugates(rep)


C_PAIR = [charge_conj(D13), charge_conj(H31)]


@given(st.lists(st.sampled_from(FOURTH_ROOTS), min_size=4, max_size=4))
def test_charge_conjugation_is_an_involution_up_to_cc_star(psi):
    for c in C_PAIR:
        twice = cc_apply(c.matrix, cc_apply(c.matrix, psi))
        assert twice == tuple(c.cc_star * x for x in psi)


def test_antiunitary_time_reversal_13():
    at = antiunitary_T(D13)
    assert at.text == "+g1 g3"
    assert at.peskin_schroeder == "-g1 g3"
    assert at.similarity_holds
    assert at.c_sign == -1
    # the image is sigma_C T, which is P(3) in this group
    assert at.image.matrix == ExactMatrix.diag([1, -1, -1, -1])


def test_antiunitary_time_reversal_31():
    at = antiunitary_T(H31)
    assert at.similarity_holds and at.c_sign == 1 and at.peskin_schroeder is None


@pytest.mark.parametrize("rep", [D13, H31, M31], ids=lambda r: r.kind)
def test_kramers(rep):
    assert kramers_check(rep) == -ONE


@pytest.mark.parametrize("rep", [D13, H31, M31], ids=lambda r: r.kind)
def test_cpt(rep):
    r = cpt_composite(rep)
    assert r.holds
    assert r.scalar in FOURTH_ROOTS
    assert r.matrix == rep.all_product().scale(r.scalar)
    assert r.pt_image_is_minus_identity and r.pt_image_det == ONE
