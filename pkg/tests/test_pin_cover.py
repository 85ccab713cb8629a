import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pinlab.clifford_builder import base_rep, build_rep
from pinlab.exact_core import ONE, ExactMatrix, matmul
from pinlab.pin_cover import (
    DOUBLE_COVER_ROWS,
    CoverElement,
    CoverError,
    LorentzMatrix,
    center,
    cover_element,
    cover_group_classify,
    lorentz_image,
    minus_identity,
    named_element,
    named_elements,
    pin_generator_group,
    planar_cover,
    realize_cover,
    reversion,
    reversion_norm,
    semidirect_check,
    solve_cover,
    spin_identity_check,
    surjectivity_check,
    double_cover_table,
    twisted_cover,
)

D13, H31 = base_rep("Dirac13"), base_rep("HatFrom13")
subsets4 = st.lists(st.integers(0, 3), unique=True, max_size=4).map(lambda x: tuple(sorted(x)))


def test_named_squares_13():
    sq = {k: v.square for k, v in named_elements(D13).items()}
    assert sq == {"P1": -ONE, "P3": ONE, "T": ONE, "PT": -ONE}


@pytest.mark.parametrize("kind", ["HatFrom13", "Majorana31"])
def test_named_squares_31(kind):
    sq = {k: v.square for k, v in named_elements(base_rep(kind)).items()}
    assert sq == {"P1": ONE, "P3": -ONE, "T": -ONE, "PT": -ONE}


def test_named_monomials():
    assert named_element(D13, "P3").indices == (0,)
    assert named_element(D13, "T").indices == (1, 2, 3)
    assert named_element(D13, "P1").indices == (0, 1, 2)
    assert named_element(H31, "P3").indices == (H31.signature.index(4),)


def test_solutions_come_in_sign_pairs():
    for entry in named_elements(D13).values():
        mats = [e.matrix for e in entry.solutions]
        assert len(mats) == 2 and mats[0] == -mats[1]


@settings(max_examples=16, deadline=None)
@given(subsets4, st.sampled_from(["Dirac13", "HatFrom13", "Majorana31"]))
def test_every_monomial_covers_its_image(sub, kind):
    rep = base_rep(kind)
    e = CoverElement(sub, ONE, rep)
    L = lorentz_image(rep, e)
    assert L.is_orthogonal()
    assert e.matrix in solve_cover(rep, L).matrices()
    assert reversion_norm(e) in (ONE, -ONE)


@settings(max_examples=16, deadline=None)
@given(subsets4, subsets4)
def test_covering_map_is_a_homomorphism(s1, s2):
    e1, e2 = CoverElement(s1, ONE, D13), CoverElement(s2, ONE, D13)
    prod = e1 * e2
    assert lorentz_image(D13, prod).matrix == matmul(lorentz_image(D13, e1).matrix, lorentz_image(D13, e2).matrix)


def test_reversion_example():
    e = cover_element(D13, (0, 1, 2))
    assert reversion(e).matrix == -e.matrix


@pytest.mark.parametrize("rep", [D13, H31], ids=["13", "31"])
def test_rotation_covers(rep):
    axes = (1, 2)
    assert planar_cover(rep, axes, 0).matrix == ExactMatrix.identity(4)
    assert planar_cover(rep, axes, 2).matrix == -ExactMatrix.identity(4)
    assert planar_cover(rep, axes, 4).matrix == ExactMatrix.identity(4)
    assert planar_cover(rep, axes, 1).indices == (rep.signature.index(1), rep.signature.index(2))


def test_rotation_float_mode_matches_exact():
    approx = np.array(planar_cover(D13, (1, 2), 2, exact=False))
    assert np.allclose(approx, -np.eye(4))
    quarter = np.array(planar_cover(D13, (1, 2), 0.5, exact=False))
    assert np.allclose(quarter @ quarter @ quarter @ quarter, np.array(planar_cover(D13, (1, 2), 2, exact=False)))


def test_planar_errors():
    with pytest.raises(CoverError):
        planar_cover(D13, (1, 2), "1/2")
    with pytest.raises(CoverError):
        planar_cover(D13, (0, 1), 1)
    with pytest.raises(CoverError):
        planar_cover(D13, (1, 2), 1, kind="Boost")


def test_boost_float_is_hyperbolic():
    b = np.array(planar_cover(D13, (0, 1), 0.7, kind="Boost", exact=False))
    assert np.isclose(np.trace(b).real / 4, np.cosh(0.35))


def test_cover_classes_of_pin_groups():
    c13 = cover_group_classify(D13, "P1")
    c31 = cover_group_classify(H31, "P1")
    assert (c13.a, c13.b, c13.c, c13.commute, c13.group_name, c13.cliffordian) == (-1, 1, 1, -1, "Dihedral", True)
    assert (c31.a, c31.b, c31.c, c31.commute, c31.group_name, c31.cliffordian) == (1, -1, 1, -1, "Dihedral", True)


def test_p3_choice_is_not_cliffordian():
    c13 = cover_group_classify(D13, "P3")
    c31 = cover_group_classify(H31, "P3")
    assert (c13.a, c13.b, c13.c, c13.group_name, c13.cliffordian) == (1, 1, -1, "Dihedral", False)
    assert (c31.a, c31.b, c31.c, c31.group_name, c31.cliffordian) == (-1, -1, -1, "Quaternion", False)


def test_double_cover_rows():
    rows = double_cover_table()
    assert [(r.a, r.b, r.c) for r in rows] == list(DOUBLE_COVER_ROWS)
    assert sum(r.cliffordian for r in rows) == 2
    names = [r.group_name for r in rows]
    assert names.count("Z2×Z4") == 3 and names.count("Dihedral") == 3 and "Quaternion" in names
    for a, b, c in DOUBLE_COVER_ROWS:
        lp, lt = realize_cover(a, b, c)
        assert matmul(lp, lp).scalar_value() == a
        assert matmul(lt, lt).scalar_value() == b


def test_low_dimensional_pin_groups():
    assert pin_generator_group(build_rep(1, 0)) == "Z2×Z2"
    assert pin_generator_group(build_rep(0, 1)) == "Z4"


@pytest.mark.parametrize("ts", [(1, 2), (2, 1), (0, 3), (3, 0), (1, 4), (4, 1), (2, 3), (0, 5)])
def test_odd_dimension_structure(ts):
    rep = build_rep(*ts)
    full = tuple(range(rep.d))
    assert full in center(rep)
    assert not surjectivity_check(rep)
    e = CoverElement(full, ONE, rep)
    assert twisted_cover(rep, e).matrix == minus_identity(rep.d, rep.signature).matrix


def test_even_dimension_reaches_minus_identity():
    assert surjectivity_check(D13)


def test_semidirect_13():
    r = semidirect_check(D13)
    assert (r.group_order, r.even_order, r.index) == (64, 32, 2)
    assert r.even_closed and r.conjugation_preserves_even and r.minus_identity_in_SO


@pytest.mark.parametrize("kind", ["HatFrom13", "Majorana31"])
def test_spin_groups_agree(kind):
    assert spin_identity_check(D13, base_rep(kind))


def test_named_needs_four_dimensions():
    with pytest.raises(CoverError):
        named_elements(build_rep(2, 2))


def test_solve_cover_rejects_wrong_size():
    with pytest.raises(CoverError):
        solve_cover(D13, LorentzMatrix.diag([1, 1], D13.signature))
