"""The sixteen acceptance criteria, one test each.

Every test records its outcome in conftest.ACCEPTANCE; the terminal summary
prints one PASS/FAIL line per criterion.  Exact criteria compare exact
values, so their tolerance is zero.
"""

import functools
import random
import time
from fractions import Fraction
from itertools import product

import numpy as np

import conftest
import oracles
from pinlab.clifford_builder import (
    Q_I,
    Q_ONE,
    LOW_DIM_TYPE_TO_CLASS,
    Quaternion,
    base_rep,
    build_rep,
    classify,
    quaternion_matrix,
    low_dim_rep,
    low_dim_rows,
)
from pinlab.conjugation_suite import (
    Verdict,
    adjoint_sign_table,
    charge_conj,
    cpt_composite,
    hermitian_similarity,
    kramers_check,
    majorana_parity_test,
    odd_conj_choice,
)
from pinlab.exact_core import FOURTH_ROOTS, I_UNIT, ONE, ExactMatrix, GaussScalar, gs, inverse, kron, matmul
from pinlab.klein_currents import KleinConfig, PinKind, current_table, d_g_ren, g_ren
from pinlab.pin_cover import (
    CoverElement,
    center,
    cover_group_classify,
    minus_identity,
    named_elements,
    pin_generator_group,
    planar_cover,
    surjectivity_check,
    twisted_cover,
)
from pinlab.qft_engine import (
    FourMomentum,
    expected_spin_sum,
    pion_capture,
    plane_wave_solutions,
    positronium_phases,
    sigma_decay_trace,
    sigma_kinematics_sample,
    spin_sum,
    trace_product,
)

D13, H31 = base_rep("Dirac13"), base_rep("HatFrom13")
ETA = (1, -1, -1, -1)
HAT = {0: 4, 1: 1, 2: 2, 3: 3}  # standard label -> hatted label


def criterion(num: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            ok = False
            try:
                fn(*args, **kwargs)
                ok = True
            finally:
                conftest.ACCEPTANCE.append((num, title, ok))
                print(f"[{'PASS' if ok else 'FAIL'}] {num:2d} {title}")
        return run
    return wrap


@criterion(1, "squares of the named cover elements")
def test_criterion_01_squares():
    sq13 = {k: v.square for k, v in named_elements(D13).items()}
    sq31 = {k: v.square for k, v in named_elements(H31).items()}
    assert (sq13["P1"], sq13["P3"], sq13["T"]) == (-ONE, ONE, ONE)
    assert (sq31["P1"], sq31["P3"], sq31["T"]) == (ONE, -ONE, -ONE)


@criterion(2, "2pi and 4pi rotation covers")
def test_criterion_02_rotations():
    one = ExactMatrix.identity(4)
    for rep in (D13, H31):
        assert planar_cover(rep, (1, 2), 2).matrix == -one
        assert planar_cover(rep, (1, 2), 4).matrix == one


@criterion(3, "cliffordian double covers and low-dimensional pin groups")
def test_criterion_03_double_covers():
    c13, c31 = cover_group_classify(D13, "P1"), cover_group_classify(H31, "P1")
    assert (c13.a, c13.b, c13.c, c13.group_name, c13.commute, c13.cliffordian) == (-1, 1, 1, "Dihedral", -1, True)
    assert (c31.a, c31.b, c31.c, c31.group_name, c31.commute, c31.cliffordian) == (1, -1, 1, "Dihedral", -1, True)
    assert pin_generator_group(build_rep(1, 0)) == "Z2×Z2"
    assert pin_generator_group(build_rep(0, 1)) == "Z4"


@criterion(4, "charge conjugation matrices")
def test_criterion_04_charge_conjugation():
    c, ch = charge_conj(D13), charge_conj(H31)
    assert c.monomial == (2,) and c.text == "+-g2"
    assert ch.monomial == (H31.signature.index(2),) and ch.text == "+-gh2"
    assert c.cc_star == ONE and ch.cc_star == ONE


@criterion(5, "Majorana condition versus parity")
def test_criterion_05_majorana():
    for parity in ("P1", "P3"):
        r13, r31 = majorana_parity_test(D13, parity), majorana_parity_test(H31, parity)
        assert r13.verdict == Verdict.INCOMPATIBLE and set(r13.signs.values()) == {-1}
        assert r31.verdict == Verdict.COMPATIBLE and set(r31.signs.values()) == {1}


@criterion(6, "Kramers square versus unitary T square")
def test_criterion_06_kramers():
    assert kramers_check(D13) == -ONE and kramers_check(H31) == -ONE
    assert named_elements(D13)["T"].square == ONE
    assert named_elements(H31)["T"].square == -ONE


@criterion(7, "CPT composite proportional to the all-generator product")
def test_criterion_07_cpt():
    for rep in (D13, H31):
        r = cpt_composite(rep)
        assert r.scalar in FOURTH_ROOTS
        assert r.matrix == rep.all_product().scale(r.scalar)


@criterion(8, "Dirac-adjoint signs")
def test_criterion_08_adjoint_signs():
    for rep in (D13, H31):
        assert adjoint_sign_table(rep) == {"1": 1, "P": 1, "T": -1, "PT": -1}


def _momentum(rng):
    """Exact on-shell momentum whose E + m is a rational square times 2m."""
    r = 1 + Fraction(rng.randint(1, 9), rng.randint(1, 5))
    t = Fraction(rng.randint(1, 9), rng.randint(1, 5))
    u = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    v = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    m = 2 * r * t * t
    den = 1 + u * u + v * v
    size = m * (r * r - 1) / (2 * r)
    return FourMomentum(m * (r * r + 1) / (2 * r), size * 2 * u / den, size * 2 * v / den,
                        size * (1 - u * u - v * v) / den, m)


@criterion(9, "two- and four-traces, spin sums on exact momenta")
def test_criterion_09_traces_and_spin_sums():
    for mu, nu in product(range(4), repeat=2):
        expect = gs(4 * ETA[mu] if mu == nu else 0)
        assert trace_product(D13, [mu, nu]) == expect
        assert trace_product(H31, [HAT[mu], HAT[nu]]) == -expect
    # the sign that flips between the two- and four-gamma traces: the hat
    # two-traces carry -1 relative to the standard ones, the four-traces +1
    for labels in product(range(4), repeat=4):
        assert trace_product(H31, [HAT[x] for x in labels]) == trace_product(D13, list(labels))
    rng = random.Random(2024)
    seen = 0
    while seen < 10:
        p = _momentum(rng)
        assert p.is_on_shell()
        for rep in (D13, H31):
            pw = plane_wave_solutions(rep, p)
            assert pw.normalized
            for which in ("U", "V"):
                assert spin_sum(rep, p, which) == expected_spin_sum(rep, p, which)
        seen += 1
    p = FourMomentum.on_shell(1, Fraction(3, 4))
    one = ExactMatrix.identity(4)
    # slash is Gamma_mu p^mu with the generators as lower-index gammas
    pslash = D13.gamma(0).scale(Fraction(5, 4)) + D13.gamma(1).scale(Fraction(3, 4))
    assert spin_sum(D13, p, "U") == pslash + one
    pslash_hat = H31.gamma(1).scale(-Fraction(3, 4)) + H31.gamma(4).scale(-Fraction(5, 4))
    assert spin_sum(H31, p, "U") == pslash_hat.scale(-I_UNIT) + one


@criterion(10, "Sigma0 decay: standard/hat ratio constant and positive")
def test_criterion_10_sigma():
    rng = random.Random(10)
    kins = [sigma_kinematics_sample(rng) for _ in range(10)]
    for hyp in ("Plus", "Minus"):
        ratios = set()
        for kin in kins:
            std, hat = sigma_decay_trace("Standard", hyp, kin), sigma_decay_trace("Hat", hyp, kin)
            assert std.is_real and hat.is_real and hat.re != 0
            ratios.add(std.re / hat.re)
        assert len(ratios) == 1 and next(iter(ratios)) > 0


# the mod-8 table: (m - n) mod 8 -> field and whether the algebra is a direct sum
MOD8 = {0: ("R", False), 1: ("R", True), 2: ("R", False), 3: ("C", False),
          4: ("H", False), 5: ("H", True), 6: ("H", False), 7: ("C", False)}


def _mod8_label(m: int, n: int) -> str:
    field, split = MOD8[(m - n) % 8]
    dim = 2 ** (m + n)
    per = {"R": 1, "C": 2, "H": 4}[field] * (2 if split else 1)
    k = int(round((dim / per) ** 0.5))
    return f"{field}({k})⊕{field}({k})" if split else f"{field}({k})"


@criterion(11, "mod-8 classification, periodicity and low-dimensional rows")
def test_criterion_11_classification():
    for m in range(13):
        for n in range(13 - m):
            if m + n == 0:
                continue
            c = classify(m, n)
            assert c.label == _mod8_label(m, n) == oracles.classify_oracle(m, n)
            for x in (classify(m + 8, n), classify(m, n + 8)):
                assert (x.field_, x.split, x.k) == (c.field_, c.split, 16 * c.k)
    for ts in low_dim_rows():
        _, typ = low_dim_rep(*ts)
        assert LOW_DIM_TYPE_TO_CLASS[typ] == classify(*ts).label


@criterion(12, "odd-dimensional center, covers and conjugations")
def test_criterion_12_odd_dimensions():
    for t, s in [(t, d - t) for d in (3, 5) for t in range(d + 1)]:
        rep = build_rep(t, s)
        full = tuple(range(rep.d))
        assert full in center(rep)
        assert not surjectivity_check(rep)
        assert twisted_cover(rep, CoverElement(full, ONE, rep)).matrix == minus_identity(rep.d, rep.signature).matrix
        h = [x for x in ("Plus", "Minus") if hermitian_similarity(rep, x).exists]
        c = [x for x in ("Plus", "Minus") if charge_conj(rep, x).exists]
        rule = odd_conj_choice(t, s)
        assert h == [rule["H"].value] and c == [rule["C"].value]


@criterion(13, "quaternion tensor isomorphism")
def test_criterion_13_quaternions():
    start = time.perf_counter()
    basis = [Quaternion.basis(k) for k in range(4)]
    for (a1, b1), (a2, b2) in product(product(basis, basis), repeat=2):
        assert quaternion_matrix(a1 * a2, b1 * b2) == matmul(quaternion_matrix(a1, b1), quaternion_matrix(a2, b2))
    assert quaternion_matrix(Q_ONE, Q_I) == ExactMatrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    assert time.perf_counter() - start < 1


@criterion(14, "pion parity and positronium selection rules")
def test_criterion_14_selection_rules():
    for eta_n in (ONE, I_UNIT, -I_UNIT):
        assert pion_capture(eta_n) == -ONE
    expect = {(0, 0): (1, 2), (0, 1): (-1, 3), (1, 0): (-1, 3), (1, 1): (1, 2)}
    for (l, s), (c, photons) in expect.items():
        r = positronium_phases(l, s, eta_product=-1, xi_product=1)
        assert (r.c_parity, r.photons) == (c, photons)


@criterion(15, "Klein-bottle current patterns")
def test_criterion_15_klein():
    start = time.perf_counter()
    expected = {"13": ("G0G1",), "31": ("G5",)}
    for pin, pattern in expected.items():
        cfg = KleinConfig(PinKind.parse(pin), a=1.0, b=1.0, N=64, tolerance=1e-8, x=(0.0, 0.0, 0.0, 0.3))
        assert current_table(cfg).pattern == pattern
        for axis in (0, 1):
            v = d_g_ren(cfg, axis)
            assert v.scalar_part == 0 and v.matrix_part_coefficient == 0
        assert current_table(cfg.with_(N=128)).pattern == pattern
        largest = [max(abs(v) for v in current_table(cfg.with_(a=s, b=s)).values.values())
                   for s in (1.0, 10.0, 100.0, 1000.0)]
        assert all(y < x for x, y in zip(largest, largest[1:]))
        assert current_table(cfg.with_(a=1e3, b=1e3)).pattern == ()
    assert time.perf_counter() - start < 10


def _random_matrix(rng, n):
    def frac():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 6))
    return ExactMatrix([[GaussScalar(frac(), frac()) for _ in range(n)] for _ in range(n)])


@criterion(16, "oracle equivalence: Klein sum and exact linear algebra")
def test_criterion_16_oracles():
    for pin in ("13", "31"):
        for xp in ((0.0, 0.0, 0.1, 0.3), (0.05, 0.2, 0.15, 0.1)):
            cfg = KleinConfig(PinKind.parse(pin), a=1.0, b=1.3, N=1, x=(0.0, 0.0, 0.1, 0.3), xp=xp)
            ours = g_ren(cfg).matrix()
            ref = oracles.klein_g_ren_loop(pin, 1.0, 1.3, 1, cfg.x, cfg.x_prime)
            assert np.max(np.abs(ours - ref)) <= 1e-12 * np.max(np.abs(ref))
    rng = random.Random(16)
    for _ in range(20):
        n = rng.randint(1, 4)
        a, b = _random_matrix(rng, n), _random_matrix(rng, n)
        pa, pb = oracles.to_pairs(a), oracles.to_pairs(b)
        assert oracles.to_pairs(matmul(a, b)) == oracles.matmul_loops(pa, pb)
        assert oracles.to_pairs(kron(a, b)) == oracles.kron_loops(pa, pb)
        assert oracles.to_pairs(inverse(a)) == oracles.sympy_inverse(pa)
