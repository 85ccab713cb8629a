"""Traces, plane waves and spin sums in both Pin groups, the Sigma0 decay
trace, and intrinsic-parity bookkeeping.

Momenta are stored as standard contravariant components (E, px, py, pz).
For a space-first (hatted) representation the covariant components are
re-indexed, p_hat_mu = (p_1, p_2, p_3, p_0), so plane waves keep the same
exp(-i p.x) phase in both groups.  The Dirac operator on a plane wave is
D = pslash (standard) or D = -i pslash_hat (hatted), and both square to m^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .clifford_builder import GammaRep, IndexConvention, base_rep, chirality
from .exact_core import (
    FOURTH_ROOTS,
    I_UNIT,
    ONE,
    ZERO,
    ExactMatrix,
    GaussScalar,
    dagger,
    gs,
    matmul,
    mat_product,
    nullspace,
    outer,
    rational_sqrt,
    trace,
    vdot,
)


class QFTError(ValueError):
    pass


# traces


def trace_product(rep: GammaRep, labels: Sequence[int]) -> GaussScalar:
    """tr(Gamma_{l1} ... Gamma_{lk}) with display labels."""
    if not labels:
        return gs(rep.dim)
    return trace(mat_product((rep.gamma(l) for l in labels), rep.dim))


def trace_sign_law(n_gammas: int) -> int:
    """tr(hat product) / tr(standard product) for n gammas, hat = i * standard.

    The factor is i^n = (-1)^(n/2): -1 for n = 2 mod 4 and +1 for n = 0 mod 4.
    """
    if n_gammas < 0 or n_gammas % 2:
        raise QFTError("trace_sign_law needs a non-negative even length")
    return -1 if n_gammas % 4 == 2 else 1


# momenta


@dataclass(frozen=True)
class FourMomentum:
    E: Fraction
    px: Fraction
    py: Fraction
    pz: Fraction
    mass: Fraction | None = None

    def __post_init__(self):
        for name in ("E", "px", "py", "pz"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.mass is not None:
            object.__setattr__(self, "mass", Fraction(self.mass))
            if self.mass < 0:
                raise QFTError("mass must be non-negative")

    @property
    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.E, self.px, self.py, self.pz)

    def square(self) -> Fraction:
        return self.E ** 2 - self.px ** 2 - self.py ** 2 - self.pz ** 2

    def is_on_shell(self) -> bool:
        return self.mass is not None and self.square() == self.mass ** 2

    def __add__(self, o: "FourMomentum") -> "FourMomentum":
        return FourMomentum(*(a + b for a, b in zip(self.components, o.components)))

    def __sub__(self, o: "FourMomentum") -> "FourMomentum":
        return FourMomentum(*(a - b for a, b in zip(self.components, o.components)))

    @classmethod
    def on_shell(cls, mass, px=0, py=0, pz=0) -> "FourMomentum":
        m, px, py, pz = (Fraction(x) for x in (mass, px, py, pz))
        e = rational_sqrt(m * m + px * px + py * py + pz * pz)
        if e is None:
            raise QFTError("energy is irrational for these components")
        return cls(e, px, py, pz, m)

    def to_json(self) -> dict:
        d = {"E": str(self.E), "px": str(self.px), "py": str(self.py), "pz": str(self.pz)}
        if self.mass is not None:
            d["mass"] = str(self.mass)
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "FourMomentum":
        return cls(Fraction(d["E"]), Fraction(d["px"]), Fraction(d["py"]), Fraction(d["pz"]),
                   Fraction(d["mass"]) if d.get("mass") is not None else None)


def _is_hat(rep: GammaRep) -> bool:
    return rep.signature.convention == IndexConvention.SPACE_FIRST


def _check_four(rep: GammaRep) -> None:
    if rep.d != 4 or rep.signature.t + rep.signature.s != 4:
        raise QFTError("plane waves need a four-dimensional representation")
    ok = (rep.signature.metric == (1, -1, -1, -1)) if not _is_hat(rep) else (rep.signature.metric == (1, 1, 1, -1))
    if not ok:
        raise QFTError("expected (1,3) time-first or (3,1) space-first generators")


def lower_components(rep: GammaRep, p: FourMomentum) -> tuple[Fraction, ...]:
    """Covariant components in the generator order of ``rep``."""
    e, x, y, z = p.components
    if _is_hat(rep):
        return (-x, -y, -z, e)
    return (e, -x, -y, -z)


def upper_components(rep: GammaRep, p: FourMomentum) -> tuple[Fraction, ...]:
    low = lower_components(rep, p)
    return tuple(m * c for m, c in zip(rep.signature.metric, low))


def slash(rep: GammaRep, p: FourMomentum) -> ExactMatrix:
    """Gamma^mu p_mu."""
    acc = ExactMatrix.zeros(rep.dim)
    for g, c in zip(rep.matrices, upper_components(rep, p)):
        if c:
            acc = acc + g.scale(c)
    return acc


def dirac_operator(rep: GammaRep, p: FourMomentum) -> ExactMatrix:
    """pslash, or -i pslash_hat for the hatted group."""
    s = slash(rep, p)
    return s.scale(-I_UNIT) if _is_hat(rep) else s


def bar_matrix(rep: GammaRep) -> ExactMatrix:
    """B with psibar = psi^dagger B: Gamma_0 or i Gamma_hat_4."""
    _check_four(rep)
    if _is_hat(rep):
        return rep.gamma(4).scale(I_UNIT)
    return rep.gamma(0)


def bar(rep: GammaRep, psi: Sequence[GaussScalar]) -> tuple:
    b = bar_matrix(rep)
    conj = [x.conjugate() for x in psi]
    return tuple(sum((conj[k] * b.rows[k][j] for k in range(len(psi))), ZERO) for j in range(len(psi)))


def bar_op(rep: GammaRep, m: ExactMatrix) -> ExactMatrix:
    """B M^dagger B, the matrix with (psibar M chi)^* = chibar Mbar psi."""
    b = bar_matrix(rep)
    return matmul(matmul(b, dagger(m)), b)


# plane waves


def _gram_schmidt(vecs: Sequence[tuple]) -> list[tuple]:
    out: list[tuple] = []
    for v in vecs:
        w = tuple(v)
        for u in out:
            c = vdot(u, w) / vdot(u, u)
            w = tuple(a - c * b for a, b in zip(w, u))
        out.append(w)
    return out


def _rebalance(xis: list[tuple], scale: Fraction) -> list[tuple]:
    """Swap an orthogonal equal-norm pair for xi1 +- xi2 when that makes the norms rational squares."""
    if len(xis) != 2:
        return xis
    n1, n2 = vdot(xis[0], xis[0]).re, vdot(xis[1], xis[1]).re
    if n1 != n2 or rational_sqrt(scale * n1) is not None or rational_sqrt(2 * scale * n1) is None:
        return xis
    a, b = xis
    return [tuple(x + y for x, y in zip(a, b)), tuple(x - y for x, y in zip(a, b))]


@dataclass
class PlaneWaves:
    u: list[tuple]
    v: list[tuple]
    u_norm: list[Fraction]  # N_s with ubar u = 2m N_s before any rescaling (1 once normalized)
    v_norm: list[Fraction]
    normalized: bool

    def to_json(self) -> dict:
        return {"u": [[x.short() for x in s] for s in self.u], "v": [[x.short() for x in s] for s in self.v],
                "u_norm": [str(x) for x in self.u_norm], "v_norm": [str(x) for x in self.v_norm],
                "normalized": self.normalized}


def plane_wave_solutions(rep: GammaRep, p: FourMomentum) -> PlaneWaves:
    """Bases of ker(D - m) and ker(D + m).

    u_s = (D + m) xi_s with B xi = xi; v_s = (m - D) xi'_s with B xi' = -xi'.
    Spinors are scaled to ubar u = 2m and vbar v = -2m whenever the required
    square root is rational; otherwise the norms are reported in ``u_norm``
    and ``v_norm`` and spin sums divide by them.
    """
    _check_four(rep)
    if p.mass is None or p.mass <= 0:
        raise QFTError("plane waves need a positive mass")
    if not p.is_on_shell():
        raise QFTError("momentum is off shell")
    m = p.mass
    d = dirac_operator(rep, p)
    b = bar_matrix(rep)
    one = ExactMatrix.identity(rep.dim)
    xi_u = _gram_schmidt(nullspace(b - one))
    xi_v = _gram_schmidt(nullspace(b + one))
    up, vm = d + one.scale(m), one.scale(m) - d
    xi_u, xi_v = _rebalance(xi_u, p.E + m), _rebalance(xi_v, p.E + m)
    us, vs, un, vn = [], [], [], []
    normalized = True
    for xis, op, out, norms in ((xi_u, up, us, un), (xi_v, vm, vs, vn)):
        for xi in xis:
            n = (p.E + m) * vdot(xi, xi).re
            vec = op.apply(xi)
            r = rational_sqrt(n)
            if r is not None:
                vec = tuple(x / r for x in vec)
                norms.append(Fraction(1))
            else:
                normalized = False
                norms.append(n)
            out.append(vec)
    return PlaneWaves(us, vs, un, vn, normalized)


class Which(str, Enum):
    U = "U"
    V = "V"


def spin_sum(rep: GammaRep, p: FourMomentum, which: Which | str = Which.U) -> ExactMatrix:
    which = Which(which)
    pw = plane_wave_solutions(rep, p)
    vecs, norms = (pw.u, pw.u_norm) if which == Which.U else (pw.v, pw.v_norm)
    acc = ExactMatrix.zeros(rep.dim)
    for s, n in zip(vecs, norms):
        acc = acc + outer(s, bar(rep, s)).scale(Fraction(1) / n)
    return acc


def expected_spin_sum(rep: GammaRep, p: FourMomentum, which: Which | str = Which.U) -> ExactMatrix:
    """D + m for U and D - m for V."""
    one = ExactMatrix.identity(rep.dim).scale(p.mass)
    d = dirac_operator(rep, p)
    return d + one if Which(which) == Which.U else d - one


# Sigma0 -> Lambda e+ e-


class RepKind(str, Enum):
    STANDARD = "Standard"
    HAT = "Hat"


class Hypothesis(str, Enum):
    PLUS = "Plus"
    MINUS = "Minus"


def sigma_rep(kind: RepKind | str) -> GammaRep:
    return base_rep("Dirac13") if RepKind(kind) == RepKind.STANDARD else base_rep("HatFrom13", "Dirac13")


def sigma_tensor(rep: GammaRep, a: int, b: int) -> ExactMatrix:
    """(i/2)[Gamma_a, Gamma_b] with 0-based generator indices."""
    ga, gb = rep.matrices[a], rep.matrices[b]
    return (matmul(ga, gb) - matmul(gb, ga)).scale(I_UNIT / 2)


def transition_vertices(rep: GammaRep, k: FourMomentum, hypothesis: Hypothesis | str) -> list[ExactMatrix]:
    """O_mu = sigma_{mu nu} k^nu, with the chirality in front for Minus."""
    hyp = Hypothesis(hypothesis)
    ku = upper_components(rep, k)
    g5 = chirality(rep)
    out = []
    for mu in range(4):
        acc = ExactMatrix.zeros(rep.dim)
        for nu in range(4):
            if ku[nu] and mu != nu:
                acc = acc + sigma_tensor(rep, mu, nu).scale(ku[nu])
        out.append(matmul(g5, acc) if hyp == Hypothesis.MINUS else acc)
    return out


@dataclass(frozen=True)
class SigmaKinematics:
    p: FourMomentum  # Sigma0
    q: FourMomentum  # Lambda
    k1: FourMomentum  # electron
    k2: FourMomentum  # positron
    M_sigma: Fraction
    M_lambda: Fraction
    m_e: Fraction

    @property
    def k(self) -> FourMomentum:
        return self.k1 + self.k2


def sigma_decay_trace(kind: RepKind | str, hypothesis: Hypothesis | str, kin: SigmaKinematics) -> GaussScalar:
    """Spin-summed |M|^2 up to the common positive form-factor constant.

    sum_{mu,mu'} tr[S_L O_mu S_S Obar_mu'] tr[S_1 Gamma^mu S_2 Gammabar^mu'].
    """
    rep = sigma_rep(kind)
    one = ExactMatrix.identity(4)
    D = lambda p: dirac_operator(rep, p)
    sl = D(kin.q) + one.scale(kin.M_lambda)
    ss = D(kin.p) + one.scale(kin.M_sigma)
    s1 = D(kin.k1) + one.scale(kin.m_e)
    s2 = D(kin.k2) - one.scale(kin.m_e)
    ops = transition_vertices(rep, kin.k, hypothesis)
    ups = [rep.upper(mu) for mu in range(4)]
    hadron = [[trace(mat_product([sl, ops[a], ss, bar_op(rep, ops[b])], 4)) for b in range(4)] for a in range(4)]
    lepton = [[trace(mat_product([s1, ups[a], s2, bar_op(rep, ups[b])], 4)) for b in range(4)] for a in range(4)]
    total = ZERO
    for a, b in product(range(4), repeat=2):
        if hadron[a][b] and lepton[a][b]:
            total = total + hadron[a][b] * lepton[a][b]
    return total


# intrinsic parity bookkeeping


def _phase(x) -> GaussScalar:
    z = gs(x)
    if z not in FOURTH_ROOTS:
        raise QFTError(f"phase {z.short()} is not a fourth root of unity")
    return z


@dataclass
class PhaseLedger:
    eta_a: GaussScalar = ONE
    eta_b: GaussScalar = ONE
    xi_a: GaussScalar = ONE
    xi_b: GaussScalar = ONE
    zeta: GaussScalar = ONE
    lam: GaussScalar = ONE

    def __post_init__(self):
        for name in ("eta_a", "eta_b", "xi_a", "xi_b", "zeta", "lam"):
            setattr(self, name, _phase(getattr(self, name)))

    @property
    def intrinsic_parity(self) -> GaussScalar:
        """eta / lambda for particle a."""
        return self.eta_a / self.lam

    def to_json(self) -> dict:
        return {k: getattr(self, k).short() for k in ("eta_a", "eta_b", "xi_a", "xi_b", "zeta", "lam")}

    @classmethod
    def from_json(cls, d: Mapping) -> "PhaseLedger":
        return cls(**{k: GaussScalar.parse(str(v)) for k, v in d.items()})


@dataclass
class ConstraintReport:
    consistent: bool
    violations: list[str] = field(default_factory=list)
    derived: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"consistent": self.consistent, "violations": self.violations, "derived": self.derived}


def ledger_constraints(
    ledger: PhaseLedger, fermion_pair: bool = False, charge_conj_verified: bool = False, majorana: bool = False
) -> ConstraintReport:
    bad: list[str] = []
    derived: dict[str, str] = {}
    ip = ledger.intrinsic_parity
    if ip ** 4 != ONE:
        bad.append("(eta/lambda)^4 != 1")
    derived["intrinsic_parity"] = ip.short()
    if fermion_pair and ledger.eta_a * ledger.eta_b != -ONE:
        bad.append("fermion pair needs eta_a eta_b = -1")
    if charge_conj_verified and ledger.xi_a * ledger.xi_b != ONE:
        bad.append("charge conjugation needs xi_a xi_b = 1")
    if majorana:
        if ledger.eta_a != ledger.eta_b:
            bad.append("Majorana field needs eta_a = eta_b")
        if not ledger.eta_a.is_imag:
            bad.append("Majorana field needs an imaginary eta")
        if not ledger.lam.is_imag:
            bad.append("Majorana pinor needs an imaginary parity eigenvalue (Pin(3,1))")
        if not bad:
            derived["intrinsic_parity_real"] = str(ip.is_real)
    return ConstraintReport(not bad, bad, derived)


@dataclass
class Particle:
    name: str
    eta: GaussScalar | None  # None marks the unknown

    def __post_init__(self):
        if self.eta is not None:
            self.eta = _phase(self.eta)


@dataclass
class Reaction:
    initial: list[Particle]
    final: list[Particle]
    l_initial: int = 0
    l_final: int = 0
    symmetric_amplitude: bool = True

    def __post_init__(self):
        if self.l_initial < 0 or self.l_final < 0:
            raise QFTError("orbital angular momenta must be non-negative")
        if not self.initial or not self.final:
            raise QFTError("a reaction needs particles on both sides")

    @classmethod
    def from_json(cls, d: Mapping) -> "Reaction":
        def parts(xs):
            return [Particle(x["name"], None if x.get("eta") in (None, "?") else GaussScalar.parse(str(x["eta"])))
                    for x in xs]

        return cls(parts(d["initial"]), parts(d["final"]), int(d.get("l_initial", 0)), int(d.get("l_final", 0)),
                   bool(d.get("symmetric_amplitude", True)))


@dataclass
class ParityResult:
    applicable: bool
    holds: bool | None
    solved: dict[str, GaussScalar] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"applicable": self.applicable, "holds": self.holds,
                "solved": {k: v.short() for k, v in self.solved.items()}}


def parity_conservation_check(reaction: Reaction) -> ParityResult:
    """(-1)^l_i prod eta_in = (-1)^l_f prod eta_out, solving one unknown if present."""
    if not reaction.symmetric_amplitude:
        return ParityResult(False, None)
    unknown = [(side, p) for side, ps in (("in", reaction.initial), ("out", reaction.final)) for p in ps
               if p.eta is None]
    if len(unknown) > 1:
        raise QFTError("more than one unknown phase")
    lhs = gs((-1) ** reaction.l_initial)
    rhs = gs((-1) ** reaction.l_final)
    for p in reaction.initial:
        if p.eta is not None:
            lhs = lhs * p.eta
    for p in reaction.final:
        if p.eta is not None:
            rhs = rhs * p.eta
    if not unknown:
        return ParityResult(True, lhs == rhs)
    side, p = unknown[0]
    value = rhs / lhs if side == "in" else lhs / rhs
    return ParityResult(True, True, {p.name: value})


def pion_capture(eta_n) -> GaussScalar:
    """eta_pi from pi- d -> n n with s-wave capture and l_f = 1."""
    eta_n = _phase(eta_n)
    eta_d = eta_n * eta_n  # s-wave p n bound state with eta_p = eta_n
    allowed = pion_final_state(1)
    if allowed != [(1, 1)]:
        raise QFTError("unexpected nn final states")
    r = Reaction([Particle("pi", None), Particle("d", eta_d)], [Particle("n1", eta_n), Particle("n2", eta_n)],
                 0, allowed[0][0])
    return parity_conservation_check(r).solved["pi"]


def pion_final_state(j_total: int, filtered: bool = True) -> list[tuple[int, int]]:
    """(l, s) for two identical spin-1/2 fermions with total angular momentum j.

    Antisymmetry keeps states with (-1)^(l+s+1) = -1.
    """
    if j_total < 0:
        raise QFTError("j must be non-negative")
    states = [(l, s) for s in (0, 1) for l in range(0, j_total + 2) if abs(l - s) <= j_total <= l + s]
    states.sort()
    if filtered:
        states = [(l, s) for l, s in states if (-1) ** (l + s + 1) == -1]
    return states


@dataclass
class PositroniumPhases:
    l: int
    s: int
    p_parity: int
    c_parity: int
    photons: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def positronium_phases(l: int, s: int, eta_product=-1, xi_product=1) -> PositroniumPhases:
    """P = eta_a eta_b (-1)^l and C = xi_a xi_b (-1)^(l+s).

    n photons carry C = (-1)^n, so C = +1 decays to 2 photons and C = -1 to 3.
    """
    if l < 0 or s not in (0, 1):
        raise QFTError("need l >= 0 and s in {0, 1}")
    ep, xp = _phase(eta_product), _phase(xi_product)
    if not ep.is_real or not xp.is_real:
        raise QFTError("pair phase products must be real here")
    p = int(ep.re) * (-1) ** l
    c = int(xp.re) * (-1) ** (l + s)
    return PositroniumPhases(l, s, p, c, 2 if c == 1 else 3)


def phase_product(phases: Sequence) -> GaussScalar:
    out = ONE
    for x in phases:
        out = out * _phase(x)
    return out


# exact on-shell sampling


def on_shell_sample(rng, mass) -> FourMomentum:
    """Random on-shell momentum with rational components.

    |p| = m (r^2 - 1) / 2r and E = m (r^2 + 1) / 2r for rational r > 1; the
    direction is a rational point of the unit sphere.
    """
    m = Fraction(mass)
    r = Fraction(rng.randint(5, 40), rng.randint(2, 4))
    if r <= 1:
        r = Fraction(3, 2)
    u, v = Fraction(rng.randint(-6, 6), rng.randint(1, 5)), Fraction(rng.randint(-6, 6), rng.randint(1, 5))
    den = 1 + u * u + v * v
    direction = (2 * u / den, 2 * v / den, (1 - u * u - v * v) / den)
    size = m * (r * r - 1) / (2 * r)
    energy = m * (r * r + 1) / (2 * r)
    return FourMomentum(energy, *(size * c for c in direction), mass=m)


def sigma_kinematics_sample(rng, M_sigma=Fraction(1193, 1000), M_lambda=Fraction(1116, 1000),
                            m_e=Fraction(511, 1000000)) -> SigmaKinematics:
    """Independent on-shell Sigma, Lambda, e- and e+ momenta with exact components."""
    return SigmaKinematics(on_shell_sample(rng, M_sigma), on_shell_sample(rng, M_lambda),
                           on_shell_sample(rng, m_e), on_shell_sample(rng, m_e),
                           Fraction(M_sigma), Fraction(M_lambda), Fraction(m_e))
