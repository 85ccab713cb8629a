"""Charge conjugation, hermitian similarity, Dirac adjoint signs, antiunitary
time reversal, Majorana compatibility, Kramers and CPT.

Every conjugating matrix is found by searching signed generator monomials, so
results come back as monomial identities such as "C = +-g2".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .clifford_builder import GammaRep, IndexConvention, _inverse_monomial, intertwiners, monomial_decompose
from .exact_core import (
    FOURTH_ROOTS,
    ONE,
    ExactMatrix,
    GaussScalar,
    conjugate,
    dagger,
    inverse,
    matmul,
    nullspace,
)
from .pin_cover import CoverElement, LorentzMatrix, lorentz_image, named_element, named_lorentz


class Sign(str, Enum):
    PLUS = "Plus"
    MINUS = "Minus"

    @property
    def value_int(self) -> int:
        return 1 if self is Sign.PLUS else -1


class Verdict(str, Enum):
    COMPATIBLE = "Compatible"
    INCOMPATIBLE = "Incompatible"


class ConjugationError(ValueError):
    pass


@dataclass
class ConjugationResult:
    kind: str  # "C" or "H"
    sign_convention: Sign
    exists: bool
    matrix: ExactMatrix | None = None
    monomial: tuple[int, ...] | None = None
    text: str = ""
    cc_star: GaussScalar | None = None
    unique_up_to_scalar: bool = True

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "sign_convention": self.sign_convention.value,
            "exists": self.exists,
            "monomial": self.text or None,
            "cc_star": self.cc_star.short() if self.cc_star is not None else None,
            "unique_up_to_scalar": self.unique_up_to_scalar,
            "matrix": self.matrix.to_json() if self.matrix is not None else None,
        }


def _pm_text(rep: GammaRep, sub: tuple[int, ...]) -> str:
    return "+-" + rep.monomial_text(sub)


def monomial_search(
    rep: GammaRep, source: Sequence[ExactMatrix], target: Sequence[ExactMatrix]
) -> list[tuple[int, ...]]:
    """Subsets S with Gamma_S source_a Gamma_S^-1 = target_a for every a."""
    hits = []
    for sub in rep.subsets():
        m = rep.monomial(sub)
        inv = _inverse_monomial(rep, sub)
        if all(matmul(matmul(m, x), inv) == y for x, y in zip(source, target)):
            hits.append(sub)
    return hits


def _solve(rep: GammaRep, kind: str, sign: Sign, source, target, with_cc: bool) -> ConjugationResult:
    hits = monomial_search(rep, source, target)
    if not hits:
        return ConjugationResult(kind, sign, False)
    sub = hits[0]
    m = rep.monomial(sub)
    unique = len(intertwiners(source, target)) == 1
    cc = matmul(m, conjugate(m)).scalar_value() if with_cc else None
    return ConjugationResult(kind, sign, True, m, sub, _pm_text(rep, sub), cc, unique)


def natural_c_sign(rep: GammaRep) -> Sign:
    """Minus for the time-first (1,3)-type convention, Plus for space-first."""
    return Sign.MINUS if rep.signature.convention == IndexConvention.TIME_FIRST else Sign.PLUS


def charge_conj(rep: GammaRep, sign: Sign | str | None = None) -> ConjugationResult:
    """C with C Gamma_a^* C^-1 = sign Gamma_a."""
    sign = natural_c_sign(rep) if sign is None else Sign(sign)
    source = [conjugate(g) for g in rep.matrices]
    target = [g.scale(sign.value_int) for g in rep.matrices]
    return _solve(rep, "C", sign, source, target, with_cc=True)


def hermitian_similarity(rep: GammaRep, sign: Sign | str) -> ConjugationResult:
    """H with H^-1 Gamma_a^dagger H = sign Gamma_a, i.e. H Gamma_a H^-1 = sign Gamma_a^dagger."""
    sign = Sign(sign)
    target = [dagger(g).scale(sign.value_int) for g in rep.matrices]
    return _solve(rep, "H", sign, list(rep.matrices), target, with_cc=False)


def odd_conj_choice(t: int, s: int) -> dict[str, Sign]:
    """Which of H+- and C+- exist for odd t + s.

    H+ exists iff t is odd.  C+ exists iff s - t + 1 = 0 mod 4, C- iff it is 2.
    """
    if (t + s) % 2 == 0:
        raise ConjugationError("odd_conj_choice needs t + s odd")
    h = Sign.PLUS if t % 2 else Sign.MINUS
    c = Sign.PLUS if (s - t + 1) % 4 == 0 else Sign.MINUS
    return {"H": h, "C": c}


def cc_apply(c: ExactMatrix, psi: Sequence) -> tuple:
    """psi^c = C psi^*."""
    return c.apply([GaussScalar.coerce(x).conjugate() for x in psi])


# Dirac adjoint


def adjoint_anchor(rep: GammaRep) -> ExactMatrix:
    """Gamma_0 in time-first reps, the last (label d) generator in space-first ones."""
    sig = rep.signature
    if sig.convention == IndexConvention.TIME_FIRST:
        return rep.gamma(0)
    return rep.gamma(sig.d)


def dirac_adjoint_sign(rep: GammaRep, e: CoverElement | ExactMatrix) -> int:
    """a with anchor^-1 Lambda^dagger anchor Lambda = a 1."""
    lam = e.matrix if isinstance(e, CoverElement) else e
    anchor = adjoint_anchor(rep)
    val = matmul(matmul(matmul(inverse(anchor), dagger(lam)), anchor), lam).scalar_value()
    if val not in (ONE, -ONE):
        raise ConjugationError("adjoint conjugation is not +-1: element is outside the Pin group")
    return 1 if val == ONE else -1


def adjoint_sign_table(rep: GammaRep, parity_choice: str = "P3") -> dict[str, int]:
    lp = named_element(rep, parity_choice).matrix
    lt = named_element(rep, "T").matrix
    reps = {"1": ExactMatrix.identity(rep.dim), "P": lp, "T": lt, "PT": matmul(lp, lt)}
    return {k: dirac_adjoint_sign(rep, v) for k, v in reps.items()}


# Majorana compatibility with parity


@dataclass
class MajoranaReport:
    verdict: Verdict
    signs: dict[str, int]  # per choice of Lambda_P sign: Lambda_P C = sign C Lambda_P^*
    c_text: str
    parity_text: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "signs": self.signs, "C": self.c_text, "Lambda_P": self.parity_text}


def majorana_parity_test(rep: GammaRep, parity_choice: str = "P3") -> MajoranaReport:
    c = charge_conj(rep)
    if not c.exists:
        raise ConjugationError("no charge conjugation matrix")
    base = named_element(rep, parity_choice)
    signs = {}
    for label, s in (("+", 1), ("-", -1)):
        lp = base.matrix.scale(s)
        lhs = matmul(lp, c.matrix)
        rhs = matmul(c.matrix, conjugate(lp))
        if lhs == rhs:
            signs[label] = 1
        elif lhs == -rhs:
            signs[label] = -1
        else:
            raise ConjugationError("Lambda_P C and C Lambda_P^* are not proportional by a sign")
    if len(set(signs.values())) != 1:
        raise ConjugationError("verdict depends on the sign of Lambda_P")
    verdict = Verdict.COMPATIBLE if signs["+"] == 1 else Verdict.INCOMPATIBLE
    return MajoranaReport(verdict, signs, c.text, "+-" + base.rep.monomial_text(base.indices))


def parity_flip_on_conjugates(rep: GammaRep, parity_choice: str = "P3") -> bool:
    """If Lambda_P psi = lam psi then Lambda_P psi^c = -lam psi^c, for every eigenvector."""
    c = charge_conj(rep).matrix
    lp = named_element(rep, parity_choice).matrix
    for lam, vecs in parity_eigenspaces(lp).items():
        for v in vecs:
            vc = cc_apply(c, v)
            if lp.apply(vc) != tuple(-lam * x for x in vc):
                return False
    return True


def parity_eigenspaces(lp: ExactMatrix) -> dict[GaussScalar, list[tuple]]:
    """Eigenvectors of a matrix whose eigenvalues are 4th roots of unity."""
    out = {}
    one = ExactMatrix.identity(lp.dim)
    for lam in FOURTH_ROOTS:
        ker = nullspace(lp - one.scale(lam))
        if ker:
            out[lam] = ker
    return out


def parity_eigenvalues(rep: GammaRep, parity_choice: str = "P3") -> dict[str, int]:
    lp = named_element(rep, parity_choice).matrix
    return {lam.short(): len(v) for lam, v in parity_eigenspaces(lp).items()}


# antiunitary time reversal


@dataclass
class AntiunitaryT:
    matrix: ExactMatrix
    text: str
    choices: list[dict]
    peskin_schroeder: str | None
    image: LorentzMatrix
    c_sign: int
    similarity_holds: bool

    def to_json(self) -> dict:
        return {"A_T": self.text, "choices": self.choices, "peskin_schroeder": self.peskin_schroeder,
                "image_diag": [self.image.matrix.rows[i][i].short() for i in range(self.image.matrix.dim)],
                "c_sign": self.c_sign, "similarity_holds": self.similarity_holds,
                "matrix": self.matrix.to_json()}


def _mono_text(rep: GammaRep, m: ExactMatrix) -> str:
    found = monomial_decompose(rep, m)
    if found is None:
        return "?"
    c, sub = found
    body = rep.monomial_text(sub)
    if c == ONE:
        return "+" + body
    if c == -ONE:
        return "-" + body
    return f"{c.short()} {body}"


def antiunitary_T(rep: GammaRep) -> AntiunitaryT:
    """A_T = Lambda_T C, for every sign choice of Lambda_T and C.

    A_T Gamma_a^* A_T^-1 = sigma_C Gamma_b T^b_a where sigma_C is the sign in
    the defining relation of C, so the image is T itself only when sigma_C = +1.
    """
    c = charge_conj(rep)
    if not c.exists:
        raise ConjugationError("no charge conjugation matrix")
    lt = named_element(rep, "T").matrix
    choices = []
    ps = None
    for st in (1, -1):
        for sc in (1, -1):
            a = matmul(lt.scale(st), c.matrix.scale(sc))
            text = _mono_text(rep, a)
            tagged = False
            if rep.kind == "Dirac13" and a == matmul(rep.gamma(1), rep.gamma(3)).scale(-1):
                ps = text
                tagged = True
            choices.append({"lambda_T_sign": st, "C_sign": sc, "A_T": text, "peskin_schroeder": tagged})
    a = matmul(lt, c.matrix)
    inv = inverse(a)
    conj_img = [matmul(matmul(a, conjugate(g)), inv) for g in rep.matrices]
    # read off the image the same way lorentz_image does, using a proxy monomial action
    d = rep.d
    T = named_lorentz(rep.signature)["T"]
    sgn = c.sign_convention.value_int
    expected = [None] * d
    for aa in range(d):
        acc = None
        for b in range(d):
            coef = T.matrix.rows[b][aa]
            if coef:
                term = rep.matrices[b].scale(coef * sgn)
                acc = term if acc is None else acc + term
        expected[aa] = acc
    holds = all(x == y for x, y in zip(conj_img, expected))
    image = LorentzMatrix(T.matrix.scale(sgn), rep.signature)
    return AntiunitaryT(a, _mono_text(rep, a), choices, ps, image, sgn, holds)


def kramers_check(rep: GammaRep) -> GaussScalar:
    a = antiunitary_T(rep).matrix
    v = matmul(a, conjugate(a)).scalar_value()
    if v is None:
        raise ConjugationError("A_T A_T^* is not scalar")
    return v


@dataclass
class CPTReport:
    scalar: GaussScalar
    proportional_to_all_product: bool
    proportional_to_lambda_pt: bool
    pt_image_det: GaussScalar
    pt_image_is_minus_identity: bool
    matrix: ExactMatrix = field(repr=False)

    @property
    def holds(self) -> bool:
        return (self.proportional_to_all_product and self.proportional_to_lambda_pt
                and self.scalar in FOURTH_ROOTS and self.pt_image_det == ONE)

    def to_json(self) -> dict:
        return {"scalar": self.scalar.short(), "proportional_to_all_product": self.proportional_to_all_product,
                "proportional_to_lambda_pt": self.proportional_to_lambda_pt,
                "pt_image_det": self.pt_image_det.short(), "pt_image_is_minus_identity": self.pt_image_is_minus_identity,
                "holds": self.holds}


def _ratio(x: ExactMatrix, y: ExactMatrix) -> GaussScalar | None:
    """c with x = c y, if any."""
    n = x.dim
    for i in range(n):
        for j in range(n):
            if y.rows[i][j]:
                c = x.rows[i][j] / y.rows[i][j]
                return c if y.scale(c) == x else None
    return None


def cpt_composite(rep: GammaRep, parity_choice: str = "P3") -> CPTReport:
    """Pinor-space matrix of T(P(C psi)) = A_T Lambda_P^* C^* psi.

    Needs the P(3) parity: with P(1) the product PT is not -1 on spacetime.
    """
    c = charge_conj(rep).matrix
    lp_el = named_element(rep, parity_choice)
    lp = lp_el.matrix
    lt_el = named_element(rep, "T")
    a = antiunitary_T(rep).matrix
    m = matmul(matmul(a, conjugate(lp)), conjugate(c))
    allp = rep.all_product()
    k = _ratio(m, allp)
    lpt = matmul(lp, lt_el.matrix)
    k2 = _ratio(m, lpt)
    image = lorentz_image(rep, CoverElement(lp_el.indices, ONE, rep) * CoverElement(lt_el.indices, ONE, rep))
    from .exact_core import determinant

    minus = ExactMatrix.identity(rep.d).scale(-1)
    return CPTReport(k if k is not None else GaussScalar(0), k is not None, k2 is not None,
                     determinant(image.matrix), image.matrix == minus, m)
