"""Pin covers of O(t, s): the covering equation, named reflections, and the
finite groups they generate.

Covering equation (untwisted):  Lambda Gamma_a Lambda^-1 = Gamma_b L^b_a.
Twisted version: the left factor is replaced by its grade involution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .clifford_builder import GammaRep, IndexConvention, Signature, _inverse_monomial, monomial_decompose
from .exact_core import (
    FOURTH_ROOTS,
    I_UNIT,
    ONE,
    ExactMatrix,
    GaussScalar,
    determinant,
    gs,
    matmul,
    trace,
)


class Parity(str, Enum):
    EVEN = "Even"
    ODD = "Odd"


class PlanarKind(str, Enum):
    ROTATION = "Rotation"
    BOOST = "Boost"


class CoverError(ValueError):
    pass


@dataclass(frozen=True)
class CoverElement:
    """scalar * Gamma_{i1} ... Gamma_{ik} inside a given representation."""

    indices: tuple[int, ...]
    scalar: GaussScalar
    rep: GammaRep = field(compare=False, repr=False)

    @property
    def matrix(self) -> ExactMatrix:
        return self.rep.monomial(self.indices).scale(self.scalar)

    @property
    def parity(self) -> Parity:
        return Parity.EVEN if len(self.indices) % 2 == 0 else Parity.ODD

    @property
    def text(self) -> str:
        c = self.scalar
        if not self.indices:
            return c.short() if c != ONE else "1"
        body = self.rep.monomial_text(self.indices)
        if c == ONE:
            return "+" + body
        if c == -ONE:
            return "-" + body
        return f"{c.short()} {body}" if c.short().startswith("-") else f"+{c.short()} {body}"

    def inverse_matrix(self) -> ExactMatrix:
        return _inverse_monomial(self.rep, self.indices).scale(ONE / self.scalar)

    def __mul__(self, other: "CoverElement") -> "CoverElement":
        found = monomial_decompose(self.rep, matmul(self.matrix, other.matrix))
        if found is None:
            raise CoverError("product is not a monomial")
        c, sub = found
        return CoverElement(sub, c, self.rep)

    def to_json(self) -> dict:
        return {"monomial": self.text, "indices": [self.rep.signature.label(i) for i in self.indices],
                "scalar": self.scalar.canonical(), "parity": self.parity.value,
                "matrix": self.matrix.to_json()}


def cover_element(rep: GammaRep, labels: Sequence[int] = (), scalar=1) -> CoverElement:
    """Build from display labels (0..3 for TimeFirst, 1..4 for SpaceFirst)."""
    return CoverElement(tuple(rep.signature.index(l) for l in labels), gs(scalar), rep)


def reversion(e: CoverElement) -> CoverElement:
    return CoverElement(tuple(reversed(e.indices)), e.scalar, e.rep)


def reversion_norm(e: CoverElement) -> GaussScalar | None:
    """The scalar e e^tau when it is a multiple of the identity."""
    return matmul(e.matrix, reversion(e).matrix).scalar_value()


@dataclass(frozen=True)
class LorentzMatrix:
    matrix: ExactMatrix
    signature: Signature

    def is_orthogonal(self) -> bool:
        eta = ExactMatrix.diag(self.signature.metric)
        from .exact_core import transpose

        return matmul(matmul(self.matrix, eta), transpose(self.matrix)) == eta

    @property
    def det(self) -> GaussScalar:
        return determinant(self.matrix)

    @classmethod
    def diag(cls, values: Sequence[int], signature: Signature) -> "LorentzMatrix":
        return cls(ExactMatrix.diag(values), signature)

    def to_json(self) -> list[list[str]]:
        return [[x.short() for x in r] for r in self.matrix.rows]


def named_lorentz(signature: Signature) -> dict[str, LorentzMatrix]:
    """P(1), P(3), T and PT for the two four-dimensional conventions."""
    if signature.metric == (1, -1, -1, -1) and signature.convention == IndexConvention.TIME_FIRST:
        table = {"P1": (1, 1, 1, -1), "P3": (1, -1, -1, -1), "T": (-1, 1, 1, 1), "PT": (-1, -1, -1, -1)}
    elif signature.metric == (1, 1, 1, -1) and signature.convention == IndexConvention.SPACE_FIRST:
        table = {"P1": (-1, 1, 1, 1), "P3": (-1, -1, -1, 1), "T": (1, 1, 1, -1), "PT": (-1, -1, -1, -1)}
    else:
        raise CoverError(f"named elements need signature (1,3) TimeFirst or (3,1) SpaceFirst, got {signature}")
    return {k: LorentzMatrix.diag(v, signature) for k, v in table.items()}


class CoverSet:
    """Solutions of the covering equation; scalars are +-1 unless flagged."""

    def __init__(self, elements: list[CoverElement], real_scalar: bool):
        self.elements = elements
        self.real_scalar = real_scalar

    def __iter__(self) -> Iterator[CoverElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __bool__(self) -> bool:
        return bool(self.elements)

    @property
    def plus(self) -> CoverElement:
        if not self.elements:
            raise CoverError("no cover exists")
        return self.elements[0]

    def matrices(self) -> set[ExactMatrix]:
        return {e.matrix for e in self.elements}


def _satisfies(rep: GammaRep, sub: tuple[int, ...], L: ExactMatrix, twisted: bool) -> bool:
    lam = rep.monomial(sub)
    inv = _inverse_monomial(rep, sub)
    sign = -1 if (twisted and len(sub) % 2) else 1
    for a in range(rep.d):
        lhs = matmul(matmul(lam, rep.matrices[a]), inv)
        if sign < 0:
            lhs = -lhs
        rhs = None
        for b in range(rep.d):
            c = L.rows[b][a]
            if c:
                term = rep.matrices[b].scale(c)
                rhs = term if rhs is None else rhs + term
        if rhs is None or lhs != rhs:
            return False
    return True


def solve_cover(
    rep: GammaRep, L: LorentzMatrix | ExactMatrix, twisted: bool = False, include_imaginary: bool = False
) -> CoverSet:
    """All scaled generator monomials Lambda covering L.

    Searches the 2^d monomials; each hit is returned with scalars +1 and -1
    (and +-i when ``include_imaginary``).  Every hit satisfies Lambda
    Lambda^tau = +-1.
    """
    Lm = L.matrix if isinstance(L, LorentzMatrix) else L
    if Lm.dim != rep.d:
        raise CoverError("Lorentz matrix size does not match the number of generators")
    scalars = FOURTH_ROOTS if include_imaginary else (ONE, -ONE)
    out: list[CoverElement] = []
    for sub in rep.subsets():
        if _satisfies(rep, sub, Lm, twisted):
            for c in scalars:
                e = CoverElement(sub, c, rep)
                n = reversion_norm(e)
                if n is not None and n in (ONE, -ONE):
                    out.append(e)
    return CoverSet(out, real_scalar=any(e.scalar.is_real for e in out))


def lorentz_image(rep: GammaRep, e: CoverElement, twisted: bool = False) -> LorentzMatrix:
    """Read L off from alpha(Lambda) Gamma_a Lambda^-1 = Gamma_b L^b_a."""
    lam, inv = e.matrix, e.inverse_matrix()
    sign = -1 if (twisted and e.parity == Parity.ODD) else 1
    d, n = rep.d, rep.dim
    cols = []
    for a in range(d):
        x = matmul(matmul(lam, rep.matrices[a]), inv)
        if sign < 0:
            x = -x
        col = []
        for b in range(d):
            gb_inv = rep.matrices[b].scale(rep.signature.metric[b])
            col.append(trace(matmul(gb_inv, x)) / n)
        recon = None
        for b in range(d):
            if col[b]:
                term = rep.matrices[b].scale(col[b])
                recon = term if recon is None else recon + term
        if recon is None or recon != x:
            raise CoverError("action does not map generators to generators")
        cols.append(col)
    L = LorentzMatrix(ExactMatrix([[cols[a][b] for a in range(d)] for b in range(d)]), rep.signature)
    if not L.is_orthogonal():
        raise CoverError("image is not metric-orthogonal")
    return L


def twisted_cover(rep: GammaRep, e: CoverElement) -> LorentzMatrix:
    return lorentz_image(rep, e, twisted=True)


def grading(e: CoverElement) -> Parity:
    return e.parity


@dataclass
class NamedEntry:
    name: str
    L: LorentzMatrix
    solutions: CoverSet
    square: GaussScalar

    def to_json(self) -> dict:
        return {"name": self.name, "lorentz_diag": [self.L.matrix.rows[i][i].short() for i in range(self.L.matrix.dim)],
                "covers": [e.text for e in self.solutions], "square": self.square.short()}


def named_elements(rep: GammaRep) -> dict[str, NamedEntry]:
    out = {}
    for name, L in named_lorentz(rep.signature).items():
        sols = solve_cover(rep, L)
        if not sols:
            raise CoverError(f"no cover found for {name}")
        sq = matmul(sols.plus.matrix, sols.plus.matrix).scalar_value()
        out[name] = NamedEntry(name, L, sols, sq)
    return out


def named_element(rep: GammaRep, name: str) -> CoverElement:
    L = named_lorentz(rep.signature)[name]
    return solve_cover(rep, L).plus


# planar rotations and boosts


def _exact_half_trig(angle: Fraction) -> tuple[int, int]:
    """(cos, sin) of angle*pi/2 when both are rational."""
    h = Fraction(angle) / 2
    if (2 * h).denominator != 1:
        raise CoverError(f"half-angle {h}*pi has irrational trigonometric values; use float mode")
    k = int(2 * h) % 4  # multiples of pi/2
    return ((1, 0), (0, 1), (-1, 0), (0, -1))[k]


def planar_cover(
    rep: GammaRep,
    axes: tuple[int, int],
    angle,
    kind: PlanarKind | str = PlanarKind.ROTATION,
    exact: bool = True,
):
    """cos(theta/2) + Gamma_a Gamma_b sin(theta/2) for rotations, cosh/sinh for boosts.

    In exact mode ``angle`` is a rational multiple of pi (rotations) and the
    result is a CoverElement; float mode returns a complex nested list.
    """
    kind = PlanarKind(kind)
    a, b = (rep.signature.index(x) for x in axes)
    if a == b:
        raise CoverError("axes must differ")
    same = rep.signature.metric[a] == rep.signature.metric[b]
    if kind == PlanarKind.ROTATION and not same:
        raise CoverError("a rotation needs two axes of the same metric sign")
    if kind == PlanarKind.BOOST and same:
        raise CoverError("a boost needs one timelike and one spacelike axis")
    sub = (a, b)
    if exact:
        if kind == PlanarKind.BOOST:
            if Fraction(angle) != 0:
                raise CoverError("only the zero boost is exact")
            return CoverElement((), ONE, rep)
        c, s = _exact_half_trig(Fraction(angle))
        if s == 0:
            return CoverElement((), gs(c), rep)
        return CoverElement(sub, gs(s), rep)
    g = rep.monomial(sub).to_complex()
    theta = float(angle) * (math.pi if kind == PlanarKind.ROTATION else 1.0)
    if kind == PlanarKind.ROTATION:
        c, s = math.cos(theta / 2), math.sin(theta / 2)
    else:
        c, s = math.cosh(theta / 2), math.sinh(theta / 2)
    n = rep.dim
    return [[(c if i == j else 0) + s * g[i][j] for j in range(n)] for i in range(n)]


# finite groups


def generated_group(gens: Iterable[ExactMatrix], limit: int = 4096) -> list[ExactMatrix]:
    gens = list(gens)
    ident = ExactMatrix.identity(gens[0].dim)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = matmul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise CoverError("group closure exceeded limit")
        frontier = nxt
    return list(seen)


def element_order(x: ExactMatrix, cap: int = 64) -> int:
    ident = ExactMatrix.identity(x.dim)
    y = x
    for k in range(1, cap + 1):
        if y == ident:
            return k
        y = matmul(y, x)
    raise CoverError("element order exceeds cap")


def recognize_group(elements: Sequence[ExactMatrix]) -> str:
    """Name small groups by order, commutativity and element orders."""
    n = len(elements)
    abelian = all(matmul(a, b) == matmul(b, a) for a in elements for b in elements)
    orders = sorted(element_order(x) for x in elements)
    top = orders[-1]
    if n == 2:
        return "Z2"
    if n == 4:
        return "Z4" if top == 4 else "Z2×Z2"
    if n == 8:
        if abelian:
            return {2: "Z2×Z2×Z2", 4: "Z2×Z4", 8: "Z8"}[top]
        return "Quaternion" if orders.count(2) == 1 else "Dihedral"
    return f"order-{n}{' abelian' if abelian else ''}"


@dataclass(frozen=True)
class CoverClass:
    a: int
    b: int
    c: int
    commute: int
    group_name: str
    cliffordian: bool

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "commute": self.commute,
                "group_name": self.group_name, "cliffordian": self.cliffordian}


def _sign_of(x: ExactMatrix) -> int:
    v = x.scalar_value()
    if v not in (ONE, -ONE):
        raise CoverError("expected +-identity")
    return 1 if v == ONE else -1


def classify_pair(lp: ExactMatrix, lt: ExactMatrix) -> CoverClass:
    a = _sign_of(matmul(lp, lp))
    b = _sign_of(matmul(lt, lt))
    pt = matmul(lp, lt)
    c = _sign_of(matmul(pt, pt))
    tp = matmul(lt, lp)
    if tp == pt:
        commute = 1
    elif tp == -pt:
        commute = -1
    else:
        raise CoverError("Lambda_P and Lambda_T neither commute nor anticommute")
    minus = ExactMatrix.identity(lp.dim).scale(-1)
    name = recognize_group(generated_group([minus, lp, lt]))
    return CoverClass(a, b, c, commute, name, commute == -1 and a != b)


def cover_group_classify(rep: GammaRep, parity_choice: str = "P1") -> CoverClass:
    if parity_choice not in ("P1", "P3"):
        raise CoverError("parity_choice must be P1 or P3")
    lp = named_element(rep, parity_choice).matrix
    lt = named_element(rep, "T").matrix
    return classify_pair(lp, lt)


# the eight double covers, realized by 2x2 matrices

DOUBLE_COVER_ROWS = (
    (1, 1, 1),
    (1, -1, -1),
    (-1, 1, -1),
    (-1, -1, 1),
    (-1, -1, -1),
    (-1, 1, 1),
    (1, -1, 1),
    (1, 1, -1),
)


def realize_cover(a: int, b: int, c: int) -> tuple[ExactMatrix, ExactMatrix]:
    """Matrices Lambda_P, Lambda_T with the requested squares.

    Commuting realizations exist iff c = ab; otherwise they anticommute.
    """
    u = ONE if a == 1 else I_UNIT
    v = ONE if b == 1 else I_UNIT
    if c == a * b:
        lp = ExactMatrix.diag([1, -1, 1, -1]).scale(u)
        lt = ExactMatrix.diag([1, 1, -1, -1]).scale(v)
    else:
        lp = ExactMatrix([[0, 1], [1, 0]]).scale(u)
        lt = ExactMatrix([[1, 0], [0, -1]]).scale(v)
    return lp, lt


def double_cover_table() -> list[CoverClass]:
    return [classify_pair(*realize_cover(a, b, c)) for a, b, c in DOUBLE_COVER_ROWS]


def pin_generator_group(rep: GammaRep) -> str:
    """Name of the group generated by -1 and the generators.

    C(1,0) is represented faithfully by diag(1,-1); the 1x1 choice [[1]]
    would identify gamma with the identity.
    """
    mats = list(rep.matrices)
    if rep.dim == 1 and rep.signature.metric == (1,):
        mats = [ExactMatrix.diag([1, -1])]
    minus = ExactMatrix.identity(mats[0].dim).scale(-1)
    return recognize_group(generated_group([minus, *mats]))


# odd-dimensional structure


def center(rep: GammaRep) -> list[tuple[int, ...]]:
    """Generator monomials commuting with every generator."""
    out = []
    for sub in rep.subsets():
        m = rep.monomial(sub)
        if all(matmul(m, g) == matmul(g, m) for g in rep.matrices):
            out.append(sub)
    return out


def minus_identity(d: int, signature: Signature) -> LorentzMatrix:
    return LorentzMatrix.diag([-1] * d, signature)


def surjectivity_check(rep: GammaRep) -> bool:
    """Does -1 in O(t, s) have an untwisted cover?"""
    return bool(solve_cover(rep, minus_identity(rep.d, rep.signature)))


# abstract monomial group: elements (k, mask) meaning i^k Gamma_mask


def mono_mul(metric: Sequence[int], x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    (k1, m1), (k2, m2) = x, y
    swaps = 0
    for bpos in range(len(metric)):
        if m2 >> bpos & 1:
            swaps += bin(m1 >> (bpos + 1)).count("1")
    k = k1 + k2 + 2 * swaps
    common = m1 & m2
    for c in range(len(metric)):
        if common >> c & 1 and metric[c] == -1:
            k += 2
    return k % 4, m1 ^ m2


def mono_matrix(rep: GammaRep, x: tuple[int, int]) -> ExactMatrix:
    k, mask = x
    sub = tuple(i for i in range(rep.d) if mask >> i & 1)
    return rep.monomial(sub).scale(FOURTH_ROOTS[k])


def monomial_group(metric: Sequence[int]) -> list[tuple[int, int]]:
    d = len(metric)
    gens = [(1, 0)] + [(0, 1 << i) for i in range(d)]
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mono_mul(metric, x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


@dataclass
class SemidirectReport:
    group_order: int
    even_order: int
    index: int
    even_closed: bool
    conjugation_preserves_even: bool
    minus_identity_in_SO: bool
    orthogonal_split_exists: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def semidirect_check(rep: GammaRep) -> SemidirectReport:
    metric = rep.signature.metric
    d = len(metric)
    if d < 2:
        raise CoverError("semidirect_check needs d >= 2")
    group = monomial_group(metric)
    even = [x for x in group if bin(x[1]).count("1") % 2 == 0]
    even_set = set(even)
    closed = all(mono_mul(metric, x, y) in even_set for x in even for y in even)
    z = (0, 1)  # Gamma_0, an odd element
    z_inv = mono_mul(metric, (0 if metric[0] == 1 else 2, 0), z)
    preserves = all(mono_mul(metric, mono_mul(metric, z, h), z_inv) in even_set for h in even)
    det_minus = (-1) ** d
    return SemidirectReport(len(group), len(even), len(group) // len(even), closed, preserves,
                            det_minus == 1, d % 2 == 1)


def spin_identity_check(rep13: GammaRep, rep31: GammaRep) -> bool:
    """Even subgroups agree under Gamma_a Gamma_b <-> -hatGamma_a' hatGamma_b'.

    Labels 0 (time) and 1..3 of the (1,3) rep map to hat labels 4 and 1..3.
    """
    idx = [rep31.signature.index(4)] + [rep31.signature.index(k) for k in (1, 2, 3)]

    def phi(sub: tuple[int, ...]) -> ExactMatrix:
        out = ExactMatrix.identity(rep31.dim)
        for j in range(0, len(sub), 2):
            pair = matmul(rep31.matrices[idx[sub[j]]], rep31.matrices[idx[sub[j + 1]]])
            out = matmul(out, -pair)
        return out

    evens = [s for s in rep13.subsets() if len(s) % 2 == 0]
    for s in evens:
        for t in evens:
            prod = matmul(rep13.monomial(s), rep13.monomial(t))
            found = monomial_decompose(rep13, prod)
            if found is None:
                return False
            c, u = found
            if matmul(phi(s), phi(t)) != phi(u).scale(c):
                return False
    return True
