"""Gamma-matrix representations of real Clifford algebras C(t, s).

C(t, s) has t generators squaring to +1 and s squaring to -1.  Every
representation built here is monomial: each generator is a signed permutation
matrix times fourth roots of unity, which keeps all searches finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .exact_core import (
    I_UNIT,
    ONE,
    ExactMatrix,
    GaussScalar,
    anticommutator,
    gs,
    kron,
    mat_product,
    matmul,
    nullspace,
    pauli,
    trace,
)


class IndexConvention(str, Enum):
    TIME_FIRST = "TimeFirst"  # labels 0..d-1, as for diag(1,-1,-1,-1)
    SPACE_FIRST = "SpaceFirst"  # labels 1..d, as for diag(1,1,1,-1)


class OddTarget(str, Enum):
    ADD_TIME = "AddTime"
    ADD_SPACE = "AddSpace"


class Branch(str, Enum):
    PLUS_K = "PlusK"
    MINUS_K = "MinusK"


class KSign(str, Enum):
    K_SQUARED_PLUS = "KSquaredPlus"
    K_SQUARED_MINUS = "KSquaredMinus"


@dataclass(frozen=True)
class Signature:
    """Metric signature carried as the explicit diagonal, in generator order."""

    metric: tuple[int, ...]
    convention: IndexConvention = IndexConvention.TIME_FIRST

    def __post_init__(self):
        if len(self.metric) < 1 or any(m not in (1, -1) for m in self.metric):
            raise ValueError("metric must be a non-empty tuple of +1/-1")

    @classmethod
    def standard(cls, t: int, s: int, convention: IndexConvention | str = IndexConvention.TIME_FIRST) -> "Signature":
        if t < 0 or s < 0 or t + s < 1:
            raise ValueError("need t, s >= 0 and t + s >= 1")
        return cls((1,) * t + (-1,) * s, IndexConvention(convention))

    @property
    def t(self) -> int:
        return self.metric.count(1)

    @property
    def s(self) -> int:
        return self.metric.count(-1)

    @property
    def d(self) -> int:
        return len(self.metric)

    @property
    def offset(self) -> int:
        return 0 if self.convention == IndexConvention.TIME_FIRST else 1

    def eta(self, i: int, j: int) -> int:
        return self.metric[i] if i == j else 0

    def label(self, i: int) -> int:
        return i + self.offset

    def index(self, label: int) -> int:
        i = label - self.offset
        if not 0 <= i < self.d:
            raise IndexError(f"generator label {label} out of range for {self}")
        return i

    def __str__(self) -> str:
        return f"({self.t},{self.s})"


class GammaRep:
    """A concrete set of generators {Gamma_alpha} with its provenance."""

    def __init__(
        self,
        signature: Signature,
        matrices: Sequence[ExactMatrix],
        kind: str,
        provenance: dict | None = None,
        symbol: str = "g",
    ):
        self.signature = signature
        self.matrices = tuple(matrices)
        self.kind = kind
        self.provenance = provenance or {"kind": kind}
        self.symbol = symbol
        if len(self.matrices) != signature.d:
            raise ValueError("number of matrices does not match signature")
        self._mono: dict[tuple, ExactMatrix] = {}

    @property
    def d(self) -> int:
        return self.signature.d

    @property
    def dim(self) -> int:
        return self.matrices[0].dim

    @property
    def hatted(self) -> bool:
        return self.symbol == "gh"

    def gamma(self, label: int) -> ExactMatrix:
        return self.matrices[self.signature.index(label)]

    def upper(self, i: int) -> ExactMatrix:
        """Gamma^i = eta^{ii} Gamma_i (0-based index)."""
        g = self.matrices[i]
        return g if self.signature.metric[i] == 1 else -g

    def monomial(self, indices: Iterable[int]) -> ExactMatrix:
        key = tuple(indices)
        m = self._mono.get(key)
        if m is None:
            m = mat_product((self.matrices[i] for i in key), self.dim)
            self._mono[key] = m
        return m

    def subsets(self) -> list[tuple[int, ...]]:
        return [c for k in range(self.d + 1) for c in combinations(range(self.d), k)]

    def all_product(self) -> ExactMatrix:
        return self.monomial(range(self.d))

    def monomial_text(self, indices: Sequence[int]) -> str:
        if not indices:
            return "1"
        return " ".join(f"{self.symbol}{self.signature.label(i)}" for i in indices)

    def to_json(self) -> dict:
        return {
            "signature": {"t": self.signature.t, "s": self.signature.s, "metric": list(self.signature.metric),
                          "index_convention": self.signature.convention.value},
            "kind": self.kind,
            "provenance": self.provenance,
            "dim": self.dim,
            "matrices": [m.to_json() for m in self.matrices],
        }

    def __repr__(self):
        return f"GammaRep({self.kind}, {self.signature}, dim={self.dim})"


def _m(rows) -> ExactMatrix:
    return ExactMatrix(rows)


_I = 1j

_CHIRAL_G0 = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
_G1 = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
_G2 = [[0, 0, 0, -_I], [0, 0, _I, 0], [0, _I, 0, 0], [-_I, 0, 0, 0]]
_G3 = [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]]
_DIRAC_G0 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]

_MAJ = [
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    [[0, 0, -1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, -1, 0, 0]],
    [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
]

BASE_KINDS = ("Chiral13", "Dirac13", "Majorana31", "HatFrom13")


def base_rep(kind: str, source: str = "Dirac13") -> GammaRep:
    """The fixed four-dimensional representations.

    ``HatFrom13`` multiplies a (1,3) representation by i and relabels so that
    hat-gamma_k = i gamma_k (k = 1, 2, 3) and hat-gamma_4 = i gamma_0.
    """
    sig13 = Signature.standard(1, 3, IndexConvention.TIME_FIRST)
    sig31 = Signature.standard(3, 1, IndexConvention.SPACE_FIRST)
    if kind == "Chiral13":
        return GammaRep(sig13, [_m(x) for x in (_CHIRAL_G0, _G1, _G2, _G3)], kind)
    if kind == "Dirac13":
        return GammaRep(sig13, [_m(x) for x in (_DIRAC_G0, _G1, _G2, _G3)], kind)
    if kind == "Majorana31":
        return GammaRep(sig31, [_m(x) for x in _MAJ], kind, symbol="gh")
    if kind == "HatFrom13":
        if source not in ("Dirac13", "Chiral13"):
            raise ValueError("HatFrom13 source must be Dirac13 or Chiral13")
        g = base_rep(source).matrices
        mats = [g[1].scale(I_UNIT), g[2].scale(I_UNIT), g[3].scale(I_UNIT), g[0].scale(I_UNIT)]
        return GammaRep(sig31, mats, kind, {"kind": kind, "source": source}, symbol="gh")
    raise ValueError(f"unknown base representation {kind!r}")


def verify_clifford(rep: GammaRep) -> bool:
    sig = rep.signature
    two_i = ExactMatrix.identity(rep.dim).scale(2)
    for a in range(rep.d):
        for b in range(a, rep.d):
            ac = anticommutator(rep.matrices[a], rep.matrices[b])
            want = two_i.scale(sig.eta(a, b)) if a == b else ExactMatrix.zeros(rep.dim)
            if ac != want:
                return False
    return True


def volume_element(rep: GammaRep) -> ExactMatrix:
    """Gamma_{d+1} = Gamma_1 ... Gamma_d in generator order."""
    return rep.all_product()


def _i_power(k: int) -> GaussScalar:
    return (ONE, I_UNIT, -ONE, -I_UNIT)[k % 4]


def extend_to_odd(rep: GammaRep, target: OddTarget | str, branch: Branch | str = Branch.PLUS_K) -> GammaRep:
    """Append k Gamma_{d+1}, squaring to +1 (AddTime) or -1 (AddSpace).

    k = +-i^(s+p) for AddTime and +-i^(s+p+1) for AddSpace, d = 2p.
    """
    target, branch = OddTarget(target), Branch(branch)
    d = rep.d
    if d % 2:
        raise ValueError("extend_to_odd needs an even-dimensional representation")
    p, s = d // 2, rep.signature.s
    k = _i_power(s + p + (0 if target == OddTarget.ADD_TIME else 1))
    if branch == Branch.MINUS_K:
        k = -k
    extra = volume_element(rep).scale(k)
    sig = Signature(rep.signature.metric + ((1,) if target == OddTarget.ADD_TIME else (-1,)), rep.signature.convention)
    prov = {"kind": "OddExtended", "target": target.value, "branch": branch.value, "k": k.short(),
            "from": rep.provenance}
    return GammaRep(sig, list(rep.matrices) + [extra], "OddExtended", prov, rep.symbol)


def tensor_build(
    rep_a: GammaRep, rep_b: GammaRep, k_sign: KSign | str = KSign.K_SQUARED_PLUS, branch: Branch | str = Branch.PLUS_K
) -> GammaRep:
    """Generators {Gamma_a (x) 1', k Gamma_{d+1} (x) Gamma'_a'}.

    ``k_sign`` is the sign of (k Gamma_{d+1})^2: plus gives C(t+t', s+s'),
    minus gives C(t+s', s+t').
    """
    k_sign, branch = KSign(k_sign), Branch(branch)
    if rep_a.d % 2:
        raise ValueError("tensor_build needs an even-dimensional first factor")
    p, s = rep_a.d // 2, rep_a.signature.s
    k = _i_power(s + p + (0 if k_sign == KSign.K_SQUARED_PLUS else 1))
    if branch == Branch.MINUS_K:
        k = -k
    vol = volume_element(rep_a).scale(k)
    ib = ExactMatrix.identity(rep_b.dim)
    mats = [kron(g, ib) for g in rep_a.matrices] + [kron(vol, g) for g in rep_b.matrices]
    flip = 1 if k_sign == KSign.K_SQUARED_PLUS else -1
    metric = rep_a.signature.metric + tuple(flip * m for m in rep_b.signature.metric)
    prov = {"kind": "TensorBuilt", "k_sign": k_sign.value, "k": k.short(), "left": rep_a.provenance,
            "right": rep_b.provenance}
    return GammaRep(Signature(metric, rep_a.signature.convention), mats, "TensorBuilt", prov)


def chirality(rep: GammaRep) -> ExactMatrix:
    """Gamma_{d+1} if s+p is even, i Gamma_{d+1} otherwise; squares to +1."""
    if rep.d % 2:
        raise ValueError("chirality needs even d")
    p, s = rep.d // 2, rep.signature.s
    vol = volume_element(rep)
    return vol if (s + p) % 2 == 0 else vol.scale(I_UNIT)


def weyl_projectors(rep: GammaRep) -> tuple[ExactMatrix, ExactMatrix]:
    """(P_minus, P_plus) with P_pm = (1 +- chirality)/2."""
    ch = chirality(rep)
    one = ExactMatrix.identity(rep.dim)
    half = GaussScalar(Fraction(1, 2))
    return (one - ch).scale(half), (one + ch).scale(half)


def weyl_project(rep: GammaRep, pinor: Sequence) -> tuple[tuple, tuple]:
    if len(pinor) != rep.dim:
        raise ValueError(f"pinor length {len(pinor)} does not match dimension {rep.dim}")
    pm, pp = weyl_projectors(rep)
    return pm.apply(pinor), pp.apply(pinor)


def reality_census(rep: GammaRep) -> tuple[int, int, int]:
    real = imag = mixed = 0
    for g in rep.matrices:
        if g.is_real():
            real += 1
        elif g.is_imaginary():
            imag += 1
        else:
            mixed += 1
    return real, imag, mixed


# classification


@dataclass(frozen=True)
class AlgebraClass:
    field_: str  # "R", "C" or "H"
    k: int
    split: bool = False

    @property
    def label(self) -> str:
        one = f"{self.field_}({self.k})"
        return f"{one}⊕{one}" if self.split else one

    @property
    def ascii(self) -> str:
        one = f"{self.field_}({self.k})"
        return f"{one}+{one}" if self.split else one

    def __str__(self) -> str:
        return self.label


def classify(m: int, n: int) -> AlgebraClass:
    """Closed-form isomorphism class of C(m, n), indexed by (m - n) mod 8."""
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 and m + n >= 1")
    d = m + n
    r = (m - n) % 8
    if r in (0, 2):
        return AlgebraClass("R", 2 ** (d // 2))
    if r == 1:
        return AlgebraClass("R", 2 ** ((d - 1) // 2), split=True)
    if r in (3, 7):
        return AlgebraClass("C", 2 ** ((d - 1) // 2))
    if r in (4, 6):
        return AlgebraClass("H", 2 ** (d // 2 - 1))
    return AlgebraClass("H", 2 ** ((d - 1) // 2 - 1), split=True)


def _low_dim() -> dict:
    s1, s2, s3 = pauli()
    i = I_UNIT
    return {
        (0, 1): ([ExactMatrix([[1j]])], "C"),
        (1, 0): ([ExactMatrix([[1, 0], [0, -1]])], "R⊕R"),
        (0, 2): ([s1.scale(i), s3.scale(i)], "H"),
        (1, 1): ([s1, s2.scale(i)], "M2(R)"),
        (2, 0): ([s1, s3], "M2(R)"),
        (0, 3): ([s1.scale(i), s2.scale(i), s3.scale(i)], "H⊕H"),
        (1, 2): ([s2, s1.scale(i), s3.scale(i)], "H⊗C"),
        (2, 1): ([s1, s3, s2.scale(i)], "R(2)⊕R(2)"),
        (3, 0): ([s1, s2, s3], "M2(C)"),
    }


LOW_DIM_TYPE_TO_CLASS = {
    "C": "C(1)",
    "R⊕R": "R(1)⊕R(1)",
    "H": "H(1)",
    "M2(R)": "R(2)",
    "H⊕H": "H(1)⊕H(1)",
    "H⊗C": "C(2)",  # alias: H (x) C is isomorphic to the complex 2x2 matrices
    "R(2)⊕R(2)": "R(2)⊕R(2)",
    "M2(C)": "C(2)",
}


def low_dim_rep(t: int, s: int) -> tuple[GammaRep, str]:
    """Low-dimensional generators and algebra type, in the order they are listed.

    The C(1,0) entry is the faithful 2x2 generator diag(1, -1); the other rows
    are irreducible.
    """
    mats, typ = _low_dim()[(t, s)]
    metric = tuple(1 if (g @ g) == ExactMatrix.identity(g.dim) else -1 for g in mats)
    return GammaRep(Signature(metric), mats, "LowDim", {"kind": "LowDim", "t": t, "s": s}), typ


def low_dim_rows() -> list[tuple[int, int]]:
    return sorted(_low_dim(), key=lambda ts: (ts[0] + ts[1], ts[1] - ts[0]))


def build_rep(t: int, s: int, convention: IndexConvention | str = IndexConvention.TIME_FIRST) -> GammaRep:
    """An irreducible representation of C(t, s) by repeated tensor/odd steps.

    Generator order follows the construction, so the metric need not be
    sorted; read it from ``rep.signature.metric``.
    """
    convention = IndexConvention(convention)
    d = t + s
    if t < 0 or s < 0 or d < 1:
        raise ValueError("need t, s >= 0 and t + s >= 1")
    if d == 1:
        mats = [ExactMatrix([[1]])] if t == 1 else [ExactMatrix([[1j]])]
        rep = GammaRep(Signature((1,) if t else (-1,), convention), mats, "Built", {"kind": "Built", "t": t, "s": s})
        return rep
    if d in (2, 3):
        base, _ = low_dim_rep(t, s)
        return GammaRep(Signature(base.signature.metric, convention), base.matrices, "Built",
                        {"kind": "Built", "t": t, "s": s, "from": "LowDim"})
    if d % 2:
        if t >= 1:
            return _relabel(extend_to_odd(build_rep(t - 1, s, convention), OddTarget.ADD_TIME), convention)
        return _relabel(extend_to_odd(build_rep(t, s - 1, convention), OddTarget.ADD_SPACE), convention)
    if t >= 1 and s >= 1:
        left, rest = low_dim_rep(1, 1)[0], (t - 1, s - 1)
    elif t >= 2:
        left, rest = low_dim_rep(2, 0)[0], (t - 2, s)
    else:
        left, rest = low_dim_rep(0, 2)[0], (t, s - 2)
    return _relabel(tensor_build(left, build_rep(*rest, convention)), convention)


def _relabel(rep: GammaRep, convention: IndexConvention) -> GammaRep:
    return GammaRep(Signature(rep.signature.metric, convention), rep.matrices, rep.kind, rep.provenance, rep.symbol)


def direct_sum(rep_a: GammaRep, rep_b: GammaRep) -> GammaRep:
    if rep_a.signature.metric != rep_b.signature.metric:
        raise ValueError("direct sum needs identical metrics")
    na, nb = rep_a.dim, rep_b.dim
    mats = []
    for a, b in zip(rep_a.matrices, rep_b.matrices):
        rows = [list(r) + [0] * nb for r in a.rows] + [[0] * na + list(r) for r in b.rows]
        mats.append(ExactMatrix(rows))
    prov = {"kind": "DirectSum", "left": rep_a.provenance, "right": rep_b.provenance}
    return GammaRep(rep_a.signature, mats, "DirectSum", prov, rep_a.symbol)


# similarity and commutants


def intertwiners(mats_a: Sequence[ExactMatrix], mats_b: Sequence[ExactMatrix]) -> list[ExactMatrix]:
    """Basis of {S : S A_k = B_k S for all k}, by exact linear algebra."""
    n = mats_a[0].dim
    rows = []
    for a, b in zip(mats_a, mats_b):
        # (S A - B S)[i][j] = sum_l S[i][l] A[l][j] - sum_l B[i][l] S[l][j]
        for i in range(n):
            for j in range(n):
                row = [GaussScalar(0)] * (n * n)
                for l in range(n):
                    if a.rows[l][j]:
                        row[i * n + l] = row[i * n + l] + a.rows[l][j]
                    if b.rows[i][l]:
                        row[l * n + j] = row[l * n + j] - b.rows[i][l]
                rows.append(row)
    sols = nullspace(rows, n * n)
    return [ExactMatrix([v[i * n:(i + 1) * n] for i in range(n)]) for v in sols]


def are_similar(rep_a: GammaRep, rep_b: GammaRep) -> bool:
    """True when some invertible S has S Gamma_a S^-1 = Gamma'_a for all a."""
    if rep_a.dim != rep_b.dim or rep_a.d != rep_b.d:
        return False
    from .exact_core import SingularMatrixError, inverse

    for s in intertwiners(rep_a.matrices, rep_b.matrices):
        try:
            inverse(s)
            return True
        except SingularMatrixError:
            continue
    return False


def commutant_dimension(rep: GammaRep) -> int:
    return len(intertwiners(rep.matrices, rep.matrices))


def is_irreducible(rep: GammaRep) -> bool:
    return commutant_dimension(rep) == 1


def monomial_decompose(rep: GammaRep, x: ExactMatrix) -> tuple[GaussScalar, tuple[int, ...]] | None:
    """Write x = c * Gamma_S for a generator subset S, if possible."""
    for sub in rep.subsets():
        m = rep.monomial(sub)
        c = trace(matmul(_inverse_monomial(rep, sub), x)) / rep.dim
        if c and m.scale(c) == x:
            return c, sub
    return None


def _inverse_monomial(rep: GammaRep, sub: tuple[int, ...]) -> ExactMatrix:
    # (G_a ... G_b)^-1 = G_b^-1 ... G_a^-1 and G^-1 = eta G
    sign = 1
    for i in sub:
        sign *= rep.signature.metric[i]
    return rep.monomial(tuple(reversed(sub))).scale(sign)


# quaternions


@dataclass(frozen=True)
class Quaternion:
    """a1 + a2 i + a3 j + a4 k with rational coefficients."""

    a: tuple[Fraction, Fraction, Fraction, Fraction] = field(default=(Fraction(1), Fraction(0), Fraction(0), Fraction(0)))

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        if len(self.a) != 4:
            raise ValueError("a quaternion has four coefficients")

    @classmethod
    def basis(cls, k: int) -> "Quaternion":
        v = [0, 0, 0, 0]
        v[k] = 1
        return cls(tuple(v))

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self.a
        a2, b2, c2, d2 = o.a
        return Quaternion((
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ))

    def __add__(self, o: "Quaternion") -> "Quaternion":
        return Quaternion(tuple(x + y for x, y in zip(self.a, o.a)))

    def conj(self) -> "Quaternion":
        a, b, c, d = self.a
        return Quaternion((a, -b, -c, -d))


Q_ONE, Q_I, Q_J, Q_K = (Quaternion.basis(k) for k in range(4))


def quaternion_matrix(alpha: Quaternion, beta: Quaternion) -> ExactMatrix:
    """M(alpha, beta) with M I(gamma) = I(alpha gamma beta^dagger), basis (1, i, j, k)."""
    cols = [(alpha * Quaternion.basis(j) * beta.conj()).a for j in range(4)]
    return ExactMatrix([[cols[j][i] for j in range(4)] for i in range(4)])
