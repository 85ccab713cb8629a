"""Renormalized Green functions on R^2 x (Klein bottle) and the fermion
bilinear currents they induce, in double precision.

Images of x are (x0, x1, x2 + m a, (-1)^m x3 + n b).  Even m = 2k gives the
first lattice sum, with the (0, 0) term removed; odd m = 2k + 1 gives the
second, which carries the fixed matrix Gamma_0 Gamma_1 Gamma_2.

    Pin13:  G = i/(2 pi)^2 [ sum (-1)^k / Q1 + sum (-1)^k (-i G0 G1 G2) / Q2 ]
    Pin31:  G = 1/(2 pi)^2 [ sum 1 / Q1      + sum G0 G1 G2 / Q2 ]

    Q1 = -d0^2 + d1^2 + (d2 + 2ka)^2 + (d3 + nb)^2
    Q2 = -d0^2 + d1^2 + (d2 + (2k+1)a)^2 + (x3 + x3' + nb)^2

with d = x - x'.  Gamma matrices are the Dirac (1,3) ones for both kinds.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class PinKind(str, Enum):
    PIN13 = "Pin13"
    PIN31 = "Pin31"

    @classmethod
    def parse(cls, s) -> "PinKind":
        if isinstance(s, PinKind):
            return s
        t = str(s).strip()
        aliases = {"13": cls.PIN13, "1,3": cls.PIN13, "pin13": cls.PIN13,
                   "31": cls.PIN31, "3,1": cls.PIN31, "pin31": cls.PIN31}
        if t.lower() in aliases:
            return aliases[t.lower()]
        return cls(t)


class KleinError(ValueError):
    pass


@dataclass(frozen=True)
class KleinConfig:
    pin_kind: PinKind = PinKind.PIN13
    a: float = 1.0
    b: float = 1.0
    N: int = 64
    tolerance: float = 1e-8
    x: tuple = (0.0, 0.0, 0.0, 0.3)
    xp: tuple | None = None  # None means the coincidence limit x' = x

    def __post_init__(self):
        object.__setattr__(self, "pin_kind", PinKind.parse(self.pin_kind))
        if not (self.a > 0 and self.b > 0):
            raise KleinError("a and b must be positive")
        if int(self.N) != self.N or self.N < 1:
            raise KleinError("N must be a positive integer")
        if not self.tolerance > 0:
            raise KleinError("tolerance must be positive")
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        if len(self.x) != 4:
            raise KleinError("x needs four components")
        if self.xp is not None:
            object.__setattr__(self, "xp", tuple(float(v) for v in self.xp))
            if len(self.xp) != 4:
                raise KleinError("x' needs four components")

    @property
    def x_prime(self) -> tuple:
        return self.x if self.xp is None else self.xp

    def with_(self, **kw) -> "KleinConfig":
        d = {k: getattr(self, k) for k in ("pin_kind", "a", "b", "N", "tolerance", "x", "xp")}
        d.update(kw)
        return KleinConfig(**d)

    def to_json(self) -> dict:
        return {"pin_kind": self.pin_kind.value, "a": self.a, "b": self.b, "N": self.N,
                "tolerance": self.tolerance, "x": list(self.x), "xp": None if self.xp is None else list(self.xp)}


@dataclass
class GreenValue:
    scalar_part: complex
    matrix_part_coefficient: complex  # coefficient of G0 G1 G2, prefactors included
    tail_estimate: float

    def matrix(self) -> np.ndarray:
        return self.scalar_part * np.eye(4) + self.matrix_part_coefficient * M3

    def to_json(self) -> dict:
        return {"scalar_part": [self.scalar_part.real, self.scalar_part.imag],
                "matrix_part_coefficient": [self.matrix_part_coefficient.real, self.matrix_part_coefficient.imag],
                "tail_estimate": self.tail_estimate}


# Dirac representation, lower-index generators with metric (1,-1,-1,-1)
_G = [
    np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]], dtype=complex),
    np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]], dtype=complex),
    np.array([[0, 0, 0, -1j], [0, 0, 1j, 0], [0, 1j, 0, 0], [-1j, 0, 0, 0]], dtype=complex),
    np.array([[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex),
]
ETA = (1, -1, -1, -1)
GAMMA = tuple(_G)
GAMMA_UPPER = tuple(e * g for e, g in zip(ETA, _G))
M3 = _G[0] @ _G[1] @ _G[2]
GAMMA5 = 1j * _G[0] @ _G[1] @ _G[2] @ _G[3]


def bilinear_basis() -> list[tuple[str, np.ndarray]]:
    out = [("1", np.eye(4, dtype=complex))]
    out += [(f"G{m}", _G[m]) for m in range(4)]
    out += [(f"G{m}G{n}", _G[m] @ _G[n]) for m in range(4) for n in range(m + 1, 4)]
    out += [(f"G5G{m}", GAMMA5 @ _G[m]) for m in range(4)]
    out.append(("G5", GAMMA5))
    return out


BILINEAR_LABELS = tuple(lbl for lbl, _ in bilinear_basis())


def _prefactors(kind: PinKind) -> tuple[complex, complex]:
    """(coefficient of sum1 in front of 1, coefficient of sum2 in front of G0G1G2)."""
    pre = 1 / (2 * math.pi) ** 2
    if kind == PinKind.PIN13:
        return 1j * pre, 1j * pre * (-1j)
    return pre + 0j, pre + 0j


def _grids(cfg: KleinConfig):
    N = int(cfg.N)
    n = np.arange(-N, N + 1, dtype=float)
    k1 = np.arange(-N, N + 1, dtype=float)
    k2 = np.arange(-N - 1, N + 1, dtype=float)  # symmetric set of odd images 2k+1
    K1, N1 = np.meshgrid(k1, n, indexing="ij")
    K2, N2 = np.meshgrid(k2, n, indexing="ij")
    return K1, N1, K2, N2


def _q_terms(cfg: KleinConfig):
    x, xp = cfg.x, cfg.x_prime
    d = [x[i] - xp[i] for i in range(4)]
    a, b = cfg.a, cfg.b
    K1, N1, K2, N2 = _grids(cfg)
    u2_1 = d[2] + 2 * K1 * a
    u3_1 = d[3] + N1 * b
    u2_2 = d[2] + (2 * K2 + 1) * a
    u3_2 = x[3] + xp[3] + N2 * b
    base = -d[0] ** 2 + d[1] ** 2
    q1 = base + u2_1 ** 2 + u3_1 ** 2
    q2 = base + u2_2 ** 2 + u3_2 ** 2
    mask = ~((K1 == 0) & (N1 == 0))
    return d, (K1, N1, u2_1, u3_1, q1, mask), (K2, N2, u2_2, u3_2, q2)


def _check_zero(q: np.ndarray, K: np.ndarray, N: np.ndarray, mask=None, odd=False) -> None:
    bad = q == 0
    if mask is not None:
        bad &= mask
    if bad.any():
        i = tuple(np.argwhere(bad)[0])
        m = 2 * int(K[i]) + (1 if odd else 0)
        raise KleinError(f"vanishing denominator at image (m, n) = ({m}, {int(N[i])})")


def _fsum(arr: np.ndarray) -> float:
    return math.fsum(arr.ravel().tolist())


def _signs(K: np.ndarray, kind: PinKind) -> np.ndarray:
    if kind == PinKind.PIN13:
        return np.where(K.astype(int) % 2 == 0, 1.0, -1.0)
    return np.ones_like(K)


def raw_sums(cfg: KleinConfig, axis: int | None = None) -> tuple[float, float]:
    """(sum1, sum2) without prefactors; derivative sums when ``axis`` is given."""
    d, (K1, N1, u21, u31, q1, mask), (K2, N2, u22, u32, q2) = _q_terms(cfg)
    _check_zero(q1, K1, N1, mask)
    _check_zero(q2, K2, N2, odd=True)
    s1, s2 = _signs(K1, cfg.pin_kind), _signs(K2, cfg.pin_kind)
    q1s = np.where(mask, q1, 1.0)
    if axis is None:
        t1 = np.where(mask, s1 / q1s, 0.0)
        t2 = s2 / q2
    else:
        if axis not in (0, 1, 2, 3):
            raise KleinError("axis must be 0..3")
        dq1 = {0: -2 * d[0] + 0 * q1, 1: 2 * d[1] + 0 * q1, 2: 2 * u21, 3: 2 * u31}[axis]
        dq2 = {0: -2 * d[0] + 0 * q2, 1: 2 * d[1] + 0 * q2, 2: 2 * u22, 3: 2 * u32}[axis]
        t1 = np.where(mask, -s1 * dq1 / q1s ** 2, 0.0)
        t2 = -s2 * dq2 / q2 ** 2
    return _fsum(t1), _fsum(t2)


def _tail_derivative(cfg: KleinConfig) -> float:
    c = min(cfg.a, cfg.b)
    x3, x3p = cfg.x[3], cfg.x_prime[3]
    sep = max(abs(cfg.x[i] - cfg.x_prime[i]) for i in range(4))
    d = max(cfg.a, abs(x3 + x3p), sep)
    u0 = c * cfg.N - d
    if u0 <= 0:
        return math.inf
    return (16 / c ** 2) * (1 / u0 + d / (2 * u0 ** 2)) / (2 * math.pi) ** 2


def g_ren(cfg: KleinConfig) -> GreenValue:
    """Truncated renormalized Green function.

    The Pin31 sums are log divergent in N (no alternating sign), so their
    tail is reported as infinite; for Pin13 the tail is |S_N - S_N/2|.
    """
    s1, s2 = raw_sums(cfg)
    p1, p2 = _prefactors(cfg.pin_kind)
    if cfg.pin_kind == PinKind.PIN31:
        tail = math.inf
    else:
        h1, h2 = raw_sums(cfg.with_(N=max(1, cfg.N // 2)))
        tail = (abs(s1 - h1) + abs(s2 - h2)) / (2 * math.pi) ** 2
    return GreenValue(p1 * s1, p2 * s2, tail)


def d_g_ren(cfg: KleinConfig, axis: int) -> GreenValue:
    """Term-wise derivative with respect to x^axis, then x' -> x (or the given x')."""
    s1, s2 = raw_sums(cfg, axis)
    p1, p2 = _prefactors(cfg.pin_kind)
    return GreenValue(p1 * s1, p2 * s2, _tail_derivative(cfg))


def dirac_green_derivative(cfg: KleinConfig) -> np.ndarray:
    """Gamma^alpha d_alpha G as a 4x4 matrix."""
    out = np.zeros((4, 4), dtype=complex)
    for axis in range(4):
        out += GAMMA_UPPER[axis] @ d_g_ren(cfg, axis).matrix()
    return out


@dataclass
class CurrentTable:
    config: KleinConfig
    values: dict[str, complex]
    nonvanishing: dict[str, bool]
    threshold: float
    tail_estimate: float
    derivatives: dict[int, GreenValue] = field(default_factory=dict)

    @property
    def pattern(self) -> tuple[str, ...]:
        return tuple(k for k in BILINEAR_LABELS if self.nonvanishing[k])

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "threshold": self.threshold,
            "tail_estimate": self.tail_estimate,
            "pattern": list(self.pattern),
            "derivatives": {str(ax): gv.to_json() for ax, gv in sorted(self.derivatives.items())},
            "rows": [{"bilinear": k, "re": self.values[k].real, "im": self.values[k].imag,
                      "verdict": "nonzero" if self.nonvanishing[k] else "zero"} for k in BILINEAR_LABELS],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bilinear", "re", "im", "verdict"])
        for k in BILINEAR_LABELS:
            v = self.values[k]
            w.writerow([k, f"{v.real:.12e}", f"{v.imag:.12e}", "nonzero" if self.nonvanishing[k] else "zero"])
        return buf.getvalue()


def current_table(cfg: KleinConfig) -> CurrentTable:
    """tr(A Gamma^alpha d_alpha G) at coincidence over the 16 bilinears.

    An entry counts as vanishing when |value| <= tolerance * max(1, largest).
    """
    derivs = {ax: d_g_ren(cfg, ax) for ax in range(4)}
    dg = np.zeros((4, 4), dtype=complex)
    for ax, gv in derivs.items():
        dg += GAMMA_UPPER[ax] @ gv.matrix()
    values = {lbl: complex(np.trace(A @ dg)) for lbl, A in bilinear_basis()}
    largest = max(abs(v) for v in values.values())
    thr = cfg.tolerance * max(1.0, largest)
    nonzero = {k: abs(v) > thr for k, v in values.items()}
    return CurrentTable(cfg, values, nonzero, thr, derivs[0].tail_estimate, derivs)
