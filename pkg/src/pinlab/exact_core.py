"""Exact arithmetic over the Gaussian rationals Q(i).

Scalars are pairs of ``fractions.Fraction``; matrices are dense, square and
immutable.  Nothing here ever rounds.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction, "GaussScalar"]

_SHORT_RE = re.compile(r"^(?:(?P<re>[+-]?\d+(?:/\d+)?)(?=[+-]))?(?P<sign>[+-])?(?:(?P<im>\d+(?:/\d+)?)\*)?i$")
_SCALAR_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)\s*(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*\*\s*i\s*$"
)


class GaussScalar:
    """A number ``re + im*i`` with rational parts, always in lowest terms."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floats are not exact; pass int or Fraction")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussScalar is immutable")

    @staticmethod
    def coerce(x: Number | complex) -> "GaussScalar":
        if isinstance(x, GaussScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussScalar(x, 0)
        if isinstance(x, complex):
            if x.real.is_integer() and x.imag.is_integer():
                return GaussScalar(int(x.real), int(x.imag))
            raise TypeError(f"non-integral complex {x!r} is not exact")
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussScalar")

    # arithmetic
    def __add__(self, other):
        try:
            o = GaussScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return NotImplemented
        try:
            o = GaussScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussScalar.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussScalar")
        return GaussScalar((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        return GaussScalar.coerce(other) / self

    def __neg__(self):
        return GaussScalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else ONE / self
        out = ONE
        for _ in range(abs(k)):
            out = out * base
        return out

    def conjugate(self) -> "GaussScalar":
        return GaussScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        try:
            o = GaussScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def is_imag(self) -> bool:
        return self.re == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    # text forms
    def __str__(self) -> str:
        return self.canonical()

    def canonical(self) -> str:
        """Serialize as ``p/q+r/s*i`` (both parts always present)."""
        sign = "-" if self.im < 0 else "+"
        im = abs(self.im)
        return f"{self.re.numerator}/{self.re.denominator}{sign}{im.numerator}/{im.denominator}*i"

    def short(self) -> str:
        """Compact human form: ``1``, ``-i``, ``1/2+3/4*i``."""
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        im = abs(self.im)
        ims = "i" if im == 1 else f"{im}*i"
        return f"{self.re}{sign}{ims}"

    def __repr__(self) -> str:
        return f"GaussScalar({self.short()})"

    @classmethod
    def parse(cls, text: str) -> "GaussScalar":
        """Inverse of :meth:`canonical`; also accepts the :meth:`short` forms."""
        t = text.strip()
        m = _SCALAR_RE.match(t)
        if m:
            im = Fraction(m.group("im"))
            return cls(Fraction(m.group("re")), im if m.group("sign") == "+" else -im)
        s = t.replace(" ", "")
        if s in ("i", "+i"):
            return I_UNIT
        if s == "-i":
            return -I_UNIT
        m = _SHORT_RE.match(s)
        if m:
            im = Fraction(m.group("im") or 1)
            return cls(Fraction(m.group("re") or 0), im if m.group("sign") != "-" else -im)
        try:
            return cls(Fraction(s), 0)
        except ValueError:
            raise ValueError(f"not a Gaussian rational: {text!r}") from None


ZERO = GaussScalar(0)
ONE = GaussScalar(1)
I_UNIT = GaussScalar(0, 1)
FOURTH_ROOTS = (ONE, I_UNIT, -ONE, -I_UNIT)


def gs(x: Number | complex) -> GaussScalar:
    return GaussScalar.coerce(x)


def phase_exponent(z: GaussScalar) -> int | None:
    """Return k with z == i**k, or None when z is not a fourth root of unity."""
    for k, r in enumerate(FOURTH_ROOTS):
        if z == r:
            return k
    return None


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


class ExactMatrix:
    """Dense square matrix of GaussScalar entries."""

    __slots__ = ("dim", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[Number | complex]]):
        data = tuple(tuple(gs(x) for x in r) for r in rows)
        n = len(data)
        if n == 0 or any(len(r) != n for r in data):
            raise ValueError("ExactMatrix must be square and non-empty")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def _raw(cls, rows: tuple) -> "ExactMatrix":
        m = object.__new__(cls)
        object.__setattr__(m, "dim", len(rows))
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "_hash", None)
        return m

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "ExactMatrix":
        return cls._raw(tuple((ZERO,) * n for _ in range(n)))

    @classmethod
    def diag(cls, values: Sequence[Number]) -> "ExactMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(x.short() for x in r) for r in self.rows)
        return f"ExactMatrix([{body}])"

    # arithmetic
    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_dims(self, other)
        return ExactMatrix._raw(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_dims(self, other)
        return ExactMatrix._raw(
            tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c: Number) -> "ExactMatrix":
        c = gs(c)
        return ExactMatrix._raw(tuple(tuple(c * a for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return matmul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return matmul(self, other)

    def __pow__(self, k: int) -> "ExactMatrix":
        base = self if k >= 0 else inverse(self)
        out = ExactMatrix.identity(self.dim)
        for _ in range(abs(k)):
            out = matmul(out, base)
        return out

    def apply(self, vec: Sequence[Number]) -> tuple:
        if len(vec) != self.dim:
            raise ValueError("vector length does not match matrix dimension")
        v = [gs(x) for x in vec]
        return tuple(_dot(r, v) for r in self.rows)

    # structure queries
    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def scalar_value(self) -> GaussScalar | None:
        """If the matrix is c*I return c, else None."""
        c = self.rows[0][0]
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if (i == j and x != c) or (i != j and x):
                    return None
        return c

    def is_real(self) -> bool:
        return all(x.im == 0 for r in self.rows for x in r)

    def is_imaginary(self) -> bool:
        return all(x.re == 0 for r in self.rows for x in r)

    def to_complex(self) -> list[list[complex]]:
        return [[x.to_complex() for x in r] for r in self.rows]

    def to_json(self) -> list[list[str]]:
        return [[x.canonical() for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "ExactMatrix":
        return cls([[GaussScalar.parse(x) for x in r] for r in data])

    def pretty(self) -> str:
        cells = [[x.short() for x in r] for r in self.rows]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells)


def _check_dims(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def _dot(row, col) -> GaussScalar:
    # accumulate real and imaginary parts separately; cheaper than GaussScalar products
    re = Fraction(0)
    im = Fraction(0)
    for a, b in zip(row, col):
        if a.re == 0 and a.im == 0:
            continue
        if b.re == 0 and b.im == 0:
            continue
        re += a.re * b.re - a.im * b.im
        im += a.re * b.im + a.im * b.re
    return GaussScalar(re, im)


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_dims(a, b)
    cols = tuple(zip(*b.rows))
    return ExactMatrix._raw(tuple(tuple(_dot(r, c) for c in cols) for r in a.rows))


def mat_product(mats: Iterable[ExactMatrix], dim: int | None = None) -> ExactMatrix:
    out = None
    for m in mats:
        out = m if out is None else matmul(out, m)
    if out is None:
        if dim is None:
            raise ValueError("empty product needs an explicit dimension")
        return ExactMatrix.identity(dim)
    return out


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Row-major block layout: (a (x) b)[i*nb + p][j*nb + q] = a[i][j] * b[p][q]."""
    nb = b.dim
    rows = []
    for i in range(a.dim):
        for p in range(nb):
            rows.append(tuple(a.rows[i][j] * b.rows[p][q] for j in range(a.dim) for q in range(nb)))
    return ExactMatrix._raw(tuple(rows))


def transpose(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix._raw(tuple(zip(*a.rows)))


def conjugate(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix._raw(tuple(tuple(x.conjugate() for x in r) for r in a.rows))


def dagger(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix._raw(tuple(tuple(x.conjugate() for x in c) for c in zip(*a.rows)))


def trace(a: ExactMatrix) -> GaussScalar:
    out = ZERO
    for i in range(a.dim):
        out = out + a.rows[i][i]
    return out


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return matmul(a, b) - matmul(b, a)


def anticommutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return matmul(a, b) + matmul(b, a)


class SingularMatrixError(ArithmeticError):
    pass


def inverse(a: ExactMatrix) -> ExactMatrix:
    """Gauss-Jordan elimination, pivoting on the first nonzero entry."""
    n = a.dim
    work = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(a.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return ExactMatrix._raw(tuple(tuple(r[n:]) for r in work))


def nullspace(a: ExactMatrix | Sequence[Sequence[GaussScalar]], ncols: int | None = None) -> list[tuple]:
    """Basis of {x : a x = 0} from the reduced row echelon form.

    ``a`` may be an ExactMatrix or a list of rows (rectangular systems).
    """
    if isinstance(a, ExactMatrix):
        work = [list(r) for r in a.rows]
        n = a.dim
    else:
        work = [[gs(x) for x in r] for r in a]
        n = ncols if ncols is not None else (len(work[0]) if work else 0)
    m = len(work)
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        piv = next((r for r in range(row, m) if work[r][col]), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        p = work[row][col]
        work[row] = [x / p for x in work[row]]
        for r in range(m):
            if r != row and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
    pivot_set = set(pivots)
    basis = []
    for fcol in range(n):
        if fcol in pivot_set:
            continue
        v = [ZERO] * n
        v[fcol] = ONE
        for r, pcol in enumerate(pivots):
            v[pcol] = -work[r][fcol]
        basis.append(tuple(v))
    return basis


def vdot(u: Sequence[GaussScalar], v: Sequence[GaussScalar]) -> GaussScalar:
    """Hermitian inner product sum(conj(u_k) v_k)."""
    return _dot([x.conjugate() for x in u], v)


def outer(u: Sequence[GaussScalar], w: Sequence[GaussScalar]) -> ExactMatrix:
    """The matrix u w^T (no conjugation)."""
    return ExactMatrix._raw(tuple(tuple(a * b for b in w) for a in u))


def vec_scale(c: Number, v: Sequence[GaussScalar]) -> tuple:
    c = gs(c)
    return tuple(c * x for x in v)


def vec_add(u: Sequence[GaussScalar], v: Sequence[GaussScalar]) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def pauli() -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    s1 = ExactMatrix([[0, 1], [1, 0]])
    s2 = ExactMatrix([[0, -1j], [1j, 0]])
    s3 = ExactMatrix([[1, 0], [0, -1]])
    return s1, s2, s3


def determinant(a: ExactMatrix) -> GaussScalar:
    n = a.dim
    work = [list(r) for r in a.rows]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        p = work[col][col]
        det = det * p
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] / p
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return det
