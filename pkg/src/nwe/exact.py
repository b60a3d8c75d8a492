"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`, which is kept in lowest terms with a
positive denominator on construction, so equality is structural.  Matrices are
immutable row-major containers of fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: every value in this package must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    """Canonical string form: ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        object.__setattr__(self, "entries", tuple(to_rational(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> RMatrix:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RMatrix:
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Sequence) -> RMatrix:
        n = len(values)
        out = [Fraction(0)] * (n * n)
        for i, v in enumerate(values):
            out[i * n + i] = to_rational(v)
        return cls(n, n, tuple(out))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> RMatrix:
        return RMatrix(self.cols, self.rows,
                       tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def __add__(self, other: RMatrix) -> RMatrix:
        self._check_same_shape(other)
        return RMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RMatrix) -> RMatrix:
        self._check_same_shape(other)
        return RMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> RMatrix:
        c = to_rational(c)
        return RMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __matmul__(self, other: RMatrix) -> RMatrix:
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum((r[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return RMatrix(self.rows, other.cols, tuple(out))

    def apply(self, x: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(x) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(self.row(i), x)), Fraction(0))
                     for i in range(self.rows))

    def _check_same_shape(self, other: RMatrix):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")


def rref(A: RMatrix) -> tuple[RMatrix, list[int], int]:
    """Reduced row-echelon form of ``A`` over the rationals.

    Returns ``(R, pivots, rank)`` where ``pivots`` are the pivot column indices.
    """
    m = A.tolist()
    pivots = _rref_inplace(m, A.cols)
    return RMatrix.from_rows(m), pivots, len(pivots)


def _rref_inplace(m: list[list[Fraction]], ncols: int) -> list[int]:
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        pivot_row = m[r]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    m[i] = [x - f * y for x, y in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return pivots


def nullspace(A: RMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : A x = 0}``, one vector per free column.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns, so the basis is canonical for a given row space.
    """
    R, pivots, _ = rref(A)
    free = [c for c in range(A.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * A.cols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -R[i, f]
        basis.append(tuple(x))
    return basis


def rank(vectors: Iterable[Sequence]) -> int:
    """Dimension of the span of ``vectors``; 0 for an empty collection."""
    vectors = [tuple(to_rational(x) for x in v) for v in vectors]
    if not vectors:
        return 0
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise ValueError("vectors have different dimensions")
    if dim == 0:
        return 0
    return rref(RMatrix.from_rows(vectors))[2]


def _require_symmetric(S: RMatrix):
    if not S.is_square or not S.is_symmetric():
        raise ValueError("matrix must be square and exactly symmetric")


def is_psd(S: RMatrix) -> bool:
    """Exact positive-semidefiniteness test for a symmetric rational matrix.

    Symmetric Gaussian elimination with diagonal pivoting.  A negative
    diagonal entry means S is indefinite; a zero diagonal entry forces the
    whole row and column to vanish.
    """
    _require_symmetric(S)
    a = S.tolist()
    active = list(range(S.rows))
    while active:
        k = max(active, key=lambda i: a[i][i])
        pivot = a[k][k]
        if pivot < 0:
            return False
        if pivot == 0:
            # every remaining diagonal is 0; PSD only if nothing is left coupled
            return all(a[i][j] == 0 for i in active for j in active)
        active.remove(k)
        for i in active:
            f = a[i][k] / pivot
            if f != 0:
                for j in active:
                    a[i][j] -= f * a[k][j]
    return True


def gershgorin_bounds(S: RMatrix) -> tuple[Fraction, Fraction]:
    """Rational interval containing every eigenvalue of the symmetric ``S``."""
    _require_symmetric(S)
    lows, highs = [], []
    for i in range(S.rows):
        radius = sum((abs(S[i, j]) for j in range(S.cols) if j != i), Fraction(0))
        lows.append(S[i, i] - radius)
        highs.append(S[i, i] + radius)
    return min(lows), max(highs)
