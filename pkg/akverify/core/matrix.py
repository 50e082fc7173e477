"""
Small dense immutable matrices and vectors over exact or float scalars.

Every operation returns a new value. Exact linear algebra (rref, kernels,
determinants, inverses, LDL factors) runs on ``sympy.Matrix``; float mode
runs on numpy, with a pivoted reduction that treats anything within the
tolerance as zero. Exact products of rational arrays are computed over
sympy's ``QQ`` ground domain and converted back to ``Rational``.
"""

from dataclasses import dataclass
from random import Random
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np
import sympy
from sympy import QQ, Rational
from sympy.polys.polyerrors import CoercionFailed

from akverify.core.errors import DimensionError, ModeMismatchError, NotPositiveDefiniteError
from akverify.core.scalar import EXACT, Scalar, ScalarMode, float_mode, reduce_exact

MAX_SIZE = 20

_to_qq = np.vectorize(QQ.convert, otypes=[object])


def _check_modes(a: ScalarMode, b: ScalarMode) -> None:
    if a.kind != b.kind:
        raise ModeMismatchError(f"Cannot combine {a.label()} and {b.label()} values")


def canonical(value) -> Scalar:
    """Sympy form of an exact entry; ``QQ`` elements become ``Rational``."""
    if isinstance(value, QQ.dtype):
        return QQ.to_sympy(value)
    return reduce_exact(value)


def over_qq(mode: ScalarMode, *values):
    """
    Exact arrays and scalars with entries in ``QQ``.

    Everything is returned unchanged in float mode, or when any entry is
    not rational, so the values can always be combined with each other.
    """
    if not mode.exact:
        return values
    try:
        return tuple(_to_qq(v) if isinstance(v, np.ndarray) else QQ.convert(v) for v in values)
    except CoercionFailed:
        return values


def _exact_is_zero(value) -> bool:
    return canonical(value) == 0


def _tidy(values: Iterable[Scalar], mode: ScalarMode) -> list[Scalar]:
    if not mode.exact:
        return [float(v) for v in values]
    return [canonical(v) for v in values]


class Vector:
    """Immutable vector of scalars."""

    __slots__ = ("_entries", "mode")

    def __init__(self, entries: Iterable[int | Scalar], mode: ScalarMode = EXACT):
        values = tuple(mode.coerce(x) for x in entries)
        if not values or len(values) > MAX_SIZE:
            raise DimensionError(f"Vector length must be 1..{MAX_SIZE}, got {len(values)}")
        self._entries = values
        self.mode = mode

    @classmethod
    def _trusted(cls, entries: Sequence[Scalar], mode: ScalarMode) -> "Vector":
        obj = object.__new__(cls)
        obj._entries = tuple(entries)
        obj.mode = mode
        return obj

    @classmethod
    def zeros(cls, n: int, mode: ScalarMode = EXACT) -> "Vector":
        return cls([0] * n, mode)

    @classmethod
    def basis(cls, n: int, i: int, mode: ScalarMode = EXACT) -> "Vector":
        """The i-th standard basis vector (0-based)."""
        if not 0 <= i < n:
            raise DimensionError(f"Basis index {i} out of range for length {n}")
        return cls([1 if k == i else 0 for k in range(n)], mode)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self._entries)

    def __getitem__(self, i: int) -> Scalar:
        if not isinstance(i, int) or not 0 <= i < len(self._entries):
            raise DimensionError(f"Index {i} out of range for vector of length {len(self)}")
        return self._entries[i]

    @property
    def entries(self) -> tuple[Scalar, ...]:
        return self._entries

    def _same_shape(self, other: "Vector") -> None:
        _check_modes(self.mode, other.mode)
        if len(self) != len(other):
            raise DimensionError(f"Vector lengths differ: {len(self)} vs {len(other)}")

    def __add__(self, other: "Vector") -> "Vector":
        self._same_shape(other)
        return Vector._trusted([a + b for a, b in zip(self._entries, other._entries)], self.mode)

    def __sub__(self, other: "Vector") -> "Vector":
        self._same_shape(other)
        return Vector._trusted([a - b for a, b in zip(self._entries, other._entries)], self.mode)

    def __neg__(self) -> "Vector":
        return Vector._trusted([-a for a in self._entries], self.mode)

    def scale(self, c: int | Scalar) -> "Vector":
        c = self.mode.coerce(c)
        return Vector._trusted([c * a for a in self._entries], self.mode)

    def __mul__(self, c: int | Scalar) -> "Vector":
        return self.scale(c)

    __rmul__ = __mul__

    def dot(self, other: "Vector") -> Scalar:
        self._same_shape(other)
        return sum((a * b for a, b in zip(self._entries, other._entries)), self.mode.zero)

    def is_zero(self) -> bool:
        return all(self.mode.is_zero(a) for a in self._entries)

    def equals(self, other: "Vector") -> bool:
        """Mode-aware equality (within tolerance in float mode)."""
        self._same_shape(other)
        return all(self.mode.equal(a, b) for a, b in zip(self._entries, other._entries))

    def to_float(self, tol: float) -> "Vector":
        return Vector([float(a) for a in self._entries], float_mode(tol))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.mode.kind == other.mode.kind and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"Vector({[str(a) for a in self._entries]})"


class Matrix:
    """Immutable dense matrix of scalars (row-major)."""

    __slots__ = ("_rows", "mode")

    def __init__(self, rows: Iterable[Iterable[int | Scalar]], mode: ScalarMode = EXACT):
        data = tuple(tuple(mode.coerce(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionError("Matrix must have at least one row and one column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionError("Ragged matrix rows")
        if len(data) > MAX_SIZE or width > MAX_SIZE:
            raise DimensionError(f"Matrix shape {len(data)}x{width} exceeds {MAX_SIZE}")
        self._rows = data
        self.mode = mode

    @classmethod
    def _trusted(cls, rows: Sequence[Sequence[Scalar]], mode: ScalarMode) -> "Matrix":
        obj = object.__new__(cls)
        obj._rows = tuple(tuple(row) for row in rows)
        obj.mode = mode
        return obj

    @classmethod
    def zeros(cls, nrows: int, ncols: int, mode: ScalarMode = EXACT) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], mode)

    @classmethod
    def identity(cls, n: int, mode: ScalarMode = EXACT) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], mode)

    @classmethod
    def diag(cls, values: Sequence[int | Scalar], mode: ScalarMode = EXACT) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], mode)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector]) -> "Matrix":
        if not columns:
            raise DimensionError("No columns given")
        mode = columns[0].mode
        for c in columns:
            _check_modes(mode, c.mode)
        n = len(columns[0])
        if any(len(c) != n for c in columns):
            raise DimensionError("Columns have different lengths")
        return cls._trusted([[c.entries[i] for c in columns] for i in range(n)], mode)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self._rows), len(self._rows[0])

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def entries(self) -> tuple[tuple[Scalar, ...], ...]:
        return self._rows

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        i, j = key
        if not (isinstance(i, int) and isinstance(j, int)):
            raise DimensionError(f"Matrix index must be a pair of ints, got {key!r}")
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise DimensionError(f"Index ({i}, {j}) out of range for shape {self.shape}")
        return self._rows[i][j]

    def row(self, i: int) -> Vector:
        if not 0 <= i < self.nrows:
            raise DimensionError(f"Row {i} out of range for shape {self.shape}")
        return Vector._trusted(self._rows[i], self.mode)

    def col(self, j: int) -> Vector:
        if not 0 <= j < self.ncols:
            raise DimensionError(f"Column {j} out of range for shape {self.shape}")
        return Vector._trusted([row[j] for row in self._rows], self.mode)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix._trusted(list(zip(*self._rows)), self.mode)

    def _same_shape(self, other: "Matrix") -> None:
        _check_modes(self.mode, other.mode)
        if self.shape != other.shape:
            raise DimensionError(f"Shapes differ: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._trusted(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.mode
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._trusted(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.mode
        )

    def __neg__(self) -> "Matrix":
        return Matrix._trusted([[-a for a in r] for r in self._rows], self.mode)

    def scale(self, c: int | Scalar) -> "Matrix":
        c = self.mode.coerce(c)
        return Matrix._trusted([[c * a for a in r] for r in self._rows], self.mode)

    def __mul__(self, c: int | Scalar) -> "Matrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Vector):
            _check_modes(self.mode, other.mode)
            if self.ncols != len(other):
                raise DimensionError(f"Cannot apply {self.shape} matrix to length {len(other)}")
            entries = np.array(other.entries, dtype=object if self.mode.exact else float)
            a, x = over_qq(self.mode, self.array(), entries)
            return Vector._trusted(_tidy(a @ x, self.mode), self.mode)
        if isinstance(other, Matrix):
            _check_modes(self.mode, other.mode)
            if self.ncols != other.nrows:
                raise DimensionError(f"Cannot multiply {self.shape} by {other.shape}")
            a, b = over_qq(self.mode, self.array(), other.array())
            return Matrix.from_array(a @ b, self.mode)
        return NotImplemented

    def commutator(self, other: "Matrix") -> "Matrix":
        """``self @ other - other @ self``."""
        return self @ other - other @ self

    def map(self, fn: Callable[[Scalar], Scalar]) -> "Matrix":
        return Matrix([[fn(a) for a in r] for r in self._rows], self.mode)

    def trace(self) -> Scalar:
        self._require_square()
        return sum((self._rows[i][i] for i in range(self.nrows)), self.mode.zero)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def _require_square(self) -> None:
        if not self.is_square():
            raise DimensionError(f"Square matrix required, got {self.shape}")

    def is_zero(self) -> bool:
        return all(self.mode.is_zero(a) for r in self._rows for a in r)

    def equals(self, other: "Matrix") -> bool:
        """Mode-aware equality (within tolerance in float mode)."""
        self._same_shape(other)
        return (self - other).is_zero()

    def is_symmetric(self) -> bool:
        return self.is_square() and self.equals(self.T)

    def max_abs(self) -> float:
        return max(abs(float(a)) for r in self._rows for a in r)

    def frobenius_squared(self) -> Scalar:
        return sum((a * a for r in self._rows for a in r), self.mode.zero)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._trusted([[self[i, j] for j in cols] for i in rows], self.mode)

    def array(self) -> np.ndarray:
        """Entries as a numpy array: ``object`` dtype in exact mode, ``float64`` otherwise."""
        return np.array(self._rows, dtype=object if self.mode.exact else float)

    @classmethod
    def from_array(cls, arr: np.ndarray, mode: ScalarMode) -> "Matrix":
        return cls._trusted([_tidy(row, mode) for row in arr], mode)

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix([list(r) for r in self._rows])

    @classmethod
    def from_sympy(cls, m: sympy.Matrix, mode: ScalarMode = EXACT) -> "Matrix":
        return cls._trusted([_tidy(m.row(i), mode) for i in range(m.rows)], mode)

    def det(self) -> Scalar:
        self._require_square()
        if self.mode.exact:
            return reduce_exact(self.to_sympy().det(method="bareiss"))
        return float(np.linalg.det(self.array()))

    def inverse(self) -> "Matrix":
        """Inverse matrix.

        Raises:
            DimensionError: If the matrix is singular or not square.
        """
        self._require_square()
        if self.mode.exact:
            try:
                return Matrix.from_sympy(self.to_sympy().inv(iszerofunc=_exact_is_zero))
            except ValueError:
                raise DimensionError("Matrix is singular")
        if self.rank() < self.nrows:
            raise DimensionError("Matrix is singular")
        return Matrix.from_array(np.linalg.inv(self.array()), self.mode)

    def rank(self) -> int:
        return len(self.rref()[1])

    def rref(self) -> tuple["Matrix", list[int]]:
        return _rref(self)

    def to_float(self, tol: float) -> "Matrix":
        return Matrix([[float(a) for a in r] for r in self._rows], float_mode(tol))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.mode.kind == other.mode.kind and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Matrix({[[str(a) for a in r] for r in self._rows]})"


@dataclass(frozen=True)
class NoSolution:
    """Outcome of an inconsistent linear system (a value, not an error)."""

    row: int
    reason: str = "inconsistent system"


def _float_rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Gauss-Jordan with partial pivoting; entries within the tolerance count as zero."""
    work = m.array()
    tol = m.mode.tol
    nrows, ncols = work.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = r + int(np.argmax(np.abs(work[r:, c])))
        if abs(work[p, c]) <= tol:
            work[r:, c] = 0.0
            continue
        work[[r, p]] = work[[p, r]]
        work[r] = work[r] / work[r, c]
        others = [k for k in range(nrows) if k != r]
        work[others] -= np.outer(work[others, c], work[r])
        pivots.append(c)
        r += 1
    return Matrix.from_array(work, m.mode), pivots


def _rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    if not m.mode.exact:
        return _float_rref(m)
    reduced, pivots = m.to_sympy().rref(iszerofunc=_exact_is_zero)
    return Matrix.from_sympy(reduced), list(pivots)


def nullspace(m: Matrix) -> list[Vector]:
    """
    Basis of the kernel of ``m``.

    One basis vector per free column: 1 at the free column, minus the
    reduced entries at the pivot columns.

    Args:
        m: Matrix whose kernel is wanted.

    Returns:
        Independent vectors spanning the kernel; ``cols - rank`` of them.
    """
    if m.mode.exact:
        return [
            Vector._trusted(_tidy(v, m.mode), m.mode)
            for v in m.to_sympy().nullspace(iszerofunc=_exact_is_zero)
        ]
    reduced, pivots = _rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0.0] * m.ncols
        v[f] = 1.0
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, f]
        basis.append(Vector._trusted(v, m.mode))
    return basis


def solve_linear(m: Matrix, b: Vector) -> Vector | NoSolution:
    """
    Solve ``m x = b``.

    Free variables are set to zero, so an underdetermined but consistent
    system yields one particular solution.

    Args:
        m: Coefficient matrix.
        b: Right-hand side.

    Returns:
        A solution vector, or :class:`NoSolution` naming the first
        inconsistent reduced row.

    Raises:
        DimensionError: If ``b`` does not match the rows of ``m``.
        ModeMismatchError: If ``m`` and ``b`` use different modes.
    """
    _check_modes(m.mode, b.mode)
    if len(b) != m.nrows:
        raise DimensionError(f"Right-hand side length {len(b)} != {m.nrows} rows")
    augmented = Matrix._trusted([list(row) + [rhs] for row, rhs in zip(m.entries, b.entries)], m.mode)
    reduced, pivots = _rref(augmented)
    pivots = [p for p in pivots if p < m.ncols]
    for r in range(len(pivots), m.nrows):
        if not m.mode.is_zero(reduced[r, m.ncols]):
            return NoSolution(row=r)
    x = [m.mode.zero] * m.ncols
    for r, p in enumerate(pivots):
        x[p] = reduced[r, m.ncols]
    return Vector._trusted(x, m.mode)


def is_positive_definite(gram: Matrix) -> bool:
    """Symmetric with a positive spectrum (all leading minors positive in exact mode)."""
    if not gram.is_symmetric():
        return False
    if gram.mode.exact:
        return bool(gram.to_sympy().is_positive_definite)
    return bool(np.all(np.linalg.eigvalsh(gram.array()) > gram.mode.tol))


def orthonormal_coframe(gram: Matrix) -> Matrix:
    """
    Lower-triangular coframe of a positive definite Gram matrix.

    Returns ``L`` with positive diagonal and ``gram == L.T @ L``. Row ``i``
    of ``L`` holds the coefficients of ``f^i`` in the ``e^j``, so that
    ``f^1`` is a multiple of ``e^1``, ``f^2`` involves ``e^1, e^2`` and so on.
    The factorization runs from the last index up.

    In exact mode the rational LDL factors of the index-reversed Gram
    matrix give ``L = sqrt(D) U`` with rational ``U``; entries are rationals
    or rational multiples of ``sqrt(d)`` for a rational pivot ``d``.

    Raises:
        NotPositiveDefiniteError: If ``gram`` is not SPD.
    """
    if not is_positive_definite(gram):
        raise NotPositiveDefiniteError("Gram matrix is not symmetric positive definite")
    if gram.mode.exact:
        order = list(range(gram.nrows - 1, -1, -1))
        unit, pivots = gram.to_sympy().extract(order, order).LDLdecomposition()
        root = pivots.applyfunc(sympy.sqrt)
        return Matrix.from_sympy((root * unit.T).extract(order, order))
    reversed_gram = gram.array()[::-1, ::-1]
    factor = np.linalg.cholesky(reversed_gram)
    return Matrix.from_array(factor.T[::-1, ::-1], gram.mode)


def lower_triangular_inverse(L: Matrix) -> Matrix:
    """Inverse of an invertible lower-triangular matrix.

    Raises:
        DimensionError: If ``L`` is not lower triangular or is singular.
    """
    L._require_square()
    n = L.nrows
    if any(not L.mode.is_zero(L[i, j]) for i in range(n) for j in range(i + 1, n)):
        raise DimensionError("Matrix is not lower triangular")
    if L.mode.exact:
        if any(_exact_is_zero(L[i, i]) for i in range(n)):
            raise DimensionError("Matrix is singular")
        return Matrix.from_sympy(L.to_sympy().inv(method="LU", iszerofunc=_exact_is_zero))
    return L.inverse()


def random_rational(rng: Random, bound: int = 3, nonzero: bool = False) -> Rational:
    """Random rational with numerator and denominator bounded by ``bound``."""
    while True:
        value = Rational(rng.randint(-bound, bound), rng.randint(1, bound))
        if value or not nonzero:
            return value
