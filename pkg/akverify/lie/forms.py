"""
Left-invariant differential forms on a Lie algebra.

A p-form stores one coefficient per strictly increasing index tuple, in
``itertools.combinations`` order; for 2-forms in dimension 4 this is
``e^12, e^13, e^14, e^23, e^24, e^34``. The coefficient of ``e^{i1..ip}``
is the value of the form on ``(e_i1, .., e_ip)``.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from akverify.core.errors import AkverifyError, DimensionError, ModeMismatchError
from akverify.core.matrix import Matrix, Vector
from akverify.core.scalar import EXACT, Scalar, ScalarMode, format_scalar, parse_scalar
from akverify.lie.algebra import LieAlgebra


class DegreeOverflowError(AkverifyError):
    """Raised when a form would exceed the top degree."""

    pass


@lru_cache(maxsize=None)
def form_basis(dim: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing 0-based index tuples of the given degree."""
    return tuple(combinations(range(dim), degree))


@lru_cache(maxsize=None)
def _basis_position(dim: int, degree: int) -> dict[tuple[int, ...], int]:
    return {idx: pos for pos, idx in enumerate(form_basis(dim, degree))}


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an index repeats."""
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    items = list(seq)
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a] > items[b]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class InvariantForm:
    """An invariant p-form in the coframe basis ``e^I``."""

    dim: int
    degree: int
    coefficients: tuple[Scalar, ...]
    mode: ScalarMode = EXACT

    def __post_init__(self):
        if not 0 <= self.degree <= self.dim:
            raise DegreeOverflowError(f"Degree {self.degree} invalid in dimension {self.dim}")
        if len(self.coefficients) != len(form_basis(self.dim, self.degree)):
            raise DimensionError(
                f"{self.degree}-form in dimension {self.dim} needs "
                f"{len(form_basis(self.dim, self.degree))} coefficients"
            )

    @classmethod
    def zero(cls, dim: int, degree: int, mode: ScalarMode = EXACT) -> "InvariantForm":
        return cls(dim, degree, (mode.zero,) * len(form_basis(dim, degree)), mode)

    @classmethod
    def from_terms(
        cls, dim: int, terms: Mapping[tuple[int, ...], int | Scalar], mode: ScalarMode = EXACT
    ) -> "InvariantForm":
        """
        Build from 1-based index tuples, e.g. ``{(1, 4): -2, (2, 3): 1}``.

        Unsorted tuples are reordered with the permutation sign.

        Raises:
            DimensionError: If the degrees differ or an index is out of range.
        """
        if not terms:
            raise DimensionError("from_terms needs at least one term (use zero())")
        degrees = {len(k) for k in terms}
        if len(degrees) != 1:
            raise DimensionError("All terms must have the same degree")
        degree = degrees.pop()
        coeffs = [mode.zero] * len(form_basis(dim, degree))
        position = _basis_position(dim, degree)
        for idx, value in terms.items():
            if not all(1 <= i <= dim for i in idx):
                raise DimensionError(f"Form index {idx} out of range for dimension {dim}")
            sign = permutation_sign(idx)
            if sign == 0:
                continue
            key = tuple(sorted(i - 1 for i in idx))
            coeffs[position[key]] += sign * mode.coerce(value)
        return cls(dim, degree, tuple(coeffs), mode)

    @classmethod
    def from_vector(cls, dim: int, degree: int, vector: Vector) -> "InvariantForm":
        return cls(dim, degree, vector.entries, vector.mode)

    @classmethod
    def from_dict(cls, dim: int, data: Mapping[str, str], mode: ScalarMode = EXACT) -> "InvariantForm":
        """Parse ``{"12": "p/q", ...}`` (1-based digit keys)."""
        terms = {}
        for key, value in data.items():
            if not key.isdigit():
                raise DimensionError(f"Invalid form key {key!r}")
            terms[tuple(int(ch) for ch in key)] = parse_scalar(value, mode)
        return cls.from_terms(dim, terms, mode)

    @classmethod
    def coframe_element(cls, dim: int, k: int, mode: ScalarMode = EXACT) -> "InvariantForm":
        """The 1-form ``e^k`` (1-based)."""
        return cls.from_terms(dim, {(k,): 1}, mode)

    def coefficient(self, indices: Sequence[int]) -> Scalar:
        """Value on ``(e_i1, ..)`` for any 0-based index sequence."""
        sign = permutation_sign(indices)
        if sign == 0:
            return self.mode.zero
        key = tuple(sorted(indices))
        return sign * self.coefficients[_basis_position(self.dim, self.degree)[key]]

    def evaluate(self, vectors: Sequence[Vector]) -> Scalar:
        """Value of the form on the given vectors."""
        if len(vectors) != self.degree:
            raise DimensionError(f"A {self.degree}-form takes {self.degree} vectors")
        total = self.mode.zero
        for idx, coeff in zip(form_basis(self.dim, self.degree), self.coefficients):
            if not coeff:
                continue
            sub = Matrix._trusted([[v.entries[i] for v in vectors] for i in idx], self.mode) if idx else None
            total += coeff * (sub.det() if sub is not None else self.mode.one)
        return total

    def matrix(self) -> Matrix:
        """For 2-forms, the antisymmetric matrix ``Omega_ij = form(e_i, e_j)``."""
        if self.degree != 2:
            raise DimensionError("matrix() is defined for 2-forms only")
        return Matrix._trusted(
            [[self.coefficient((i, j)) for j in range(self.dim)] for i in range(self.dim)], self.mode
        )

    def to_vector(self) -> Vector:
        return Vector._trusted(self.coefficients, self.mode)

    def _check_compatible(self, other: "InvariantForm") -> None:
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise DimensionError("Forms of different dimension or degree")

    def __add__(self, other: "InvariantForm") -> "InvariantForm":
        self._check_compatible(other)
        return InvariantForm.from_vector(self.dim, self.degree, self.to_vector() + other.to_vector())

    def __sub__(self, other: "InvariantForm") -> "InvariantForm":
        self._check_compatible(other)
        return InvariantForm.from_vector(self.dim, self.degree, self.to_vector() - other.to_vector())

    def __neg__(self) -> "InvariantForm":
        return InvariantForm.from_vector(self.dim, self.degree, -self.to_vector())

    def scale(self, c: int | Scalar) -> "InvariantForm":
        return InvariantForm.from_vector(self.dim, self.degree, self.to_vector().scale(c))

    def __mul__(self, c: int | Scalar) -> "InvariantForm":
        return self.scale(c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(self.mode.is_zero(c) for c in self.coefficients)

    def to_dict(self) -> dict[str, str]:
        """Nonzero coefficients keyed by 1-based digit strings."""
        return {
            "".join(str(i + 1) for i in idx): format_scalar(c)
            for idx, c in zip(form_basis(self.dim, self.degree), self.coefficients)
            if not self.mode.is_zero(c)
        }

    def __str__(self) -> str:
        terms = [f"{v} e^{k}" for k, v in self.to_dict().items()]
        return " + ".join(terms) if terms else "0"


def exterior_d(g: LieAlgebra, form: InvariantForm) -> InvariantForm:
    """
    Exterior derivative of an invariant form.

    ``(d beta)(e_i0..e_ip) = sum_{a<b} (-1)^(a+b) beta([e_ia, e_ib], e_rest)``;
    for 1-forms this is ``d alpha(X, Y) = -alpha([X, Y])``.

    Raises:
        DegreeOverflowError: If the form already has top degree.
    """
    if form.dim != g.dim:
        raise DimensionError(f"Form dimension {form.dim} != algebra dimension {g.dim}")
    if form.degree >= g.dim:
        raise DegreeOverflowError(f"Cannot differentiate a {form.degree}-form in dimension {g.dim}")
    n = g.dim
    zero = form.mode.zero
    coeffs = []
    for idx in form_basis(n, form.degree + 1):
        value = zero
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                rest = [idx[r] for r in range(len(idx)) if r != a and r != b]
                sign = 1 if (a + b) % 2 == 0 else -1
                for m in range(n):
                    c = g.constants[m][idx[a]][idx[b]]
                    if c:
                        value += sign * c * form.coefficient([m] + rest)
        coeffs.append(value)
    return InvariantForm(n, form.degree + 1, tuple(coeffs), form.mode)


def wedge(alpha: InvariantForm, beta: InvariantForm) -> InvariantForm:
    """Exterior product ``alpha ^ beta``."""
    if alpha.dim != beta.dim:
        raise DimensionError("Forms live in different dimensions")
    if alpha.degree + beta.degree > alpha.dim:
        raise DegreeOverflowError("Wedge product exceeds the top degree")
    if alpha.mode.kind != beta.mode.kind:
        raise ModeMismatchError("Cannot wedge exact and float forms")
    n, p = alpha.dim, alpha.degree
    zero = alpha.mode.zero
    coeffs = []
    for idx in form_basis(n, p + beta.degree):
        value = zero
        for left in combinations(idx, p):
            right = tuple(i for i in idx if i not in left)
            a = alpha.coefficient(left)
            if a:
                value += permutation_sign(left + right) * a * beta.coefficient(right)
        coeffs.append(value)
    return InvariantForm(n, p + beta.degree, tuple(coeffs), alpha.mode)


def top_coefficient(form: InvariantForm) -> Scalar:
    """Coefficient of ``e^{1..n}`` of a top-degree form."""
    if form.degree != form.dim:
        raise DimensionError("Top coefficient needs a top-degree form")
    return form.coefficients[0]


def differential_matrix(g: LieAlgebra, degree: int) -> Matrix:
    """Matrix of ``d`` from ``degree``-forms to ``degree+1``-forms (columns = source basis)."""
    columns = []
    for pos in range(len(form_basis(g.dim, degree))):
        coeffs = [g.mode.zero] * len(form_basis(g.dim, degree))
        coeffs[pos] = g.mode.one
        columns.append(exterior_d(g, InvariantForm(g.dim, degree, tuple(coeffs), g.mode)).to_vector())
    return Matrix.from_columns(columns)


def structure_equations(g: LieAlgebra) -> list[InvariantForm]:
    """``[d e^1, .., d e^n]``."""
    return [exterior_d(g, InvariantForm.coframe_element(g.dim, k + 1, g.mode)) for k in range(g.dim)]


def algebra_from_structure_equations(
    differentials: Sequence[InvariantForm], name: str = ""
) -> LieAlgebra:
    """
    Brackets dual to the structure equations ``d e^k``.

    ``c^k_ij = -(coefficient of e^ij in d e^k)``.
    """
    if not differentials:
        raise DimensionError("No structure equations given")
    n = len(differentials)
    mode = differentials[0].mode
    table: dict[tuple[int, int], dict[int, Scalar]] = {}
    for k, de in enumerate(differentials):
        if de.dim != n or de.degree != 2:
            raise DimensionError("Structure equations must be 2-forms in the algebra's dimension")
        for (i, j), coeff in zip(form_basis(n, 2), de.coefficients):
            if not mode.is_zero(coeff):
                table.setdefault((i + 1, j + 1), {})[k + 1] = -coeff
    return LieAlgebra.from_brackets(n, table, mode, name)
