"""
Lie algebras given by structure constants.

``c[k][i][j]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``. Indices are
0-based in the API; bracket tables read from files or written by hand in
the catalog are 1-based, matching the usual ``e_1 .. e_n`` notation.
"""

from dataclasses import dataclass
from typing import Any, Mapping

from akverify.core.errors import AkverifyError, DimensionError
from akverify.core.matrix import Matrix, Vector
from akverify.core.scalar import EXACT, Scalar, ScalarMode, float_mode, format_scalar, parse_scalar

MIN_DIM = 1
MAX_DIM = 6


class AlgebraError(AkverifyError):
    """Raised for malformed bracket data."""

    pass


class JacobiError(AlgebraError):
    """Raised when an algebra required to be Lie fails the Jacobi identity."""

    pass


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``c^k_ij`` of a Lie algebra, antisymmetric in ``(i, j)``."""

    dim: int
    constants: tuple[tuple[tuple[Scalar, ...], ...], ...]
    mode: ScalarMode = EXACT
    name: str = ""

    def __post_init__(self):
        if not MIN_DIM <= self.dim <= MAX_DIM:
            raise DimensionError(f"Lie algebra dimension must be {MIN_DIM}..{MAX_DIM}, got {self.dim}")
        n = self.dim
        if len(self.constants) != n or any(
            len(plane) != n or any(len(row) != n for row in plane) for plane in self.constants
        ):
            raise DimensionError("Structure constants must be an n x n x n table")
        for k in range(n):
            for i in range(n):
                for j in range(i, n):
                    if self.constants[k][i][j] != -self.constants[k][j][i]:
                        raise AlgebraError(
                            f"Structure constants not antisymmetric at c^{k + 1}_{i + 1}{j + 1}"
                        )

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, int | Scalar]],
        mode: ScalarMode = EXACT,
        name: str = "",
    ) -> "LieAlgebra":
        """
        Build from a 1-based bracket table.

        Args:
            dim: Dimension.
            brackets: ``{(i, j): {k: value}}`` meaning ``[e_i, e_j] += value e_k``.
            mode: Scalar mode.
            name: Optional label.

        Raises:
            AlgebraError: On out-of-range or conflicting entries.
        """
        zero = mode.zero
        c = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
        seen: dict[tuple[int, int, int], Scalar] = {}
        for (i, j), image in brackets.items():
            for k, value in image.items():
                if not all(1 <= idx <= dim for idx in (i, j, k)):
                    raise AlgebraError(f"Bracket index out of range: [e{i},e{j}] -> e{k}")
                value = mode.coerce(value)
                if i == j:
                    if value != 0:
                        raise AlgebraError(f"[e{i},e{i}] must vanish")
                    continue
                a, b, sign = (i, j, 1) if i < j else (j, i, -1)
                key = (a, b, k)
                if key in seen and seen[key] != sign * value:
                    raise AlgebraError(f"Conflicting entries for [e{a},e{b}] -> e{k}")
                seen[key] = sign * value
        for (a, b, k), value in seen.items():
            c[k - 1][a - 1][b - 1] = value
            c[k - 1][b - 1][a - 1] = -value
        return cls(dim, tuple(tuple(tuple(row) for row in plane) for plane in c), mode, name)

    @classmethod
    def abelian(cls, dim: int, mode: ScalarMode = EXACT) -> "LieAlgebra":
        return cls.from_brackets(dim, {}, mode, name=f"abelian{dim}")

    def c(self, k: int, i: int, j: int) -> Scalar:
        return self.constants[k][i][j]

    def bracket_basis(self, i: int, j: int) -> Vector:
        """``[e_i, e_j]`` as a vector (0-based)."""
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise DimensionError(f"Basis index out of range: ({i}, {j})")
        return Vector._trusted([self.constants[k][i][j] for k in range(self.dim)], self.mode)

    def bracket(self, x: Vector, y: Vector) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionError(f"Vectors must have length {self.dim}")
        n = self.dim
        zero = self.mode.zero
        out = []
        for k in range(n):
            plane = self.constants[k]
            acc = zero
            for i in range(n):
                xi = x.entries[i]
                if not xi:
                    continue
                row = plane[i]
                for j in range(n):
                    if row[j] and y.entries[j]:
                        acc += xi * row[j] * y.entries[j]
            out.append(acc)
        return Vector._trusted(out, self.mode)

    def ad(self, i: int) -> Matrix:
        """Matrix of ``ad(e_i)``: column ``j`` is ``[e_i, e_j]``."""
        return Matrix._trusted(
            [[self.constants[k][i][j] for j in range(self.dim)] for k in range(self.dim)], self.mode
        )

    def ad_vector(self, x: Vector) -> Matrix:
        n = self.dim
        zero = self.mode.zero
        rows = [
            [sum((x.entries[i] * self.constants[k][i][j] for i in range(n)), zero) for j in range(n)]
            for k in range(n)
        ]
        return Matrix._trusted(rows, self.mode)

    def is_abelian(self) -> bool:
        return all(self.mode.is_zero(v) for plane in self.constants for row in plane for v in row)

    def nonzero_brackets(self) -> list[tuple[int, int, int, Scalar]]:
        """``(i, j, k, value)`` with 1-based ``i < j``, sorted."""
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    value = self.constants[k][i][j]
                    if not self.mode.is_zero(value):
                        out.append((i + 1, j + 1, k + 1, value))
        return out

    def with_constant(self, i: int, j: int, k: int, value: int | Scalar) -> "LieAlgebra":
        """Copy with ``[e_i, e_j]`` having ``value`` as ``e_k`` coefficient (1-based)."""
        table: dict[tuple[int, int], dict[int, Scalar]] = {}
        for a, b, c, v in self.nonzero_brackets():
            table.setdefault((a, b), {})[c] = v
        a, b, sign = (i, j, 1) if i < j else (j, i, -1)
        table.setdefault((a, b), {})[k] = sign * self.mode.coerce(value)
        return LieAlgebra.from_brackets(self.dim, table, self.mode, self.name)

    def to_float(self, tol: float) -> "LieAlgebra":
        return LieAlgebra(
            self.dim,
            tuple(tuple(tuple(float(v) for v in row) for row in plane) for plane in self.constants),
            float_mode(tol),
            self.name,
        )

    def to_json_dict(self) -> dict[str, Any]:
        """Bracket table in the 1-based file schema."""
        return {
            "dim": self.dim,
            "brackets": [
                {"i": i, "j": j, "k": k, "value": format_scalar(v)}
                for i, j, k, v in self.nonzero_brackets()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any], mode: ScalarMode = EXACT, name: str = "") -> "LieAlgebra":
        """Inverse of :meth:`to_json_dict` (validated upstream by the schema models)."""
        table: dict[tuple[int, int], dict[int, Scalar]] = {}
        for entry in data["brackets"]:
            key = (int(entry["i"]), int(entry["j"]))
            image = table.setdefault(key, {})
            k = int(entry["k"])
            if k in image:
                raise AlgebraError(f"Duplicate bracket entry [e{key[0]},e{key[1]}] -> e{k}")
            image[k] = parse_scalar(entry["value"], mode)
        return cls.from_brackets(int(data["dim"]), table, mode, name)


@dataclass(frozen=True)
class JacobiResult:
    """Outcome of :func:`jacobi_check`; ``triple`` is 1-based."""

    passed: bool
    triple: tuple[int, int, int] | None = None
    residual: Vector | None = None


def jacobi_check(g: LieAlgebra) -> JacobiResult:
    """Check ``[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0`` for all ``i<j<k``."""
    n = g.dim
    basis = [Vector.basis(n, i, g.mode) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = (
                    g.bracket(g.bracket_basis(i, j), basis[k])
                    + g.bracket(g.bracket_basis(j, k), basis[i])
                    + g.bracket(g.bracket_basis(k, i), basis[j])
                )
                if not total.is_zero():
                    return JacobiResult(False, (i + 1, j + 1, k + 1), total)
    return JacobiResult(True)


def require_jacobi(g: LieAlgebra) -> None:
    """
    Raise unless ``g`` satisfies the Jacobi identity.

    Raises:
        JacobiError: With the first violating triple.
    """
    result = jacobi_check(g)
    if not result.passed:
        i, j, k = result.triple
        raise JacobiError(f"Jacobi identity fails for (e{i}, e{j}, e{k})")


def is_unimodular(g: LieAlgebra) -> bool:
    """True iff ``trace(ad e_i) = 0`` for every basis vector."""
    return all(g.mode.is_zero(g.ad(i).trace()) for i in range(g.dim))
