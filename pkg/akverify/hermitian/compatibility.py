"""
Exact compatibility decision for a linear family of 2-forms.

For ``omega(x) = sum_p x_p beta_p`` the induced endomorphism
``A(x) = sum_p x_p A_p`` is linear in ``x``, so ``A(x)^2 = -Id`` is a
quadratic system. Lifting every monomial ``x_p x_q`` (p <= q) to a new
unknown ``y_pq`` turns it into a linear system in ``y``:

- an inconsistent lift proves that no member of the family is compatible;
- a linear functional of ``y`` that is constant on the lifted solution set
  is an implied constraint (``y_11 = 0``, ``y_22 + y_33 = 1``, ...);
- a unique lifted solution is turned back into the real points ``+-x``.
"""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from akverify.core.errors import DimensionError
from akverify.core.matrix import Matrix, NoSolution, Vector, nullspace, solve_linear
from akverify.core.scalar import Scalar, ScalarMode
from akverify.geometry.metric import MetricFrame
from akverify.hermitian.structure import induced_endomorphism
from akverify.lie.forms import InvariantForm

MAX_MONOMIALS = 20


@dataclass(frozen=True)
class LiftedSystem:
    """``matrix @ y = rhs`` with ``y`` indexed by ``monomials`` (0-based pairs p <= q)."""

    monomials: tuple[tuple[int, int], ...]
    matrix: Matrix
    rhs: Vector

    @property
    def size(self) -> int:
        return len(self.monomials)


@dataclass(frozen=True)
class CompatibilitySolution:
    """Solution set of a lifted system: ``particular + span(directions)``, or inconsistent."""

    system: LiftedSystem
    particular: Vector | None
    directions: tuple[Vector, ...] = ()
    points: tuple[Vector, ...] = field(default=())

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.consistent and not self.directions

    @property
    def mode(self) -> ScalarMode:
        return self.system.matrix.mode

    def _functional(self, coefficients: Mapping[tuple[int, int], int | Scalar]) -> Vector:
        index = {mono: pos for pos, mono in enumerate(self.system.monomials)}
        entries = [self.mode.zero] * self.system.size
        for (p, q), value in coefficients.items():
            key = (min(p, q), max(p, q))
            if key not in index:
                raise DimensionError(f"Unknown monomial y_{p}{q}")
            entries[index[key]] += self.mode.coerce(value)
        return Vector._trusted(entries, self.mode)

    def implied_value(self, coefficients: Mapping[tuple[int, int], int | Scalar]) -> Scalar | None:
        """
        Value of ``sum c_pq y_pq`` when it is constant on the solution set, else ``None``.

        Keys are 0-based ``(p, q)`` pairs; ``None`` as well when inconsistent.
        """
        if not self.consistent:
            return None
        ell = self._functional(coefficients)
        if any(not self.mode.is_zero(ell.dot(d)) for d in self.directions):
            return None
        return ell.dot(self.particular)

    def implied_functionals(self) -> list[tuple[Vector, Scalar]]:
        """Basis of the functionals constant on the solution set, with their values."""
        if not self.consistent:
            return []
        if not self.directions:
            basis = [Vector.basis(self.system.size, i, self.mode) for i in range(self.system.size)]
        else:
            basis = nullspace(Matrix([d.entries for d in self.directions], self.mode))
        return [(ell, ell.dot(self.particular)) for ell in basis]

    def forms(self, family: Sequence[InvariantForm]) -> list[InvariantForm]:
        """The compatible members of the family at the recovered points."""
        result = []
        for x in self.points:
            omega = InvariantForm.zero(family[0].dim, 2, self.mode)
            for coeff, beta in zip(x, family):
                if coeff:
                    omega = omega + beta.scale(coeff)
            result.append(omega)
        return result


def compatibility_system(m: MetricFrame, family: Sequence[InvariantForm]) -> LiftedSystem:
    """
    Lift ``A(x)^2 = -Id`` to a linear system in the monomials ``y_pq``.

    One row per entry of the ``n x n`` matrix equation.

    Raises:
        DimensionError: If the family is empty or needs more than ``MAX_MONOMIALS`` monomials.
    """
    if not family:
        raise DimensionError("Empty family of 2-forms")
    d = len(family)
    monomials = tuple(combinations_with_replacement(range(d), 2))
    if len(monomials) > MAX_MONOMIALS:
        raise DimensionError(f"Family of {d} forms needs {len(monomials)} monomials (max {MAX_MONOMIALS})")
    n = m.dim
    mode = m.mode
    A = [induced_endomorphism(m, beta) for beta in family]
    products = []
    for p, q in monomials:
        if p == q:
            products.append(A[p] @ A[p])
        else:
            products.append(A[p] @ A[q] + A[q] @ A[p])
    rows = [[P[r, s] for P in products] for r in range(n) for s in range(n)]
    rhs = [-mode.one if r == s else mode.zero for r in range(n) for s in range(n)]
    return LiftedSystem(monomials, Matrix._trusted(rows, mode), Vector._trusted(rhs, mode))


def _recover_points(system: LiftedSystem, y: Vector, d: int) -> tuple[Vector, ...]:
    """Real points ``+-x`` with ``x_p x_q = y_pq``, if any."""
    mode = system.matrix.mode
    value = dict(zip(system.monomials, y.entries))
    x = [mode.zero] * d
    anchor = None
    for p in range(d):
        if not mode.is_zero(value[(p, p)]):
            anchor = p
            break
    if anchor is None:
        return ()
    if value[(anchor, anchor)] < 0:
        return ()
    x[anchor] = mode.sqrt(value[(anchor, anchor)])
    for q in range(d):
        if q != anchor:
            key = (min(anchor, q), max(anchor, q))
            x[q] = mode.reduce(value[key] / x[anchor])
    if not all(mode.equal(value[(p, q)], x[p] * x[q]) for p, q in system.monomials):
        return ()
    point = Vector._trusted(x, mode)
    return (point, -point)


def solve_compatibility(m: MetricFrame, family: Sequence[InvariantForm]) -> CompatibilitySolution:
    """Solve the lifted compatibility system for ``omega(x) = sum x_p family[p]``."""
    system = compatibility_system(m, family)
    particular = solve_linear(system.matrix, system.rhs)
    if isinstance(particular, NoSolution):
        return CompatibilitySolution(system, None)
    directions = tuple(nullspace(system.matrix))
    points = _recover_points(system, particular, len(family)) if not directions else ()
    return CompatibilitySolution(system, particular, directions, points)
