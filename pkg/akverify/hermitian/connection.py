"""
Canonical Hermitian connection and Hermitian holomorphic sectional curvature.

``nabla_X = D_X - 1/2 J (D_X J)`` with ``D`` the Levi-Civita connection and
``D_X J = [D_X, J]``. ``H(X) = g(R_{X,JX} X, JX) / g(X,X)^2`` uses the
curvature of ``nabla`` with the same sign convention as the Riemann tensor.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from random import Random

from sympy import Rational

from akverify.core.errors import AkverifyError
from akverify.core.matrix import Vector
from akverify.core.scalar import Scalar
from akverify.geometry.curvature import Connection, RiemannTensor, levi_civita, riemann
from akverify.geometry.metric import MetricFrame
from akverify.hermitian.structure import AlmostHermitianStructure
from akverify.lie.algebra import LieAlgebra


class ZeroVectorError(AkverifyError):
    """Raised when H is evaluated at the zero vector."""

    pass


class UndecidedConstantHError(AkverifyError):
    """Raised when H is not constant but the sampled vectors give no differing pair."""

    pass


def canonical_connection(g: LieAlgebra, m: MetricFrame, s: AlmostHermitianStructure) -> Connection:
    lc = levi_civita(g, m)
    J = s.J
    half = m.mode.coerce(1) / 2
    matrices = tuple(D - (J @ D.commutator(J)).scale(half) for D in lc.matrices)
    return Connection(g, m, matrices)


def connection_curvature(g: LieAlgebra, conn: Connection) -> RiemannTensor:
    """Curvature of an arbitrary left-invariant connection."""
    return riemann(g, conn)


def holomorphic_quartic(r: RiemannTensor, s: AlmostHermitianStructure, x: Vector) -> Scalar:
    """``Q(X) = g(R_{X,JX} X, JX)``."""
    jx = s.J @ x
    return s.metric.inner(r.operator(x, jx) @ x, jx)


def hermitian_H(
    g: LieAlgebra,
    m: MetricFrame,
    s: AlmostHermitianStructure,
    x: Vector,
    curvature: RiemannTensor | None = None,
) -> Scalar:
    """
    Hermitian holomorphic sectional curvature at ``x``.

    Raises:
        ZeroVectorError: If ``x`` is zero.
    """
    if x.is_zero():
        raise ZeroVectorError("H is undefined at the zero vector")
    r = curvature if curvature is not None else connection_curvature(g, canonical_connection(g, m, s))
    norm = m.norm_squared(x)
    return holomorphic_quartic(r, s, x) / (norm * norm)


@dataclass(frozen=True)
class Constant:
    kappa: Scalar

    @property
    def constant(self) -> bool:
        return True


@dataclass(frozen=True)
class NonConstant:
    """Two unit vectors with different H values."""

    first: Vector
    second: Vector
    first_value: Scalar
    second_value: Scalar

    @property
    def constant(self) -> bool:
        return False


def _symmetrized(coefficient, dim: int) -> dict[tuple[int, ...], Scalar]:
    """Sum of a 4-index coefficient over all orderings of every index multiset."""
    return {
        idx: sum(coefficient(*p) for p in permutations(idx))
        for idx in combinations_with_replacement(range(dim), 4)
    }


def _unit_sphere_point(rng: Random, dim: int, bound: int = 5) -> list[Rational]:
    """Inverse stereographic image of a random rational point: a rational unit vector."""
    t = [Rational(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(dim - 1)]
    r2 = sum(x * x for x in t)
    return [2 * x / (r2 + 1) for x in t] + [(r2 - 1) / (r2 + 1)]


def random_unit_vector(m: MetricFrame, rng: Random) -> Vector:
    """Rational ``g``-unit vector: frame combination with rational unit coefficients."""
    coords = Vector([m.mode.coerce(c) for c in _unit_sphere_point(rng, m.dim)], m.mode)
    return m.frame @ coords


def constant_H_test(
    g: LieAlgebra,
    m: MetricFrame,
    s: AlmostHermitianStructure,
    seed: int = 0,
    attempts: int = 50,
) -> Constant | NonConstant:
    """
    Decide whether H is constant by polarization.

    The quartics ``Q(X) = g(R_{X,JX} X, JX)`` and ``P(X) = g(X,X)^2`` are
    fully symmetrized; H is constant iff ``Sym Q = kappa Sym P`` with
    ``kappa = Q(f_1)``. The witness is the first pair of frame vectors with
    different H, else a pair of random rational unit vectors.

    Raises:
        UndecidedConstantHError: If no pair with different H turns up.
    """
    n = m.dim
    r = connection_curvature(g, canonical_connection(g, m, s))
    J, G = s.J, m.gram
    # T[a][b] is the matrix (c, d) -> g(R_{e_a, J e_b} e_c, J e_d)
    basis = [Vector.basis(n, i, m.mode) for i in range(n)]
    T = [[(r.operator(basis[a], J.col(b)).T @ G @ J).entries for b in range(n)] for a in range(n)]
    sym_q = _symmetrized(lambda a, b, c, d: T[a][b][c][d], n)
    sym_p = _symmetrized(lambda a, b, c, d: G[a, b] * G[c, d], n)
    kappa = holomorphic_quartic(r, s, m.frame_vector(0))
    if all(m.mode.equal(sym_q[idx], kappa * sym_p[idx]) for idx in sym_q):
        return Constant(kappa)
    frame = m.frame_vectors()
    values = [hermitian_H(g, m, s, f, r) for f in frame]
    for a in range(n):
        for b in range(a + 1, n):
            if not m.mode.equal(values[a], values[b]):
                return NonConstant(frame[a], frame[b], values[a], values[b])
    rng = Random(seed)
    first = frame[0]
    for _ in range(attempts):
        x = random_unit_vector(m, rng)
        hx = hermitian_H(g, m, s, x, r)
        if not m.mode.equal(hx, values[0]):
            return NonConstant(first, x, values[0], hx)
    raise UndecidedConstantHError(f"H is not constant but no witness pair was found in {attempts} attempts")
