"""
Levi-Civita connection, Riemann, Ricci and Weyl tensors of left-invariant metrics.

Conventions:

- ``R_{X,Y} = -[nabla_X, nabla_Y] + nabla_[X,Y]``
- ``Rm(i,j,k,l) = g(R_{e_i,e_j} e_k, e_l)``, so ``Rm(X,Y,X,Y)`` is the sectional curvature
- ``Ric(Y,Z) = sum g^{ab} Rm(e_a, Y, e_b, Z)``
- ``s = tr_g Ric``

Tensors are numpy arrays: ``object`` arrays of sympy numbers in exact mode,
``float64`` arrays in float mode. Contractions go through ``np.tensordot``
in both modes; exact rational inputs are contracted over ``QQ``.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from akverify.core.errors import DimensionError
from akverify.core.matrix import Matrix, Vector, _check_modes, canonical, over_qq
from akverify.core.scalar import Scalar, ScalarMode
from akverify.geometry.metric import MetricFrame
from akverify.lie.algebra import LieAlgebra

Tensor4 = np.ndarray

_canonical_all = np.vectorize(canonical, otypes=[object])
_exact_zero_mask = np.vectorize(lambda v: canonical(v) == 0, otypes=[bool])


def tensor_array(values, mode: ScalarMode) -> np.ndarray:
    """Nested scalars (or a ``Matrix``/``Vector``) as an array of the mode's dtype."""
    if isinstance(values, Matrix):
        return values.array()
    if isinstance(values, Vector):
        values = values.entries
    return np.array(values, dtype=object if mode.exact else float)


def tidy(arr: np.ndarray, mode: ScalarMode) -> np.ndarray:
    """Canonical entries: reduced sympy numbers in exact mode, ``float64`` otherwise."""
    if mode.exact:
        return _canonical_all(arr) if arr.size else arr
    return np.asarray(arr, dtype=float)


def _scalar(value: np.ndarray, mode: ScalarMode) -> Scalar:
    item = np.asarray(value)[()]
    return canonical(item) if mode.exact else float(item)


def zero_mask(arr: np.ndarray, mode: ScalarMode) -> np.ndarray:
    """Boolean array marking the entries that vanish in ``mode``."""
    if mode.exact:
        return _exact_zero_mask(arr) if arr.size else np.ones(arr.shape, dtype=bool)
    return np.abs(arr) <= mode.tol


def tensor_is_zero(T: Tensor4, mode: ScalarMode) -> bool:
    return bool(np.all(zero_mask(np.asarray(T), mode)))


def _check_pair(g: LieAlgebra, m: MetricFrame) -> None:
    if g.dim != m.dim:
        raise DimensionError(f"Algebra dimension {g.dim} != metric dimension {m.dim}")
    _check_modes(g.mode, m.mode)


def structure_constants(g: LieAlgebra) -> np.ndarray:
    """``c[k, i, j]`` in the algebra's mode."""
    return tensor_array(g.constants, g.mode)


@dataclass(frozen=True)
class Connection:
    """
    Left-invariant connection stored as endomorphisms ``nabla_{e_i}``.

    Column ``j`` of ``matrices[i]`` is ``nabla_{e_i} e_j``, so
    ``Gamma^k_ij = matrices[i][k, j]``.
    """

    algebra: LieAlgebra
    metric: MetricFrame
    matrices: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def mode(self) -> ScalarMode:
        return self.algebra.mode

    @cached_property
    def array(self) -> np.ndarray:
        """``N[i, k, j] = Gamma^k_ij``."""
        return np.stack([A.array() for A in self.matrices])

    def gamma(self, k: int, i: int, j: int) -> Scalar:
        return self.matrices[i][k, j]

    def covariant(self, x: Vector) -> Matrix:
        """``nabla_X`` for an arbitrary vector ``X``."""
        return Matrix.from_array(np.tensordot(tensor_array(x, self.mode), self.array, axes=1), self.mode)

    def apply(self, x: Vector, y: Vector) -> Vector:
        return self.covariant(x) @ y

    def torsion(self, i: int, j: int) -> Vector:
        """``T(e_i, e_j) = nabla_i e_j - nabla_j e_i - [e_i, e_j]``."""
        return self.matrices[i].col(j) - self.matrices[j].col(i) - self.algebra.bracket_basis(i, j)

    def is_torsion_free(self) -> bool:
        N = self.array
        c = structure_constants(self.algebra)
        # T[k, i, j] = N[i, k, j] - N[j, k, i] - c[k, i, j]
        T = N.transpose(1, 0, 2) - N.transpose(1, 2, 0) - c
        return tensor_is_zero(T, self.mode)

    def is_metric(self) -> bool:
        """``g(nabla_i X, Y) + g(X, nabla_i Y) = 0`` for every ``i``."""
        G = self.metric.gram
        return all((A.T @ G + G @ A).is_zero() for A in self.matrices)

    def preserves(self, endomorphism: Matrix) -> bool:
        """``nabla_i J = [nabla_i, J] = 0`` for every ``i``."""
        return all(A.commutator(endomorphism).is_zero() for A in self.matrices)

    def equals(self, other: "Connection") -> bool:
        return all(a.equals(b) for a, b in zip(self.matrices, other.matrices))


def levi_civita(g: LieAlgebra, m: MetricFrame) -> Connection:
    """
    Levi-Civita connection from the Koszul formula for left-invariant fields.

    ``2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)``.
    """
    _check_pair(g, m)
    mode = g.mode
    c, G, Ginv, half = over_qq(
        mode, structure_constants(g), m.gram.array(), m.gram_inverse.array(), mode.coerce(1) / 2
    )
    # lowered[i, j, l] = g([e_i, e_j], e_l)
    lowered = np.tensordot(c, G, axes=([0], [0]))
    # low[i, j, l] = g(nabla_i e_j, e_l)
    low = (lowered - lowered.transpose(2, 0, 1) + lowered.transpose(1, 2, 0)) * half
    # raised[i, j, k] = Gamma^k_ij
    raised = np.tensordot(low, Ginv, axes=([2], [1]))
    matrices = tuple(Matrix.from_array(raised[i].T, mode) for i in range(g.dim))
    return Connection(g, m, matrices)


@dataclass(frozen=True, eq=False)
class RiemannTensor:
    """
    Curvature of a connection.

    ``endomorphisms[i, j]`` is the matrix of ``R_{e_i, e_j}`` and
    ``components[i, j, k, l]`` is ``g(R_{e_i,e_j} e_k, e_l)``.
    """

    connection: Connection
    endomorphisms: np.ndarray
    components: Tensor4

    @property
    def dim(self) -> int:
        return self.connection.dim

    @property
    def mode(self) -> ScalarMode:
        return self.connection.mode

    def __call__(self, i: int, j: int, k: int, l: int) -> Scalar:
        return self.components[i, j, k, l]

    def operator(self, x: Vector, y: Vector) -> Matrix:
        """``R_{X,Y}`` for arbitrary vectors."""
        xy = np.multiply.outer(tensor_array(x, self.mode), tensor_array(y, self.mode))
        return Matrix.from_array(np.tensordot(xy, self.endomorphisms, axes=([0, 1], [0, 1])), self.mode)

    def evaluate(self, x: Vector, y: Vector, z: Vector, t: Vector) -> Scalar:
        return evaluate_tensor4(self.components, x, y, z, t, self.mode)

    def symmetry_failures(self) -> list[str]:
        """Violated Levi-Civita symmetries (empty when all hold)."""
        R = self.components
        identities = {
            "antisymmetry in first pair": R + R.transpose(1, 0, 2, 3),
            "antisymmetry in second pair": R + R.transpose(0, 1, 3, 2),
            "pair symmetry": R - R.transpose(2, 3, 0, 1),
            "first Bianchi": _bianchi_sum(R),
        }
        failures = []
        for name, residual in identities.items():
            for idx in np.argwhere(~zero_mask(residual, self.mode))[:3]:
                failures.append(f"{name} at {tuple(int(a) for a in idx)}")
        return failures

    def first_bianchi_holds(self) -> bool:
        return tensor_is_zero(_bianchi_sum(self.components), self.mode)

    def is_zero(self) -> bool:
        return tensor_is_zero(self.components, self.mode)


def _bianchi_sum(R: Tensor4) -> np.ndarray:
    """``R[i,j,k,l] + R[j,k,i,l] + R[k,i,j,l]``."""
    return R + R.transpose(2, 0, 1, 3) + R.transpose(1, 2, 0, 3)


def evaluate_tensor4(T: Tensor4, x: Vector, y: Vector, z: Vector, t: Vector, mode: ScalarMode) -> Scalar:
    """Multilinear evaluation of a 4-tensor on vectors."""
    value = np.asarray(T)
    for v in (x, y, z, t):
        value = np.tensordot(tensor_array(v, mode), value, axes=([0], [0]))
    return _scalar(value, mode)


def change_frame(T: Tensor4, frame: Matrix) -> Tensor4:
    """Components ``T(f_a, f_b, f_c, f_d)`` for frame vectors given as columns of ``frame``."""
    value, M = over_qq(frame.mode, np.asarray(T), frame.array())
    for _ in range(4):
        value = np.tensordot(value, M, axes=([0], [0]))
    return tidy(value, frame.mode)


def _endomorphisms(N: np.ndarray, c: np.ndarray) -> np.ndarray:
    """``E[i, j] = R_{e_i,e_j} = -[nabla_i, nabla_j] + sum_k c^k_ij nabla_k`` for ``N[i, k, j] = Gamma^k_ij``."""
    # products[i, j, a, b] = (nabla_i nabla_j)[a, b]
    products = np.tensordot(N, N, axes=([2], [1])).transpose(0, 2, 1, 3)
    brackets = np.tensordot(c, N, axes=([0], [0]))
    return brackets - products + products.transpose(1, 0, 2, 3)


def riemann(g: LieAlgebra, conn: Connection) -> RiemannTensor:
    """Curvature tensor of any left-invariant connection (symmetries hold for Levi-Civita)."""
    N, c, G = over_qq(g.mode, conn.array, structure_constants(g), conn.metric.gram.array())
    ends = _endomorphisms(N, c)
    components = np.tensordot(ends, G, axes=([2], [0]))
    return RiemannTensor(conn, tidy(ends, g.mode), tidy(components, g.mode))


def ricci_scalar(g: LieAlgebra, m: MetricFrame, r: RiemannTensor) -> tuple[Matrix, Scalar]:
    """Ricci tensor ``Ric_jl = sum g^{ab} Rm(a, j, b, l)`` and scalar curvature ``s``."""
    Ginv, R = over_qq(g.mode, m.gram_inverse.array(), r.components)
    ric = np.tensordot(Ginv, R, axes=([0, 1], [0, 2]))
    s = np.tensordot(Ginv, ric, axes=2)
    return Matrix.from_array(ric, g.mode), _scalar(s, g.mode)


def traceless_ricci(m: MetricFrame, ricci: Matrix, s: Scalar) -> Matrix:
    """``r0 = Ric - (s/n) g``."""
    return ricci - m.gram.scale(s / m.dim)


def kulkarni_nomizu(h: np.ndarray, k: np.ndarray) -> Tensor4:
    """``(h o k)(X,Y,Z,T) = h(X,Z)k(Y,T) + h(Y,T)k(X,Z) - h(X,T)k(Y,Z) - h(Y,Z)k(X,T)``."""
    # hk[a, b, c, d] = h[a, b] k[c, d]
    hk = np.multiply.outer(h, k)
    kh = np.multiply.outer(k, h)
    return (
        hk.transpose(0, 2, 1, 3)
        + kh.transpose(0, 2, 1, 3)
        - hk.transpose(0, 2, 3, 1)
        - kh.transpose(0, 2, 3, 1)
    )


def weyl_tensor(m: MetricFrame, r: RiemannTensor, ricci: Matrix, s: Scalar) -> Tensor4:
    """
    ``W = Rm - Ric o g / (n-2) + s g o g / (2 (n-1)(n-2))``.

    Raises:
        DimensionError: Below dimension 3.
    """
    n = m.dim
    if n < 3:
        raise DimensionError("Weyl tensor needs dimension at least 3")
    mode = m.mode
    R, ric, G, a, b = over_qq(
        mode, r.components, ricci.array(), m.gram.array(), mode.coerce(1) / (n - 2), s / (2 * (n - 1) * (n - 2))
    )
    W = R - kulkarni_nomizu(ric, G) * a + kulkarni_nomizu(G, G) * b
    return tidy(W, mode)


def weyl_is_traceless(m: MetricFrame, W: Tensor4) -> bool:
    """Every metric contraction ``sum g^{ac} W(a, y, c, t)`` vanishes."""
    Ginv, W = over_qq(m.mode, m.gram_inverse.array(), np.asarray(W))
    trace = np.tensordot(Ginv, W, axes=([0, 1], [0, 2]))
    return tensor_is_zero(trace, m.mode)


@dataclass(frozen=True)
class CurvatureData:
    """Levi-Civita curvature bundle of one (algebra, metric) pair."""

    algebra: LieAlgebra
    metric: MetricFrame
    connection: Connection
    riemann: RiemannTensor
    ricci: Matrix
    scalar: Scalar

    @cached_property
    def weyl(self) -> Tensor4:
        return weyl_tensor(self.metric, self.riemann, self.ricci, self.scalar)

    @cached_property
    def traceless_ricci(self) -> Matrix:
        return traceless_ricci(self.metric, self.ricci, self.scalar)

    def weyl_is_zero(self) -> bool:
        return tensor_is_zero(self.weyl, self.metric.mode)


def curvature(g: LieAlgebra, m: MetricFrame) -> CurvatureData:
    """Levi-Civita connection, Riemann, Ricci and scalar curvature in one pass."""
    _check_pair(g, m)
    conn = levi_civita(g, m)
    r = riemann(g, conn)
    ricci, s = ricci_scalar(g, m, r)
    return CurvatureData(g, m, conn, r, ricci, s)


def weyl_component(
    g: LieAlgebra,
    m: MetricFrame,
    vectors: Sequence[Vector],
    data: CurvatureData | None = None,
) -> Scalar:
    """``W(X, Y, Z, T)`` of the (0,4) Weyl tensor on four vectors."""
    if len(vectors) != 4:
        raise DimensionError("weyl_component takes four vectors")
    data = data if data is not None else curvature(g, m)
    x, y, z, t = vectors
    return evaluate_tensor4(data.weyl, x, y, z, t, m.mode)


def sectional_curvature(data: CurvatureData, x: Vector, y: Vector) -> Scalar:
    """``Rm(X,Y,X,Y) / (|X|^2 |Y|^2 - g(X,Y)^2)``."""
    m = data.metric
    denom = m.norm_squared(x) * m.norm_squared(y) - m.inner(x, y) ** 2
    if m.mode.is_zero(denom):
        raise DimensionError("Sectional curvature needs independent vectors")
    return data.riemann.evaluate(x, y, x, y) / denom
