"""
Independent floating-point curvature oracle built on ``numpy.einsum``.

Shares no code with :mod:`akverify.geometry.curvature`; tests and the
mode-agreement suite compare the two pipelines.

    structure constants -> Christoffel (Koszul) -> Riemann -> Ricci -> scalar -> Weyl
"""

from dataclasses import dataclass

import numpy as np

from akverify.geometry.metric import MetricFrame
from akverify.lie.algebra import LieAlgebra


def structure_array(g: LieAlgebra) -> np.ndarray:
    """``c[k, i, j]`` as a float array."""
    return np.array(g.constants, dtype=float)


def gram_array(m: MetricFrame) -> np.ndarray:
    return np.array(m.gram.entries, dtype=float)


def christoffel(c: np.ndarray, G: np.ndarray) -> np.ndarray:
    """``Gamma[k, i, j]`` with ``nabla_{e_i} e_j = Gamma[k, i, j] e_k``."""
    cl = np.einsum("kij,kl->ijl", c, G)
    low = 0.5 * (cl - np.einsum("jli->ijl", cl) + np.einsum("lij->ijl", cl))
    return np.einsum("kl,ijl->kij", np.linalg.inv(G), low)


def riemann_tensor(c: np.ndarray, G: np.ndarray, gamma: np.ndarray | None = None) -> np.ndarray:
    """``Rm[i, j, k, l] = g(R_{e_i,e_j} e_k, e_l)`` with ``R_{X,Y} = -[nabla_X, nabla_Y] + nabla_[X,Y]``."""
    if gamma is None:
        gamma = christoffel(c, G)
    nabla = np.einsum("kij->ikj", gamma)
    ends = (
        -np.einsum("iac,jcb->ijab", nabla, nabla)
        + np.einsum("jac,icb->ijab", nabla, nabla)
        + np.einsum("kij,kab->ijab", c, nabla)
    )
    return np.einsum("ijak,al->ijkl", ends, G)


def kulkarni_nomizu(h: np.ndarray, k: np.ndarray) -> np.ndarray:
    return (
        np.einsum("xz,yt->xyzt", h, k)
        + np.einsum("yt,xz->xyzt", h, k)
        - np.einsum("xt,yz->xyzt", h, k)
        - np.einsum("yz,xt->xyzt", h, k)
    )


@dataclass(frozen=True)
class OracleCurvature:
    gamma: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: float
    weyl: np.ndarray


def oracle_curvature(g: LieAlgebra, m: MetricFrame) -> OracleCurvature:
    """Float curvature of ``(g, m)`` computed from scratch."""
    c = structure_array(g)
    G = gram_array(m)
    Ginv = np.linalg.inv(G)
    n = G.shape[0]
    gamma = christoffel(c, G)
    rm = riemann_tensor(c, G, gamma)
    ric = np.einsum("ab,ajbl->jl", Ginv, rm)
    s = float(np.einsum("jl,jl->", Ginv, ric))
    weyl = rm - kulkarni_nomizu(ric, G) / (n - 2) + s * kulkarni_nomizu(G, G) / (2 * (n - 1) * (n - 2))
    return OracleCurvature(gamma, rm, ric, s, weyl)


def sectional(rm: np.ndarray, G: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    num = np.einsum("ijkl,i,j,k,l->", rm, x, y, x, y)
    denom = (x @ G @ x) * (y @ G @ y) - (x @ G @ y) ** 2
    return float(num / denom)
