"""
Curvature report: every curvature quantity of one (algebra, metric) pair as JSON.

Layouts:
- ``connection[i]`` is the matrix of ``nabla_{e_i}`` (row k, column j holds ``Gamma^k_ij``)
- ``riemann[i][j][k][l] = Rm(e_i, e_j, e_k, e_l)``
- blocks are 3x3 row-major in the ``sigma`` bases; the operator is 6x6 on ``f^ab``
"""

from typing import Any

from pydantic import BaseModel, ConfigDict

from akverify.core.matrix import Matrix, Vector
from akverify.core.scalar import Scalar, format_scalar
from akverify.geometry.curvature import Tensor4, curvature, tensor_is_zero
from akverify.geometry.hodge import CurvatureBlocks, curvature_blocks
from akverify.geometry.metric import MetricFrame
from akverify.lie.algebra import LieAlgebra, is_unimodular, jacobi_check


def format_matrix(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in m.entries]


def format_vector(v: Vector) -> list[str]:
    return [format_scalar(x) for x in v.entries]


def format_tensor4(T: Tensor4) -> list[list[list[list[str]]]]:
    return [[[[format_scalar(x) for x in c] for c in b] for b in a] for a in T]


class BlocksModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    operator: list[list[str]]
    wplus: list[list[str]]
    wminus: list[list[str]]
    offdiag: list[list[str]]
    wplus_norm_squared: str
    wminus_norm_squared: str


class CurvatureReportModel(BaseModel):
    """Serialized curvature report (exact scalars as strings)."""

    model_config = ConfigDict(extra="forbid")

    algebra: dict[str, Any]
    algebra_name: str
    jacobi: bool
    unimodular: bool
    gram: list[list[str]]
    orientation: int
    coframe: list[list[str]] | None
    connection: list[list[list[str]]]
    riemann: list[list[list[list[str]]]]
    ricci: list[list[str]]
    traceless_ricci: list[list[str]]
    scalar: str
    blocks: BlocksModel | None
    weyl_zero: bool
    wplus_zero: bool | None
    wminus_zero: bool | None
    einstein: bool
    flat: bool


def curvature_report(g: LieAlgebra, m: MetricFrame) -> CurvatureReportModel:
    """
    Full curvature report.

    Blocks and the coframe are reported in dimension 4 only. Exact coframe
    entries may be radicals such as ``"sqrt(2)"``.
    """
    data = curvature(g, m)
    blocks: CurvatureBlocks | None = None
    coframe: Matrix | None = None
    if m.dim == 4:
        coframe = m.coframe
        blocks = curvature_blocks(g, m, data)
    blocks_model = None
    if blocks is not None:
        blocks_model = BlocksModel(
            operator=format_matrix(blocks.operator),
            wplus=format_matrix(blocks.wplus),
            wminus=format_matrix(blocks.wminus),
            offdiag=format_matrix(blocks.offdiag),
            wplus_norm_squared=format_scalar(blocks.wplus.frobenius_squared()),
            wminus_norm_squared=format_scalar(blocks.wminus.frobenius_squared()),
        )
    return CurvatureReportModel(
        algebra=g.to_json_dict(),
        algebra_name=g.name,
        jacobi=jacobi_check(g).passed,
        unimodular=is_unimodular(g),
        gram=format_matrix(m.gram),
        orientation=m.orientation,
        coframe=format_matrix(coframe) if coframe is not None else None,
        connection=[format_matrix(A) for A in data.connection.matrices],
        riemann=format_tensor4(data.riemann.components),
        ricci=format_matrix(data.ricci),
        traceless_ricci=format_matrix(data.traceless_ricci),
        scalar=format_scalar(data.scalar),
        blocks=blocks_model,
        weyl_zero=data.weyl_is_zero(),
        wplus_zero=blocks.wplus.is_zero() if blocks is not None else None,
        wminus_zero=blocks.wminus.is_zero() if blocks is not None else None,
        einstein=data.traceless_ricci.is_zero(),
        flat=data.riemann.is_zero(),
    )


def scalar_sign(value: Scalar) -> int:
    return (value > 0) - (value < 0)
