"""Metrics, Levi-Civita curvature and the self-dual decomposition."""

from .metric import MetricFrame, random_metric
from .curvature import CurvatureData, curvature, weyl_component
from .hodge import CurvatureBlocks, curvature_blocks
from .report import curvature_report

__all__ = [
    "MetricFrame",
    "random_metric",
    "CurvatureData",
    "curvature",
    "weyl_component",
    "CurvatureBlocks",
    "curvature_blocks",
    "curvature_report",
]
