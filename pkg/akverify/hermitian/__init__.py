"""Almost-Hermitian structures, the canonical connection and the Nijenhuis tensor."""

from .structure import AlmostHermitianStructure, from_metric_and_omega, candidate_structures
from .compatibility import solve_compatibility
from .nijenhuis import nijenhuis
from .connection import Constant, NonConstant, constant_H_test, hermitian_H
from .blocks import wplus_J_blocks

__all__ = [
    "AlmostHermitianStructure",
    "from_metric_and_omega",
    "candidate_structures",
    "solve_compatibility",
    "nijenhuis",
    "Constant",
    "NonConstant",
    "constant_H_test",
    "hermitian_H",
    "wplus_J_blocks",
]
