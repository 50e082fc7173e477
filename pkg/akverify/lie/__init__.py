"""Lie algebras, invariant forms and the family catalog."""

from .algebra import LieAlgebra, jacobi_check, require_jacobi, is_unimodular
from .forms import InvariantForm, exterior_d, wedge
from .catalog import CatalogError, catalog, get_entry, instantiate

__all__ = [
    "LieAlgebra",
    "jacobi_check",
    "require_jacobi",
    "is_unimodular",
    "InvariantForm",
    "exterior_d",
    "wedge",
    "CatalogError",
    "catalog",
    "get_entry",
    "instantiate",
]
