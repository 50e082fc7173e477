"""
Catalog of the four-dimensional algebra families used by the verifiers.

The abelian algebra, rr30 and r2prime are conformally flat algebras
carrying symplectic forms and are entered as bracket tables. The dS family
(parameter lambda >= 0) is entered through its structure equations and
converted to brackets by duality.
"""

from dataclasses import dataclass, field
from typing import Callable, Mapping

from sympy import Rational

from akverify.core.errors import AkverifyError
from akverify.core.scalar import EXACT, Scalar, ScalarMode, parse_scalar
from akverify.lie.algebra import LieAlgebra
from akverify.lie.forms import InvariantForm, algebra_from_structure_equations


class CatalogError(AkverifyError):
    """Raised for unknown families or inadmissible parameters."""

    pass


@dataclass(frozen=True)
class ParameterSlot:
    """A named rational parameter of a family."""

    name: str
    constraint: str
    default: Rational
    admissible: Callable[[Scalar], bool] = field(compare=False, repr=False, default=lambda v: True)


@dataclass(frozen=True)
class CatalogEntry:
    """One algebra family."""

    name: str
    description: str
    provenance: str
    unimodular: bool
    parameters: tuple[ParameterSlot, ...] = ()
    builder: Callable[[Mapping[str, Scalar], ScalarMode], LieAlgebra] = field(
        compare=False, repr=False, default=None
    )
    samples: tuple[Mapping[str, Rational], ...] = ()

    def instantiate(self, mode: ScalarMode = EXACT, **params: int | str | Scalar) -> LieAlgebra:
        """
        Build the algebra for the given parameters (defaults fill the rest).

        Raises:
            CatalogError: On unknown or inadmissible parameters.
        """
        known = {slot.name for slot in self.parameters}
        unknown = set(params) - known
        if unknown:
            raise CatalogError(f"Unknown parameter(s) for {self.name}: {', '.join(sorted(unknown))}")
        values: dict[str, Scalar] = {}
        for slot in self.parameters:
            raw = params.get(slot.name, slot.default)
            value = parse_scalar(raw, mode) if isinstance(raw, str) else mode.coerce(raw)
            if not slot.admissible(value):
                raise CatalogError(f"Parameter {slot.name}={value} violates {slot.constraint}")
            values[slot.name] = value
        return self.builder(values, mode)

    def sample_instances(self, mode: ScalarMode = EXACT) -> list[LieAlgebra]:
        """Instantiations at the representative samples (one if parameter-free)."""
        if not self.parameters:
            return [self.instantiate(mode)]
        return [self.instantiate(mode, **sample) for sample in self.samples]


DS_LAMBDA_SAMPLES = (Rational(0), Rational(1, 2), Rational(1), Rational(3))


def _abelian(params: Mapping[str, Scalar], mode: ScalarMode) -> LieAlgebra:
    return LieAlgebra.from_brackets(4, {}, mode, name="abelian")


def _rr30(params: Mapping[str, Scalar], mode: ScalarMode) -> LieAlgebra:
    return LieAlgebra.from_brackets(4, {(1, 3): {2: -1}, (2, 3): {1: 1}}, mode, name="rr30")


def _r2prime(params: Mapping[str, Scalar], mode: ScalarMode) -> LieAlgebra:
    return LieAlgebra.from_brackets(
        4,
        {(1, 3): {3: 1}, (1, 4): {4: 1}, (2, 3): {4: 1}, (2, 4): {3: -1}},
        mode,
        name="r2prime",
    )


def ds_structure_equations(lam: Scalar, mode: ScalarMode = EXACT) -> list[InvariantForm]:
    """``de^1 = 0, de^2 = -e12 - lam e13, de^3 = lam e12 - e13, de^4 = -2 e14 + e23``."""
    return [
        InvariantForm.zero(4, 2, mode),
        InvariantForm.from_terms(4, {(1, 2): -1, (1, 3): -lam}, mode),
        InvariantForm.from_terms(4, {(1, 2): lam, (1, 3): -1}, mode),
        InvariantForm.from_terms(4, {(1, 4): -2, (2, 3): 1}, mode),
    ]


def _ds(params: Mapping[str, Scalar], mode: ScalarMode) -> LieAlgebra:
    lam = params["lambda"]
    return algebra_from_structure_equations(ds_structure_equations(lam, mode), name=f"dS(lambda={lam})")


_CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        name="abelian",
        description="abelian Lie algebra of dimension 4",
        provenance="conformally flat algebra with symplectic forms; all brackets vanish",
        unimodular=True,
        builder=_abelian,
    ),
    CatalogEntry(
        name="rr30",
        description="[e1,e3] = -e2, [e2,e3] = e1",
        provenance="conformally flat algebra with symplectic forms (rr_{3,0})",
        unimodular=True,
        builder=_rr30,
    ),
    CatalogEntry(
        name="r2prime",
        description="[e1,e3] = e3, [e1,e4] = e4, [e2,e3] = e4, [e2,e4] = -e3",
        provenance="conformally flat algebra with symplectic forms (r'_2)",
        unimodular=False,
        builder=_r2prime,
    ),
    CatalogEntry(
        name="dS",
        description="de2 = -e12 - l e13, de3 = l e12 - e13, de4 = -2 e14 + e23",
        provenance="algebras with a non-conformally flat metric with W+ = 0; "
        "brackets derived from the structure equations by duality",
        unimodular=False,
        parameters=(
            ParameterSlot(
                name="lambda",
                constraint="lambda >= 0",
                default=Rational(0),
                admissible=lambda v: v >= 0,
            ),
        ),
        builder=_ds,
        samples=tuple({"lambda": lam} for lam in DS_LAMBDA_SAMPLES),
    ),
)


def catalog() -> list[CatalogEntry]:
    """The four algebra families."""
    return list(_CATALOG)


def get_entry(name: str) -> CatalogEntry:
    """
    Look up a family by name (case-insensitive).

    Raises:
        CatalogError: If no family has this name.
    """
    for entry in _CATALOG:
        if entry.name.lower() == name.lower():
            return entry
    names = ", ".join(e.name for e in _CATALOG)
    raise CatalogError(f"Unknown catalog family {name!r}. Known: {names}")


def instantiate(name: str, mode: ScalarMode = EXACT, **params: int | str | Scalar) -> LieAlgebra:
    return get_entry(name).instantiate(mode, **params)
