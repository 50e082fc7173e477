"""
Input file schemas.

Algebra files::

    {"dim": 4, "brackets": [{"i": 1, "j": 3, "k": 3, "value": "1"}, ...]}

Structure files::

    {"gram": [["4", "0", ...], ...], "orientation": -1, "omega": {"14": "-2", "23": "1"}}

Indices are 1-based and scalars are ``"p/q"`` strings (decimals only in
float mode).
"""

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from akverify.core.errors import ScalarParseError
from akverify.core.file_ops import FileError, read_json
from akverify.core.matrix import Matrix
from akverify.core.scalar import EXACT, ScalarMode, float_mode, parse_scalar
from akverify.geometry.metric import MetricFrame
from akverify.lie.algebra import LieAlgebra
from akverify.lie.forms import InvariantForm

SCHEMA_VERSION = "1.0"


class SchemaError(FileError):
    """Raised when an input file does not match its schema."""

    pass


def _check_literal(value: str) -> str:
    try:
        parse_scalar(value, float_mode())
    except ScalarParseError as e:
        raise ValueError(str(e))
    return value


class BracketEntry(BaseModel):
    """``[e_i, e_j]`` has ``value`` as its ``e_k`` coefficient."""

    model_config = ConfigDict(extra="forbid")

    i: int = Field(ge=1)
    j: int = Field(ge=1)
    k: int = Field(ge=1)
    value: str

    @field_validator("value")
    @classmethod
    def _rational(cls, v: str) -> str:
        return _check_literal(v)

    @model_validator(mode="after")
    def _ordered(self) -> "BracketEntry":
        if self.i >= self.j:
            raise ValueError(f"Bracket entries need i < j, got i={self.i}, j={self.j}")
        return self


class LieAlgebraFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dim: int = Field(ge=1, le=6)
    brackets: list[BracketEntry] = Field(default_factory=list)

    @model_validator(mode="after")
    def _in_range(self) -> "LieAlgebraFile":
        for entry in self.brackets:
            if max(entry.i, entry.j, entry.k) > self.dim:
                raise ValueError(f"Bracket index exceeds dimension {self.dim}: {entry.model_dump()}")
        return self

    def to_algebra(self, mode: ScalarMode = EXACT, name: str = "") -> LieAlgebra:
        return LieAlgebra.from_json_dict(self.model_dump(), mode, name)


class StructureFile(BaseModel):
    """A metric with orientation and, optionally, a 2-form."""

    model_config = ConfigDict(extra="forbid")

    gram: list[list[str]]
    orientation: Literal[1, -1] = 1
    omega: dict[str, str] | None = None

    @field_validator("gram")
    @classmethod
    def _square(cls, v: list[list[str]]) -> list[list[str]]:
        n = len(v)
        if n == 0 or any(len(row) != n for row in v):
            raise ValueError("gram must be a non-empty square matrix")
        for row in v:
            for entry in row:
                _check_literal(entry)
        return v

    @field_validator("omega")
    @classmethod
    def _form_keys(cls, v: dict[str, str] | None) -> dict[str, str] | None:
        if v is None:
            return v
        for key, value in v.items():
            if len(key) != 2 or not key.isdigit() or key[0] >= key[1] or key[0] == "0":
                raise ValueError(f"2-form keys are increasing 1-based index pairs like '12', got {key!r}")
            _check_literal(value)
        return v

    @model_validator(mode="after")
    def _form_in_range(self) -> "StructureFile":
        if self.omega:
            n = len(self.gram)
            for key in self.omega:
                if int(key[1]) > n:
                    raise ValueError(f"2-form index {key!r} exceeds dimension {n}")
        return self

    def gram_matrix(self, mode: ScalarMode = EXACT) -> Matrix:
        return Matrix([[parse_scalar(x, mode) for x in row] for row in self.gram], mode)

    def to_metric(self, mode: ScalarMode = EXACT) -> MetricFrame:
        return MetricFrame(self.gram_matrix(mode), self.orientation)

    def to_omega(self, mode: ScalarMode = EXACT) -> InvariantForm | None:
        if not self.omega:
            return None
        return InvariantForm.from_dict(len(self.gram), self.omega, mode)


class ErrorDetail(BaseModel):
    type: str
    message: str


class ErrorReport(BaseModel):
    """Machine-readable error object printed on every failing CLI path."""

    error: ErrorDetail

    @classmethod
    def from_exception(cls, exc: Exception) -> "ErrorReport":
        return cls(error=ErrorDetail(type=type(exc).__name__, message=str(exc)))


def load_algebra_file(path: str | Path) -> LieAlgebraFile:
    """
    Read and validate an algebra file.

    Raises:
        FileReadError: If the file is missing or not JSON.
        SchemaError: If the content does not match the schema.
    """
    data = read_json(path)
    try:
        return LieAlgebraFile.model_validate(data)
    except ValidationError as e:
        raise SchemaError(f"Invalid algebra file {path}: {e}")


def load_structure_file(path: str | Path) -> StructureFile:
    """
    Read and validate a structure file.

    Raises:
        FileReadError: If the file is missing or not JSON.
        SchemaError: If the content does not match the schema.
    """
    data = read_json(path)
    try:
        return StructureFile.model_validate(data)
    except ValidationError as e:
        raise SchemaError(f"Invalid structure file {path}: {e}")
