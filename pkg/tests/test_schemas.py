"""Tests for input file schemas."""

import json

import pytest
from sympy import Rational

from akverify.core.errors import NotPositiveDefiniteError, ScalarParseError
from akverify.core.file_ops import FileReadError
from akverify.core.scalar import EXACT, float_mode
from akverify.core.schemas import (
    SCHEMA_VERSION,
    ErrorReport,
    SchemaError,
    StructureFile,
    load_algebra_file,
    load_structure_file,
)
from akverify.lie.catalog import CatalogError, instantiate


def write_json(path, data) -> str:
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestAlgebraFile:
    """Test algebra file loading."""

    def test_load_rr30(self, tmp_path):
        """Test a valid bracket table."""
        path = write_json(
            tmp_path / "rr30.json",
            {"dim": 4, "brackets": [{"i": 1, "j": 3, "k": 2, "value": "-1"}, {"i": 2, "j": 3, "k": 1, "value": "1"}]},
        )
        g = load_algebra_file(path).to_algebra(EXACT, name="rr30")

        assert g.dim == 4
        assert g.c(1, 0, 2) == -1
        assert g.c(0, 1, 2) == 1
        assert g.c(1, 2, 0) == 1

    def test_catalog_export_round_trip(self, tmp_path):
        """Test that a catalog entry exported to the schema loads back bit-exactly."""
        g = instantiate("dS", EXACT, **{"lambda": Rational(1, 2)})
        path = write_json(tmp_path / "ds.json", g.to_json_dict())

        loaded = load_algebra_file(path).to_algebra(EXACT)
        assert loaded.constants == g.constants

    def test_indices_must_be_ordered(self, tmp_path):
        """Test that i < j is enforced."""
        path = write_json(tmp_path / "bad.json", {"dim": 4, "brackets": [{"i": 3, "j": 1, "k": 2, "value": "1"}]})

        with pytest.raises(SchemaError, match="i < j"):
            load_algebra_file(path)

    def test_index_out_of_range(self, tmp_path):
        """Test that indices beyond dim are rejected."""
        path = write_json(tmp_path / "bad.json", {"dim": 2, "brackets": [{"i": 1, "j": 2, "k": 3, "value": "1"}]})

        with pytest.raises(SchemaError, match="exceeds dimension"):
            load_algebra_file(path)

    def test_zero_based_rejected(self, tmp_path):
        """Test that indices are 1-based."""
        path = write_json(tmp_path / "bad.json", {"dim": 2, "brackets": [{"i": 0, "j": 1, "k": 1, "value": "1"}]})

        with pytest.raises(SchemaError):
            load_algebra_file(path)

    def test_bad_literal(self, tmp_path):
        """Test that values must be scalar literals."""
        path = write_json(tmp_path / "bad.json", {"dim": 2, "brackets": [{"i": 1, "j": 2, "k": 1, "value": "one"}]})

        with pytest.raises(SchemaError):
            load_algebra_file(path)

    def test_decimal_needs_float_mode(self, tmp_path):
        """Test that decimals validate but only load in float mode."""
        path = write_json(tmp_path / "dec.json", {"dim": 2, "brackets": [{"i": 1, "j": 2, "k": 2, "value": "0.5"}]})
        model = load_algebra_file(path)

        with pytest.raises(ScalarParseError):
            model.to_algebra(EXACT)
        assert model.to_algebra(float_mode()).c(1, 0, 1) == 0.5

    def test_missing_file(self, tmp_path):
        """Test that a missing file is a read error."""
        with pytest.raises(FileReadError, match="File not found"):
            load_algebra_file(tmp_path / "missing.json")


class TestStructureFile:
    """Test structure file loading."""

    def test_metric_and_form(self, tmp_path):
        """Test the dS Kahler structure written as a file."""
        path = write_json(
            tmp_path / "ds.json",
            {
                "gram": [["4", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
                "orientation": -1,
                "omega": {"14": "-2", "23": "1"},
            },
        )
        structure = load_structure_file(path)
        m = structure.to_metric(EXACT)
        omega = structure.to_omega(EXACT)

        assert m.orientation == -1
        assert m.gram[0, 0] == 4
        assert omega.coefficient((0, 3)) == -2
        assert omega.coefficient((1, 2)) == 1

    def test_form_is_optional(self):
        """Test a metric without a form."""
        structure = StructureFile(gram=[["1", "0"], ["0", "1"]])

        assert structure.to_omega() is None
        assert structure.orientation == 1

    def test_non_square_gram(self, tmp_path):
        """Test that the Gram matrix must be square."""
        path = write_json(tmp_path / "bad.json", {"gram": [["1", "0"], ["0"]]})

        with pytest.raises(SchemaError, match="square"):
            load_structure_file(path)

    def test_bad_form_key(self, tmp_path):
        """Test that form keys are increasing 1-based pairs."""
        path = write_json(tmp_path / "bad.json", {"gram": [["1", "0"], ["0", "1"]], "omega": {"21": "1"}})

        with pytest.raises(SchemaError, match="increasing"):
            load_structure_file(path)

    def test_bad_orientation(self, tmp_path):
        """Test that orientation is +1 or -1."""
        path = write_json(tmp_path / "bad.json", {"gram": [["1"]], "orientation": 0})

        with pytest.raises(SchemaError):
            load_structure_file(path)

    def test_not_positive_definite(self):
        """Test that schema-valid but indefinite Gram matrices fail on conversion."""
        structure = StructureFile(gram=[["1", "2"], ["2", "1"]])

        with pytest.raises(NotPositiveDefiniteError):
            structure.to_metric(EXACT)


class TestErrorReport:
    """Test the machine-readable error object."""

    def test_from_exception(self):
        """Test the error type and message."""
        report = ErrorReport.from_exception(CatalogError("Unknown catalog family 'x'"))

        assert report.model_dump() == {"error": {"type": "CatalogError", "message": "Unknown catalog family 'x'"}}

    def test_schema_version(self):
        """Test the report header version."""
        assert SCHEMA_VERSION == "1.0"
