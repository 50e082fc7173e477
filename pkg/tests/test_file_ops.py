"""Tests for file operations."""

import hashlib
import json

import pytest

from akverify.core.file_ops import (
    FileReadError,
    FileWriteError,
    dump_json,
    file_sha256,
    read_file,
    read_json,
    write_file,
)


class TestReadFile:
    """Test file reading functionality."""

    def test_read_existing_file(self, tmp_path):
        """Test reading an existing file."""
        test_file = tmp_path / "algebra.json"
        test_file.write_text('{"dim": 4}', encoding="utf-8")

        assert read_file(test_file) == '{"dim": 4}'

    def test_read_nonexistent_file(self, tmp_path):
        """Test reading a file that doesn't exist."""
        with pytest.raises(FileReadError, match="File not found"):
            read_file(tmp_path / "nonexistent.json")

    def test_read_directory(self, tmp_path):
        """Test reading a directory raises error."""
        with pytest.raises(FileReadError):
            read_file(tmp_path)

    def test_read_with_bom(self, tmp_path):
        """Test reading file with UTF-8 BOM."""
        test_file = tmp_path / "bom.json"
        test_file.write_bytes(b'\xef\xbb\xbf{"dim": 4}')

        assert read_json(test_file) == {"dim": 4}


class TestReadJson:
    """Test JSON decoding."""

    def test_invalid_json(self, tmp_path):
        """Test that malformed JSON is a read error."""
        test_file = tmp_path / "broken.json"
        test_file.write_text("{dim: 4", encoding="utf-8")

        with pytest.raises(FileReadError, match="Invalid JSON"):
            read_json(test_file)


class TestWriteFile:
    """Test atomic file writing."""

    def test_write_new_file(self, tmp_path):
        """Test writing a new file."""
        test_file = tmp_path / "report.json"
        write_file(test_file, "{}\n")

        assert test_file.read_text(encoding="utf-8") == "{}\n"

    def test_write_overwrite(self, tmp_path):
        """Test overwriting existing file."""
        test_file = tmp_path / "report.json"
        test_file.write_text("old", encoding="utf-8")

        write_file(test_file, "new")
        assert test_file.read_text(encoding="utf-8") == "new"

    def test_write_creates_directories(self, tmp_path):
        """Test that write_file creates parent directories."""
        deep_file = tmp_path / "a" / "b" / "report.json"
        write_file(deep_file, "{}")

        assert deep_file.read_text(encoding="utf-8") == "{}"

    def test_no_temp_files_left(self, tmp_path):
        """Test that only the target remains after a write."""
        write_file(tmp_path / "report.json", "{}")

        assert [p.name for p in tmp_path.iterdir()] == ["report.json"]

    def test_write_failure_cleans_up(self, tmp_path, mocker):
        """Test that a failed replace leaves no temp file behind."""
        mocker.patch("akverify.core.file_ops.os.replace", side_effect=OSError("disk full"))

        with pytest.raises(FileWriteError, match="disk full"):
            write_file(tmp_path / "report.json", "{}")
        assert list(tmp_path.iterdir()) == []


class TestDumpJson:
    """Test canonical JSON text."""

    def test_sorted_and_indented(self):
        """Test sorted keys, two-space indent and trailing newline."""
        text = dump_json({"b": 1, "a": [1, 2]})

        assert text == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
        assert json.loads(text) == {"a": [1, 2], "b": 1}

    def test_same_data_same_bytes(self):
        """Test that key order does not change the output."""
        assert dump_json({"x": 1, "y": 2}) == dump_json({"y": 2, "x": 1})


class TestFileSha256:
    """Test input hashing."""

    def test_hash_matches_hashlib(self, tmp_path):
        """Test the digest of the file bytes."""
        test_file = tmp_path / "input.json"
        test_file.write_bytes(b'{"dim": 2}')

        assert file_sha256(test_file) == hashlib.sha256(b'{"dim": 2}').hexdigest()

    def test_missing_file(self, tmp_path):
        """Test hashing a missing file."""
        with pytest.raises(FileReadError):
            file_sha256(tmp_path / "missing.json")
