"""File operations for reading inputs and writing reports atomically."""

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Literal

from akverify.core.errors import AkverifyError


class FileError(AkverifyError):
    """Base exception for file operations."""

    pass


class FileReadError(FileError):
    """Exception raised when file reading fails."""

    pass


class FileWriteError(FileError):
    """Exception raised when file writing fails."""

    pass


def read_file(
    path: str | Path,
    encoding: Literal["utf-8", "utf-8-sig", "latin-1"] = "utf-8-sig",
) -> str:
    """
    Read file content as string.

    Args:
        path: File path to read.
        encoding: Text encoding to use.

    Returns:
        File content as string.

    Raises:
        FileReadError: If file cannot be read.
    """
    try:
        return Path(path).read_text(encoding=encoding)
    except FileNotFoundError:
        raise FileReadError(f"File not found: {path}")
    except PermissionError:
        raise FileReadError(f"Permission denied: {path}")
    except UnicodeDecodeError as e:
        raise FileReadError(f"Encoding error in {path}: {e}")
    except Exception as e:
        raise FileReadError(f"Failed to read {path}: {e}")


def read_json(path: str | Path) -> Any:
    """
    Read and decode a JSON file.

    Raises:
        FileReadError: If the file cannot be read or is not valid JSON.
    """
    content = read_file(path)
    try:
        return json.loads(content)
    except json.JSONDecodeError as e:
        raise FileReadError(f"Invalid JSON in {path}: {e}")


def file_sha256(path: str | Path) -> str:
    """Hex sha256 of a file's bytes, recorded in reports for reproducibility."""
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError as e:
        raise FileReadError(f"Failed to read {path}: {e}")


def write_file(
    path: str | Path,
    content: str,
    encoding: Literal["utf-8", "utf-8-sig", "latin-1"] = "utf-8",
) -> None:
    """
    Write content to file atomically.

    The content goes to a temporary file in the target directory which then
    replaces the target, so readers never see a partial report.

    Args:
        path: File path to write.
        content: Content to write.
        encoding: Text encoding to use.

    Raises:
        FileWriteError: If file cannot be written.
    """
    p = Path(path)
    tmp_name = None
    try:
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=p.parent, prefix=f".{p.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", encoding=encoding) as handle:
            handle.write(content)
        os.replace(tmp_name, p)
        tmp_name = None
    except PermissionError:
        raise FileWriteError(f"Permission denied: {path}")
    except Exception as e:
        raise FileWriteError(f"Failed to write {path}: {e}")
    finally:
        if tmp_name is not None and os.path.exists(tmp_name):
            os.unlink(tmp_name)


def dump_json(data: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
