"""Core infrastructure for akverify."""

from .config import Config, RunConfig
from .errors import AkverifyError
from .logger import SessionLogger, LogLevel
from .matrix import Matrix, Vector
from .scalar import EXACT, ScalarMode, float_mode, format_scalar, parse_scalar
from . import file_ops

__all__ = [
    "Config",
    "RunConfig",
    "AkverifyError",
    "SessionLogger",
    "LogLevel",
    "Matrix",
    "Vector",
    "EXACT",
    "ScalarMode",
    "float_mode",
    "format_scalar",
    "parse_scalar",
    "file_ops",
]
