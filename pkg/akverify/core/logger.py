"""
Session-based logging for akverify runs.

Every CLI run writes a log file with timestamped lines, one record per
asserted identity, and a closing summary. Console echo goes to stderr so
that JSON reports on stdout stay clean.
"""

import sys
import traceback
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import TextIO


class LogLevel(Enum):
    """Log levels for different message types."""
    INFO = "INFO"
    SUCCESS = "SUCCESS"
    WARNING = "WARNING"
    ERROR = "ERROR"
    DEBUG = "DEBUG"


@dataclass
class CheckRecord:
    """One asserted identity and its verdict."""
    claim: str
    check: str
    passed: bool
    detail: str = ""


@dataclass
class SessionMetadata:
    """Metadata about the run."""
    command: str
    target: str
    mode: str
    seed: int
    output_file: str | None = None
    start_time: datetime = field(default_factory=datetime.now)
    end_time: datetime | None = None
    exit_code: int = 0
    checks: list[CheckRecord] = field(default_factory=list)


class SessionLogger:
    """
    Context manager for logging CLI runs.

    Logs to a file under ``log_dir`` and echoes non-debug messages to the
    console stream. Exceptions escaping the block are logged with their
    traceback and re-raised.
    """

    # Max log files to keep
    MAX_LOG_FILES = 50
    PREFIX = "akverify"

    def __init__(
        self,
        command: str,
        target: str = "",
        mode: str = "exact",
        seed: int = 0,
        output_file: str | None = None,
        log_dir: str | Path = "logs",
        console: TextIO | None = None,
        quiet: bool = False,
    ):
        """Initialize the session logger.

        Args:
            command: CLI command being run
            target: Claim id or catalog name
            mode: Scalar mode label
            seed: Random seed of the run
            output_file: Report path, if any
            log_dir: Directory to store log files
            console: Stream for console echo (stderr by default)
            quiet: Suppress console echo entirely
        """
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)

        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
        label = f"{command}_{target}" if target else command
        safe_label = "".join(c if c.isalnum() or c in ("-", "_") else "_" for c in label)[:50]
        self.log_file = self.log_dir / f"{self.PREFIX}-{timestamp}_{safe_label}.log"

        self.metadata = SessionMetadata(
            command=command,
            target=target,
            mode=mode,
            seed=seed,
            output_file=output_file,
        )

        self.file_handle = open(self.log_file, "w", encoding="utf-8")
        self._console = console
        self._quiet = quiet

    @property
    def console(self) -> TextIO:
        return self._console if self._console is not None else sys.stderr

    def __enter__(self):
        """Enter context manager."""
        self.info(f"akverify {self.metadata.command} {self.metadata.target}".rstrip())
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Exit context manager and write summary."""
        self.metadata.end_time = datetime.now()
        if exc_type is not None:
            self.metadata.exit_code = 2
            self._log_exception(exc_type, exc_val, exc_tb)

        self._write_summary()
        self.file_handle.close()
        self._create_latest_symlink()
        self._rotate_logs()

        return False  # Don't suppress exceptions

    def set_exit_code(self, code: int):
        self.metadata.exit_code = code

    def info(self, message: str):
        """Log an info message."""
        self._log_with_level(LogLevel.INFO, message)

    def success(self, message: str):
        """Log a success message."""
        self._log_with_level(LogLevel.SUCCESS, message)

    def warning(self, message: str):
        """Log a warning message."""
        self._log_with_level(LogLevel.WARNING, message)

    def error(self, message: str):
        """Log an error message."""
        self._log_with_level(LogLevel.ERROR, message)

    def debug(self, message: str):
        """Log a debug message (only to file, not console)."""
        self._log_with_level(LogLevel.DEBUG, message, console=False)

    def log_check(self, claim: str, check: str, passed: bool, detail: str = ""):
        """Record one asserted identity.

        Args:
            claim: Claim id the check belongs to
            check: Check name
            passed: Verdict
            detail: Short evidence string (file only)
        """
        self.metadata.checks.append(CheckRecord(claim, check, passed, detail))
        verdict = "pass" if passed else "FAIL"
        self._write_to_file(f"  CHECK {claim}/{check}: {verdict}")
        if detail:
            self._write_to_file(f"    {detail}")
        if not passed:
            self._log_with_level(LogLevel.WARNING, f"{claim}: check '{check}' failed")

    def _log_with_level(self, level: LogLevel, message: str, console: bool = True):
        """Log a message with level and timestamp."""
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        self._write_to_file(f"{timestamp} [{level.value}] {message}")

        if console and not self._quiet and level != LogLevel.DEBUG:
            if level == LogLevel.ERROR:
                print(f"{timestamp} {message}", file=self.console)
            else:
                print(message, file=self.console)

    def _write_to_file(self, message: str):
        """Write a message to the log file."""
        if message and not self.file_handle.closed:
            self.file_handle.write(message + "\n")
            self.file_handle.flush()

    def _write_separator(self):
        self._write_to_file("=" * 70)

    def _log_exception(self, exc_type, exc_val, exc_tb):
        """Log an exception with full traceback."""
        self._write_separator()
        self.error(f"{exc_type.__name__}: {exc_val}")
        self._write_to_file("  Full Traceback:")
        for line in traceback.format_exception(exc_type, exc_val, exc_tb):
            self._write_to_file(f"    {line.rstrip()}")
        self._write_separator()

    def _write_summary(self):
        """Write run summary to the end of the log file."""
        duration = (self.metadata.end_time - self.metadata.start_time).total_seconds()
        passed = sum(1 for c in self.metadata.checks if c.passed)

        self._write_separator()
        self._write_to_file("SESSION SUMMARY")
        self._write_to_file(f"Command: {self.metadata.command} {self.metadata.target}".rstrip())
        self._write_to_file(f"Mode: {self.metadata.mode}")
        self._write_to_file(f"Seed: {self.metadata.seed}")
        if self.metadata.output_file:
            self._write_to_file(f"Output: {self.metadata.output_file}")
        self._write_to_file(f"Checks: {passed}/{len(self.metadata.checks)} passed")
        self._write_to_file(f"Duration: {duration:.3f} seconds")
        self._write_to_file(f"Exit code: {self.metadata.exit_code}")
        self._write_separator()

    def _create_latest_symlink(self):
        """Point ``akverify-latest.log`` at this run's log."""
        symlink_path = self.log_dir / f"{self.PREFIX}-latest.log"
        if symlink_path.exists() or symlink_path.is_symlink():
            symlink_path.unlink()
        try:
            symlink_path.symlink_to(self.log_file.name)
        except OSError:
            pass

    def _rotate_logs(self):
        """Remove old log files, keeping only the most recent MAX_LOG_FILES."""
        log_files = []
        for p in self.log_dir.glob(f"{self.PREFIX}-*.log"):
            if p.name == f"{self.PREFIX}-latest.log":
                continue
            if p.is_symlink() and not p.exists():
                try:
                    p.unlink()
                except OSError:
                    pass
                continue
            try:
                if p.is_file():
                    log_files.append(p)
            except OSError:
                pass

        log_files = sorted(log_files, key=lambda p: p.stat().st_mtime, reverse=True)
        for old_log in log_files[self.MAX_LOG_FILES:]:
            try:
                old_log.unlink()
            except OSError:
                pass


def get_latest_log(log_dir: str | Path = "logs") -> str | None:
    """Get the contents of the latest log file.

    Returns:
        Log file contents or None if no logs exist
    """
    latest_symlink = Path(log_dir) / f"{SessionLogger.PREFIX}-latest.log"
    if latest_symlink.is_symlink() or latest_symlink.exists():
        try:
            return latest_symlink.read_text(encoding="utf-8")
        except OSError:
            return None
    return None
