"""Tests for the session logger."""

import io

import pytest

from akverify.core.logger import SessionLogger, get_latest_log


@pytest.fixture
def console():
    """Captured console stream."""
    return io.StringIO()


def make_logger(tmp_path, console, **kwargs) -> SessionLogger:
    return SessionLogger("verify", target="dS-kahler", log_dir=tmp_path / "logs", console=console, **kwargs)


class TestSessionLogger:
    """Test log files, console echo and the run summary."""

    def test_log_file_created(self, tmp_path, console):
        """Test that a timestamped log file appears under log_dir."""
        logger = make_logger(tmp_path, console)
        with logger:
            logger.info("hello")

        assert logger.log_file.exists()
        assert logger.log_file.name.startswith("akverify-")
        assert logger.log_file.name.endswith("_verify_dS-kahler.log")
        assert "[INFO] hello" in logger.log_file.read_text(encoding="utf-8")

    def test_console_echo(self, tmp_path, console):
        """Test that info goes to the console and debug does not."""
        logger = make_logger(tmp_path, console)
        with logger:
            logger.info("visible")
            logger.debug("hidden")

        assert "visible" in console.getvalue()
        assert "hidden" not in console.getvalue()
        assert "[DEBUG] hidden" in logger.log_file.read_text(encoding="utf-8")

    def test_quiet(self, tmp_path, console):
        """Test that quiet suppresses all console output."""
        logger = make_logger(tmp_path, console, quiet=True)
        with logger:
            logger.error("boom")

        assert console.getvalue() == ""

    def test_log_check(self, tmp_path, console):
        """Test that checks are recorded and failures warned about."""
        logger = make_logger(tmp_path, console)
        with logger:
            logger.log_check("dS-kahler", "W+ = 0", True, "exact")
            logger.log_check("dS-kahler", "W- != 0", False)

        text = logger.log_file.read_text(encoding="utf-8")
        assert "CHECK dS-kahler/W+ = 0: pass" in text
        assert "CHECK dS-kahler/W- != 0: FAIL" in text
        assert "Checks: 1/2 passed" in text
        assert "check 'W- != 0' failed" in console.getvalue()

    def test_summary(self, tmp_path, console):
        """Test the closing summary."""
        logger = make_logger(tmp_path, console, seed=7)
        with logger:
            logger.set_exit_code(1)

        text = logger.log_file.read_text(encoding="utf-8")
        assert "SESSION SUMMARY" in text
        assert "Seed: 7" in text
        assert "Exit code: 1" in text

    def test_exception_logged_and_reraised(self, tmp_path, console):
        """Test that an escaping exception is logged with exit code 2."""
        logger = make_logger(tmp_path, console)
        with pytest.raises(RuntimeError, match="broken"):
            with logger:
                raise RuntimeError("broken")

        text = logger.log_file.read_text(encoding="utf-8")
        assert "RuntimeError: broken" in text
        assert "Full Traceback" in text
        assert "Exit code: 2" in text

    def test_latest_symlink(self, tmp_path, console):
        """Test that the latest log is reachable."""
        logger = make_logger(tmp_path, console)
        with logger:
            logger.info("most recent")

        assert "most recent" in get_latest_log(tmp_path / "logs")

    def test_no_logs(self, tmp_path):
        """Test get_latest_log without any run."""
        assert get_latest_log(tmp_path / "empty") is None

    def test_rotation(self, tmp_path, console, monkeypatch):
        """Test that old logs are removed beyond MAX_LOG_FILES."""
        monkeypatch.setattr(SessionLogger, "MAX_LOG_FILES", 2)
        for _ in range(4):
            with make_logger(tmp_path, console):
                pass

        logs = [p for p in (tmp_path / "logs").glob("akverify-*.log") if p.name != "akverify-latest.log"]
        assert len(logs) == 2
