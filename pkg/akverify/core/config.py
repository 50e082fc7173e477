"""Configuration management for akverify."""

import os
from dataclasses import asdict, dataclass
from typing import Any, Literal

from dotenv import load_dotenv

from akverify.core.scalar import DEFAULT_TOLERANCE, EXACT, ScalarMode, float_mode

load_dotenv()


@dataclass(frozen=True)
class Config:
    """Application configuration read from the environment."""

    mode: Literal["exact", "float"] = "exact"
    tol: float = DEFAULT_TOLERANCE
    seed: int = 0
    log_dir: str = "logs"
    random_metrics: int = 1000

    @classmethod
    def from_env(cls) -> "Config":
        """Create config from environment variables."""
        mode = os.getenv("AKVERIFY_MODE", "exact")
        if mode not in ("exact", "float"):
            raise ValueError(f"Invalid AKVERIFY_MODE: {mode!r}. Use 'exact' or 'float'.")

        try:
            tol = float(os.getenv("AKVERIFY_TOL", str(DEFAULT_TOLERANCE)))
        except ValueError:
            raise ValueError("AKVERIFY_TOL must be a real number.")
        if tol < 0:
            raise ValueError("AKVERIFY_TOL must be nonnegative.")

        try:
            seed = int(os.getenv("AKVERIFY_SEED", "0"))
        except ValueError:
            raise ValueError("AKVERIFY_SEED must be an unsigned integer.")
        if seed < 0:
            raise ValueError("AKVERIFY_SEED must be an unsigned integer.")

        try:
            random_metrics = int(os.getenv("AKVERIFY_RANDOM_METRICS", "1000"))
        except ValueError:
            raise ValueError("AKVERIFY_RANDOM_METRICS must be a positive integer.")
        if random_metrics <= 0:
            raise ValueError("AKVERIFY_RANDOM_METRICS must be a positive integer.")

        return cls(
            mode=mode,
            tol=tol,
            seed=seed,
            log_dir=os.getenv("AKVERIFY_LOG_DIR", "logs"),
            random_metrics=random_metrics,
        )

    def scalar_mode(self) -> ScalarMode:
        return EXACT if self.mode == "exact" else float_mode(self.tol)


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines one CLI run; embedded in its report."""

    command: str
    mode: Literal["exact", "float"] = "exact"
    tol: float = DEFAULT_TOLERANCE
    seed: int = 0
    output_path: str | None = None
    input_paths: tuple[str, ...] = ()
    samples: int | None = None
    parameters: tuple[tuple[str, str], ...] = ()
    timing: bool = False
    log_dir: str = "logs"
    target: str | None = None

    @classmethod
    def from_config(cls, config: Config, command: str, **overrides: Any) -> "RunConfig":
        """Start from the environment config and apply CLI overrides."""
        values = {
            "command": command,
            "mode": config.mode,
            "tol": config.tol,
            "seed": config.seed,
            "log_dir": config.log_dir,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        if "parameters" in values and isinstance(values["parameters"], dict):
            values["parameters"] = tuple(sorted(values["parameters"].items()))
        if "input_paths" in values:
            values["input_paths"] = tuple(values["input_paths"])
        run = cls(**values)
        if run.mode not in ("exact", "float"):
            raise ValueError(f"Invalid mode: {run.mode!r}. Use 'exact' or 'float'.")
        if run.seed < 0:
            raise ValueError("Seed must be an unsigned integer.")
        if run.samples is not None and run.samples < 0:
            raise ValueError("Sample count must be nonnegative.")
        return run

    def scalar_mode(self) -> ScalarMode:
        return EXACT if self.mode == "exact" else float_mode(self.tol)

    def parameter(self, name: str) -> str | None:
        return dict(self.parameters).get(name)

    def to_dict(self) -> dict[str, Any]:
        """Reproducibility record; the output path and timing flag are excluded."""
        data = asdict(self)
        data.pop("output_path")
        data.pop("timing")
        data.pop("log_dir")
        data["input_paths"] = list(self.input_paths)
        data["parameters"] = dict(self.parameters)
        if self.mode == "exact":
            data.pop("tol")
        return data
