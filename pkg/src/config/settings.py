"""Process-level settings for the quenched response toolkit."""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


@dataclass
class Settings:
    """
    Application settings and configuration.

    Attributes:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        threads: Default number of worker threads for experiments
        output_dir: Default directory for result files
        modes: Default Fourier truncation order M
        tol: Default tolerance for equivariant densities
    """

    log_level: str = "INFO"
    threads: int = 1
    output_dir: str = "results"
    modes: int = 32
    tol: float = 1e-9

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Create Settings instance from environment variables.

        Returns:
            Settings instance with values from environment

        Raises:
            ValueError: If a numeric variable cannot be parsed
        """
        try:
            return cls(
                log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
                threads=int(os.getenv("COCYCLE_THREADS", "1")),
                output_dir=os.getenv("COCYCLE_OUTPUT_DIR", "results"),
                modes=int(os.getenv("COCYCLE_MODES", "32")),
                tol=float(os.getenv("COCYCLE_TOL", "1e-9")),
            )
        except ValueError as e:
            raise ValueError(f"Invalid numeric setting in environment: {e}") from e

    def validate(self) -> None:
        """
        Validate settings values.

        Raises:
            ValueError: If any setting is invalid
        """
        if self.threads < 1:
            raise ValueError("COCYCLE_THREADS must be at least 1")

        if self.modes < 1:
            raise ValueError("COCYCLE_MODES must be at least 1")

        if not 0.0 < self.tol < 1.0:
            raise ValueError("COCYCLE_TOL must lie in (0, 1)")

        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"Invalid log level: {self.log_level}")
