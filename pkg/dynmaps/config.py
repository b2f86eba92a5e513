"""Application settings loaded from environment variables."""

import os
from pathlib import Path

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Logging
    log_level: str = "WARNING"

    # Grids
    resolution: int = 200
    jobs: int = 0  # 0 = one worker per processor

    # Output
    significant_digits: int = 12
    output_dir: str = "."

    # Classification
    cp_tol: float = 1e-10

    class Config:
        env_prefix = "DYNMAPS_"
        env_file = ".env"
        env_file_encoding = "utf-8"

    def worker_count(self, requested: int | None = None) -> int:
        """Resolve a --jobs value (None or 0 means every processor)."""
        jobs = self.jobs if requested is None else requested
        if jobs <= 0:
            return os.cpu_count() or 1
        return jobs

    def ensure_output_dir(self) -> Path:
        """Create the figure output directory if it doesn't exist."""
        path = Path(self.output_dir)
        path.mkdir(parents=True, exist_ok=True)
        return path


settings = Settings()
