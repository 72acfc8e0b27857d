"""
Centralised configuration using Pydantic v2 BaseSettings.

All variables can be overridden in `.env` or through `XKM_*` environment
variables (case-insensitive).
"""

from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field, ValidationError

ENV_FILE = Path(".env")


class Settings(BaseSettings):
    # ── Runtime ──────────────────────────────────────────────────────────────
    threads: int = Field(1, ge=1, validation_alias="xkm_threads")
    debug: bool = Field(False, validation_alias="xkm_debug")

    # ── Reproducibility ──────────────────────────────────────────────────────
    seed: int = Field(0, validation_alias="xkm_seed")

    # ── Reference clustering (Lloyd) ─────────────────────────────────────────
    max_iters: int = Field(100, ge=1, validation_alias="xkm_max_iters")
    tol: float = Field(1e-6, gt=0, validation_alias="xkm_tol")

    # ── Numerical tolerances ─────────────────────────────────────────────────
    abs_tol: float = Field(1e-12, gt=0, validation_alias="xkm_abs_tol")
    rel_tol: float = Field(1e-9, gt=0, validation_alias="xkm_rel_tol")

    # ── Oracles / generators ─────────────────────────────────────────────────
    brute_force_limit: int = Field(10**6, ge=1, validation_alias="xkm_brute_force_limit")
    codeword_retries: int = Field(20, ge=1, validation_alias="xkm_codeword_retries")

    model_config = SettingsConfigDict(
        env_file=ENV_FILE,
        env_file_encoding="utf-8",
        extra="ignore",
    )

    def tolerance(self, scale: float) -> float:
        """Comparison tolerance for a value of magnitude `scale`."""
        return max(self.abs_tol, self.rel_tol * abs(scale))


try:
    settings = Settings()  # single instance for whole app
except ValidationError as exc:
    raise SystemExit(f"Invalid configuration in .env / XKM_* environment:\n{exc}") from exc
