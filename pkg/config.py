from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict

from models import SearchConfig


class Settings(BaseSettings):
    # Hecke testing
    n_max: int = 8
    min_overlap: int = 5
    precision: Optional[int] = None

    # Census bounds
    max_factor_weight: int = 26
    max_total_weight: int = 30
    max_delta_iters: int = 3
    workers: int = 1

    # Logging
    log_level: str = "WARNING"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    model_config = SettingsConfigDict(
        env_prefix="NHOLO_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    @property
    def required_precision(self) -> int:
        return self.n_max * (self.min_overlap - 1) + 1

    @property
    def default_precision(self) -> int:
        return self.precision if self.precision is not None else self.required_precision

    def search_config(self, **overrides) -> SearchConfig:
        """Build a validated census configuration, letting explicit values win"""
        values = {
            "max_factor_weight": self.max_factor_weight,
            "max_total_weight": self.max_total_weight,
            "max_delta_iters": self.max_delta_iters,
            "n_max": self.n_max,
            "min_overlap": self.min_overlap,
            "precision": self.precision,
            "workers": self.workers,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return SearchConfig(**values)

