from pathlib import Path
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    MODE: Literal["TEST", "LOCAL", "DEV", "PROD"] = "LOCAL"
    LOG_LEVEL: str = "INFO"

    DEFAULT_SEED: int = 0
    OUTPUT_DIR: str = "results"
    PARALLEL_WORKERS: int = 4

    MC_SAMPLES: int = 100_000
    GRID_POINTS: int = 2001
    MAX_GRID_AXES: int = 2

    SOLVER_A: float = 1.0
    SOLVER_MAX_ITERATIONS: int = 200

    ALPHA: float = 0.05
    CV_GRID: list[float] = [0.01, 0.1, 1.0, 10.0]
    CV_PREFIX: int = 200

    HARD_INSTANCE_C: float = 0.5

    @property
    def RESULTS_PATH(self):
        return Path(self.OUTPUT_DIR)

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


settings = Settings()
