from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from src.config import settings
from src.models.types import Regularity
from src.services.envgen import StepLaw, ZigzagKind
from src.services.problems import ProblemFamily


class StrictModel(BaseModel):
    """Неизвестные ключи конфигурации - ошибка"""

    model_config = ConfigDict(extra="forbid")


class ProblemConfig(StrictModel):
    family: ProblemFamily
    d: int = Field(1, ge=1)
    params: dict[str, float] = Field(default_factory=dict)


class PathConfig(StrictModel):
    generator: Literal["zigzag", "tv-budget", "hard-instance", "constant", "csv"]
    kind: ZigzagKind | None = None
    u: float | None = Field(None, gt=0)
    V: float | None = Field(None, ge=0)
    step_law: StepLaw = StepLaw.UNIFORM
    radius: float = Field(1.0, gt=0)
    boundaries: list[int] | None = None
    jumps: list[float] | None = None
    gamma: float = Field(1.0, ge=0, le=1)
    value: list[float] | float = 0.0
    file: str | None = None


class ScheduleConfig(StrictModel):
    regime: Regularity | None = None
    c_tau: float | None = Field(None, gt=0)
    cv_grid: list[float] = Field(default_factory=lambda: list(settings.CV_GRID))
    cv_prefix: int = Field(default_factory=lambda: settings.CV_PREFIX, ge=2)
    alpha: float = Field(default_factory=lambda: settings.ALPHA, gt=0, le=1)


class SolverConfig(StrictModel):
    A: float = Field(default_factory=lambda: settings.SOLVER_A, ge=0)
    max_iterations: int = Field(default_factory=lambda: settings.SOLVER_MAX_ITERATIONS, ge=1)
    closed_form: bool = True
    warm_start: bool = True
    parallel_candidates: bool = False


class BaselineConfig(StrictModel):
    kind: Literal["fixed-window", "erm-all", "restart-oracle"]
    k: int | None = Field(None, ge=1)
    boundaries: list[int] | None = None


class SweepConfig(StrictModel):
    parameter: Literal["V", "u", "c_tau"]
    values: list[float] = Field(min_length=1)


class ExperimentConfig(StrictModel):
    name: str = Field("experiment", min_length=1)
    problem: ProblemConfig
    path: PathConfig
    horizon: int = Field(ge=2)
    batch_size: int = Field(1, ge=1)
    theta_1: list[float] | None = None
    schedule: ScheduleConfig = Field(default_factory=ScheduleConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    baselines: list[BaselineConfig] = Field(default_factory=list)
    replications: int = Field(1, ge=1)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
    mc_samples: int = Field(default_factory=lambda: settings.MC_SAMPLES, ge=2)
    output_dir: str = Field(default_factory=lambda: settings.OUTPUT_DIR)
    sweep: SweepConfig | None = None


class ExperimentRequest(StrictModel):
    config: ExperimentConfig
    write: bool = False
