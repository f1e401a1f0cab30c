from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class RegretTrace(BaseModel):
    """Траектория одного алгоритма в одной репликации, по периодам n = 1..N"""

    learner: str
    replication: int
    windows: list[int]
    excess: list[float]
    excess_se: list[float]
    cum_regret: list[float]
    config_hash: str
    c_tau: float | None = None

    @property
    def horizon(self) -> int:
        return len(self.windows)

    @property
    def final_regret(self) -> float:
        return self.cum_regret[-1]


class LearnerSummary(BaseModel):
    learner: str
    replications: int
    median: float
    q10: float
    q25: float
    q75: float
    q90: float
    mean: float

    model_config = ConfigDict(from_attributes=True)


class ExperimentSummary(BaseModel):
    name: str
    label: Literal["artifact-generated"] = "artifact-generated"
    config_hash: str
    horizon: int
    seed: int
    learners: list[LearnerSummary] = Field(default_factory=list)
    c_tau: list[float] = Field(default_factory=list)


class SweepPoint(BaseModel):
    parameter: str
    value: float
    summary: ExperimentSummary
