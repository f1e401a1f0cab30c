from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.services.segmentation import SegmentCriterion


class StronglyConvexSegmentationRequest(BaseModel):
    path: list[list[float]] | list[float] = Field(min_length=2)
    rho: float = Field(1.0, gt=0)
    sigma: float = Field(1.0, gt=0)
    M: float = Field(1.0, gt=0)
    r: float = Field(1.0, gt=0)
    d: int = Field(1, ge=1)
    B: int = Field(1, ge=1)
    criterion: SegmentCriterion = SegmentCriterion.MAX_DISTANCE


class LipschitzSegmentationRequest(BaseModel):
    """Либо готовая матрица ‖F_i − F_j‖_∞, либо путь μ* задачи linear-opt"""

    distances: list[list[float]] | None = None
    mu_path: list[list[float]] | None = None
    sigma: float = Field(4.0, gt=0)
    d: int = Field(1, ge=1)
    B: int = Field(1, ge=1)
    criterion: SegmentCriterion = SegmentCriterion.MAX_DISTANCE

    @model_validator(mode="after")
    def check_source(self):
        if (self.distances is None) == (self.mu_path is None):
            raise ValueError("Нужно передать ровно одно из полей distances и mu_path")
        return self


class SegmentationOut(BaseModel):
    boundaries: list[int]
    certificates: list[float]
    thresholds: list[float]
    J: int

    model_config = ConfigDict(from_attributes=True)
