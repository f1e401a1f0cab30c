from pydantic import BaseModel, ConfigDict, Field

from src.models.types import Regularity


class LowerBoundRequest(BaseModel):
    regime: Regularity
    boundaries: list[int] = Field(min_length=2)
    jumps: list[float]
    d: int = Field(1, ge=1)
    B: int = Field(1, ge=1)


class CertificateRequest(BaseModel):
    regime: Regularity
    boundaries: list[int] = Field(min_length=2)
    deltas: list[float]
    horizon: int = Field(ge=2)
    U: float = Field(ge=0)
    c_tau: float = Field(1.0, gt=0)
    alpha: float = Field(0.05, gt=0, le=1)
    d: int = Field(1, ge=1)
    B: int = Field(1, ge=1)
    epsilon: float = Field(0.0, ge=0)
    initial: float = Field(0.0, ge=0)


class BoundCertificateOut(BaseModel):
    U: float
    T: list[float]
    initial: float
    stochastic: float
    drift: float
    total: float

    model_config = ConfigDict(from_attributes=True)


class BoundValue(BaseModel):
    value: float


class CurvePoint(BaseModel):
    n: int
    V: float
    tv_upper: float
    tv_lower: float


class BoundsReport(BaseModel):
    """Эталонные кривые для класса, заданного конфигурацией эксперимента"""

    regime: Regularity
    horizon: int
    curve: list[CurvePoint]
    J: int | None = None
    certificate: BoundCertificateOut | None = None
    class_lower: float | None = None
