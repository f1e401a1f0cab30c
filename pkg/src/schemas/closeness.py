from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.services.closeness import SufficientCondition


class GridFunctionAdd(BaseModel):
    grid: list[list[float]] | list[float] = Field(min_length=1)
    values: list[float] = Field(min_length=1)

    @model_validator(mode="after")
    def check_lengths(self):
        if len(self.grid) != len(self.values):
            raise ValueError("Число точек сетки и число значений должны совпадать")
        return self


class ClosenessRequest(BaseModel):
    f: GridFunctionAdd
    g: GridFunctionAdd
    epsilon: float = Field(0.0, ge=0)
    delta: float | None = Field(None, ge=0)


class ClosenessResult(BaseModel):
    epsilon: float
    delta_star: float
    close: bool | None = None


class SufficientRequest(BaseModel):
    kind: SufficientCondition
    D0: float | None = Field(None, ge=0)
    D1: float | None = Field(None, ge=0)
    M: float | None = Field(None, gt=0)
    rho: float | None = None
    L: float | None = None
    r: float | None = Field(None, gt=0)
    theta_f: list[float] | None = None
    theta_g: list[float] | None = None


class ClosenessParamsOut(BaseModel):
    epsilon: float
    delta: float

    model_config = ConfigDict(from_attributes=True)
