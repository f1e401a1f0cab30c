from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from src.exceptions import ConfigurationException
from src.models.types import ParamVector, as_param_vector


class FeasibleSet(ABC):
    """Выпуклое множество Ω с евклидовой проекцией в замкнутой форме"""

    kind: str

    @property
    @abstractmethod
    def dimension(self) -> int: ...

    @property
    @abstractmethod
    def diameter(self) -> float: ...

    @abstractmethod
    def _project(self, x: ParamVector) -> ParamVector: ...

    @abstractmethod
    def sup_norm(self) -> float:
        """sup ‖θ‖₂ по Ω"""

    def project(self, x: ArrayLike) -> ParamVector:
        return self._project(as_param_vector(x, self.dimension))

    def contains(self, x: ArrayLike, atol: float = 1e-12) -> bool:
        point = as_param_vector(x, self.dimension)
        return bool(np.linalg.norm(point - self._project(point)) <= atol)


@dataclass(frozen=True, eq=False)
class EuclideanBall(FeasibleSet):
    center: ParamVector
    radius: float
    kind: str = field(default="euclidean-ball", init=False)

    def __post_init__(self):
        object.__setattr__(self, "center", as_param_vector(self.center))
        if self.radius < 0:
            raise ConfigurationException(f"Радиус шара должен быть ≥ 0, получено {self.radius}")

    @classmethod
    def centered(cls, d: int, radius: float) -> "EuclideanBall":
        return cls(np.zeros(d), radius)

    @property
    def dimension(self) -> int:
        return self.center.shape[0]

    @property
    def diameter(self) -> float:
        return 2 * self.radius

    def _project(self, x: ParamVector) -> ParamVector:
        offset = x - self.center
        distance = float(np.linalg.norm(offset))
        if distance <= self.radius:
            return x.copy()
        return self.center + offset * (self.radius / distance)

    def sup_norm(self) -> float:
        return float(np.linalg.norm(self.center)) + self.radius


@dataclass(frozen=True, eq=False)
class Box(FeasibleSet):
    lower: ParamVector
    upper: ParamVector
    kind: str = field(default="box", init=False)

    def __post_init__(self):
        lower = as_param_vector(self.lower)
        upper = as_param_vector(self.upper, lower.shape[0])
        if np.any(lower > upper):
            raise ConfigurationException("Нижняя граница бокса больше верхней")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, d: int, half_width: float) -> "Box":
        return cls(np.full(d, -half_width), np.full(d, half_width))

    @property
    def dimension(self) -> int:
        return self.lower.shape[0]

    @property
    def center(self) -> ParamVector:
        return (self.lower + self.upper) / 2

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(self.upper - self.lower))

    def _project(self, x: ParamVector) -> ParamVector:
        return np.clip(x, self.lower, self.upper)

    def sup_norm(self) -> float:
        return float(np.linalg.norm(np.maximum(np.abs(self.lower), np.abs(self.upper))))


@dataclass(frozen=True, eq=False)
class Interval(Box):
    kind: str = field(default="interval", init=False)

    def __post_init__(self):
        super().__post_init__()
        if self.lower.shape[0] != 1:
            raise ConfigurationException("Интервал задаётся только в размерности 1")

    @classmethod
    def between(cls, lower: float, upper: float) -> "Interval":
        return cls(np.array([lower]), np.array([upper]))


def project(feasible_set: FeasibleSet, x: ArrayLike) -> ParamVector:
    return feasible_set.project(x)
