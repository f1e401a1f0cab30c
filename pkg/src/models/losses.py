from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import NDArray

from src.models.types import ParamVector, Regularity, RegularityConstants

if TYPE_CHECKING:
    from src.models.feasible_sets import FeasibleSet


class LossModel(ABC):
    """Поточечная функция потерь ℓ(θ, z), её субградиент и генератор данных.

    Данные хранятся построчно: samples имеет форму (m, sample_width).
    Генерация разделена на шум (не зависит от параметра периода) и
    реализацию шума при параметре θ*_n, чтобы одна и та же выборка шума
    переиспользовалась между периодами.
    """

    name: str
    regularity: Regularity

    def __init__(self, d: int, constants: RegularityConstants):
        self.d = d
        self.constants = constants

    @property
    def dimension(self) -> int:
        return self.d

    @property
    def sample_width(self) -> int:
        return self.d

    @property
    def parameter_width(self) -> int:
        return self.d

    @abstractmethod
    def losses(self, theta: ParamVector, samples: NDArray[np.float64]) -> NDArray[np.float64]: ...

    @abstractmethod
    def subgradients(
        self, theta: ParamVector, samples: NDArray[np.float64]
    ) -> NDArray[np.float64]: ...

    @abstractmethod
    def draw_noise(self, rng: np.random.Generator, size: int) -> NDArray[np.float64]: ...

    @abstractmethod
    def realize(self, noise: NDArray[np.float64], parameter: ParamVector) -> NDArray[np.float64]: ...

    def loss(self, theta: ParamVector, z: NDArray[np.float64]) -> float:
        return float(self.losses(theta, np.atleast_2d(z))[0])

    def subgradient(self, theta: ParamVector, z: NDArray[np.float64]) -> ParamVector:
        return self.subgradients(theta, np.atleast_2d(z))[0]

    def sample(
        self, rng: np.random.Generator, size: int, parameter: ParamVector
    ) -> NDArray[np.float64]:
        return self.realize(self.draw_noise(rng, size), parameter)

    def window_minimizer(
        self, samples: NDArray[np.float64], feasible_set: "FeasibleSet"
    ) -> ParamVector | None:
        return None

    def smoothness(self, samples: NDArray[np.float64]) -> float | None:
        """Константа Липшица градиента эмпирического риска, если он гладкий"""
        return None

    def curvature(self, samples: NDArray[np.float64], feasible_set: "FeasibleSet") -> float | None:
        """Нижняя оценка сильной выпуклости эмпирического риска на Ω"""
        return None

    def gradient_bound(self, samples: NDArray[np.float64]) -> float:
        """Оценка нормы субградиентов эмпирического риска"""
        return float(np.mean(np.linalg.norm(self.subgradients(np.zeros(self.d), samples), axis=1)))
