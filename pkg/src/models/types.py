from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.exceptions import ContractViolationException, DimensionMismatchException

ParamVector = NDArray[np.float64]


class Regularity(StrEnum):
    STRONGLY_CONVEX = "strongly-convex"
    LIPSCHITZ = "lipschitz"


@dataclass(frozen=True)
class RegularityConstants:
    """Константы регулярности семейства задач.

    Значения носят характер порядка величины: в примерах они определены
    с точностью до универсальных множителей.
    """

    M: float
    sigma: float
    rho: float | None = None
    L: float | None = None
    r: float | None = None
    lam: float | None = None

    @property
    def kappa(self) -> float | None:
        if self.rho is None or self.L is None:
            return None
        return self.L / self.rho


def as_param_vector(x: ArrayLike, d: int | None = None) -> ParamVector:
    vector = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if vector.ndim != 1:
        raise DimensionMismatchException(f"Ожидался вектор, получен массив формы {vector.shape}")
    if d is not None and vector.shape[0] != d:
        raise DimensionMismatchException(
            f"Размерность {vector.shape[0]} не совпадает с размерностью задачи {d}"
        )
    if not np.all(np.isfinite(vector)):
        raise ContractViolationException("Вектор параметров содержит NaN или Inf")
    return vector
