from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from src.exceptions import ContractViolationException


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """B точек z_{n,i} периода n; строки массива samples - отдельные точки"""

    samples: NDArray[np.float64]
    period: int
    replication: int = 0

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim == 1:
            samples = samples[:, None]
        if samples.ndim != 2 or samples.shape[0] < 1:
            raise ContractViolationException("Пакет должен содержать хотя бы одну точку")
        if self.period < 1:
            raise ContractViolationException(f"Номер периода должен быть ≥ 1, получено {self.period}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def size(self) -> int:
        return self.samples.shape[0]
