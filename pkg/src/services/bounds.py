import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from src.exceptions import ConfigurationException
from src.models.types import Regularity
from src.services.segmentation import Segmentation


@dataclass(frozen=True)
class BoundCertificate:
    U: float
    T: tuple[float, ...]
    initial: float
    stochastic: float
    drift: float

    @property
    def total(self) -> float:
        return self.initial + self.stochastic + self.drift


def cumulative_threshold(tau: Callable[[int], float], U: float, n: int) -> float:
    """T(n) = Σ_{i ≤ n} min{τ(N, i), U}"""
    return float(sum(min(tau(i), U) for i in range(1, n + 1)))


def regret_bound_certificate(
    segmentation: Segmentation,
    deltas: Sequence[float],
    tau: Callable[[int], float],
    U: float,
    epsilon: float = 0.0,
    C: float = 2.0,
    initial: float = 0.0,
) -> BoundCertificate:
    """[F₁(θ₁) − inf F₁] + 3e^{3ε}C²·Σ_j T(N_j − N_{j−1}) + e^ε·Σ_j δ_j

    tau(i) - порог τ(N, i) при фиксированном горизонте N.
    """
    if len(deltas) != segmentation.J:
        raise ConfigurationException(
            f"Нужно по одному δ_j на кусок: {segmentation.J} кусков, передано {len(deltas)}"
        )
    if U < 0 or epsilon < 0 or C < 0 or initial < 0 or any(delta < 0 for delta in deltas):
        raise ConfigurationException("Все параметры сертификата должны быть неотрицательны")
    T = tuple(cumulative_threshold(tau, U, length) for length in segmentation.lengths)
    return BoundCertificate(
        U=U,
        T=T,
        initial=initial,
        stochastic=3 * math.exp(3 * epsilon) * C**2 * sum(T),
        drift=math.exp(epsilon) * float(sum(deltas)),
    )


def tv_regret_reference(regime: Regularity, V: float, N: int, d: int, B: int) -> float:
    """Эталонная кривая верхней оценки регрета через полную вариацию, константы равны 1"""
    if V < 0:
        raise ConfigurationException(f"Полная вариация должна быть ≥ 0, получено {V}")
    ratio = d / B
    if regime == Regularity.STRONGLY_CONVEX:
        return 1 + min(ratio, N) + N ** (1 / 3) * (V * ratio) ** (2 / 3) + V
    return 1 + math.sqrt(N * ratio) + N ** (2 / 3) * (V * ratio) ** (1 / 3) + V


def lower_bound_reference(
    regime: Regularity,
    boundaries: Sequence[int],
    jumps: Sequence[float],
    d: int,
    B: int,
) -> float:
    """Нижняя оценка минимаксного регрета на классе с заданными кусками и скачками r_j"""
    lengths = np.diff(np.asarray(boundaries, dtype=np.int64))
    if boundaries[0] != 0 or np.any(lengths <= 0):
        raise ConfigurationException(f"Границы должны строго возрастать от 0: {tuple(boundaries)}")
    if len(jumps) != len(lengths):
        raise ConfigurationException(
            f"Нужно по одному r_j на кусок: {len(lengths)} кусков, передано {len(jumps)}"
        )
    r = np.asarray(jumps, dtype=np.float64)
    if np.any(r < 0) or np.any(r > 1):
        raise ConfigurationException("Скачки r_j должны лежать в [0, 1]")
    ratio = d / B
    if regime == Regularity.STRONGLY_CONVEX:
        return 1 + float(np.minimum(ratio, lengths - 1).sum()) + float(np.sum(r**2))
    return 1 + float(np.minimum(np.sqrt(ratio * lengths), np.maximum(lengths - 2, 0)).sum()) + float(
        r.sum()
    )


def tv_lower_bound_reference(regime: Regularity, V: float, N: int, d: int, B: int) -> float:
    if V < 0:
        raise ConfigurationException(f"Полная вариация должна быть ≥ 0, получено {V}")
    ratio = d / B
    if regime == Regularity.STRONGLY_CONVEX:
        return 1 + ratio + N ** (1 / 3) * (V * ratio) ** (2 / 3)
    return 1 + math.sqrt(N * ratio) + N ** (2 / 3) * (V * ratio) ** (1 / 3)
