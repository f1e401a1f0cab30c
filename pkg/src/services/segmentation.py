import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.exceptions import ConfigurationException, ContractViolationException
from src.models.types import Regularity


class SegmentCriterion(StrEnum):
    MAX_DISTANCE = "max-distance"
    VARIATION = "variation"


@dataclass(frozen=True)
class Segmentation:
    """Границы 0 = N_0 < N_1 < … < N_J = N − 1 и реализованная изменчивость каждого куска"""

    boundaries: tuple[int, ...]
    certificates: tuple[float, ...]
    thresholds: tuple[float, ...]

    def __post_init__(self):
        if self.boundaries[0] != 0 or any(
            a >= b for a, b in zip(self.boundaries, self.boundaries[1:])
        ):
            raise ContractViolationException(f"Границы должны строго возрастать от 0: {self.boundaries}")

    @property
    def J(self) -> int:
        return len(self.boundaries) - 1

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.boundaries, self.boundaries[1:]))

    def segment_of(self, period: int) -> int:
        """Номер j куска (N_{j−1}, N_j], содержащего период"""
        return int(np.searchsorted(self.boundaries, period))


def _as_path(path: ArrayLike) -> NDArray[np.float64]:
    values = np.asarray(path, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    return values


def segment_max_distance(path: ArrayLike, start: int, end: int) -> float:
    """max ‖θ*_a − θ*_b‖ по периодам start ≤ a, b ≤ end (нумерация с 1)"""
    values = _as_path(path)[start - 1 : end]
    distances = np.linalg.norm(values[:, None, :] - values[None, :, :], axis=2)
    return float(distances.max())


def segment_variation(path: ArrayLike, start: int, end: int) -> float:
    """Σ ‖θ*_{i+1} − θ*_i‖ по start ≤ i < end"""
    values = _as_path(path)[start - 1 : end]
    return float(np.linalg.norm(np.diff(values, axis=0), axis=1).sum())


def strongly_convex_threshold(
    length: int, rho: float, sigma: float, M: float, r: float, d: int, B: int
) -> float:
    return math.sqrt(2 * M * sigma / rho * max(sigma / (rho * r), 1.0) * d / (B * length))


def lipschitz_threshold(length: int, sigma: float, d: int, B: int) -> float:
    return sigma / 2 * math.sqrt(d / (B * length))


def _greedy(
    periods: int,
    reach: Callable[[int, int], float],
    steps: Callable[[int], float],
    limit: Callable[[int], float],
    criterion: SegmentCriterion,
) -> Segmentation:
    """Жадное разбиение периодов 1..periods: кусок растёт, пока его изменчивость ≤ порога.

    reach(start, b) - наибольшее расстояние от периода b до периодов start..b − 1,
    steps(i) - расстояние между периодами i и i + 1.
    """
    boundaries, certificates, thresholds = [0], [], []
    start = 1
    while start <= periods:
        end, measure = start, 0.0
        while end < periods:
            candidate = end + 1
            if criterion == SegmentCriterion.VARIATION:
                extended = measure + steps(end)
            else:
                extended = max(measure, reach(start, candidate))
            if extended > limit(candidate - start + 1):
                break
            end, measure = candidate, extended
        boundaries.append(end)
        certificates.append(measure)
        thresholds.append(limit(end - start + 1))
        start = end + 1
    return Segmentation(tuple(boundaries), tuple(certificates), tuple(thresholds))


def segment_greedy_strongly_convex(
    path: ArrayLike,
    rho: float,
    sigma: float,
    M: float,
    r: float,
    d: int,
    B: int,
    criterion: SegmentCriterion | str = SegmentCriterion.MAX_DISTANCE,
) -> Segmentation:
    """Разбиение по пути минимизаторов θ*_1..θ*_N; покрывает периоды 1..N − 1"""
    values = _as_path(path)
    if values.shape[0] < 2:
        raise ConfigurationException(f"Нужен путь длины N ≥ 2, получено {values.shape[0]}")
    if rho <= 0 or r <= 0:
        raise ConfigurationException(f"Нужны ρ > 0 и r > 0, получено ρ={rho}, r={r}")

    def reach(start: int, b: int) -> float:
        return float(np.linalg.norm(values[start - 1 : b - 1] - values[b - 1], axis=1).max())

    return _greedy(
        values.shape[0] - 1,
        reach,
        lambda i: float(np.linalg.norm(values[i] - values[i - 1])),
        lambda length: strongly_convex_threshold(length, rho, sigma, M, r, d, B),
        SegmentCriterion(criterion),
    )


def segment_greedy_lipschitz(
    distances: ArrayLike,
    sigma: float,
    d: int,
    B: int,
    criterion: SegmentCriterion | str = SegmentCriterion.MAX_DISTANCE,
) -> Segmentation:
    """Разбиение по матрице ‖F_i − F_j‖_∞ размера N × N; покрывает периоды 1..N − 1"""
    matrix = np.asarray(distances, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ContractViolationException(f"Ожидалась квадратная матрица, получено {matrix.shape}")
    if matrix.shape[0] < 2:
        raise ConfigurationException(f"Нужно N ≥ 2 функций, получено {matrix.shape[0]}")

    def reach(start: int, b: int) -> float:
        return float(matrix[start - 1 : b - 1, b - 1].max())

    return _greedy(
        matrix.shape[0] - 1,
        reach,
        lambda i: float(matrix[i - 1, i]),
        lambda length: lipschitz_threshold(length, sigma, d, B),
        SegmentCriterion(criterion),
    )


def linear_opt_sup_distances(mu_path: ArrayLike) -> NDArray[np.float64]:
    """‖F_μ − F_ν‖_∞ на Ω = B_∞(0, 1/√d) для F_μ(θ) = 2μᵀθ/√d, то есть 2‖μ − ν‖₁/d"""
    values = _as_path(mu_path)
    d = values.shape[1]
    return 2 * np.abs(values[:, None, :] - values[None, :, :]).sum(axis=2) / d


def tv_to_J_bound(
    regime: Regularity,
    V: float,
    N: int,
    d: int,
    B: int,
    sigma: float,
    rho: float | None = None,
    M: float | None = None,
    r: float | None = None,
) -> float:
    """Верхняя оценка числа кусков J по полной вариации V"""
    if V < 0:
        raise ConfigurationException(f"Полная вариация должна быть ≥ 0, получено {V}")
    scale = (B * N / d) ** (1 / 3) * V ** (2 / 3)
    if regime == Regularity.STRONGLY_CONVEX:
        if rho is None or M is None or r is None:
            raise ConfigurationException("Для сильно выпуклого случая нужны ρ, M и r")
        return 1 + (rho / (M * sigma * max(sigma / (rho * r), 1.0))) ** (1 / 3) * scale
    return 1 + 2 / sigma ** (2 / 3) * scale


def tv_to_sqrt_length_bound(V: float, N: int, d: int, B: int, sigma: float) -> float:
    """Σ_j √(N_j − N_{j−1}) ≤ √N + (√2/σ^{1/3})(B/d)^{1/6}N^{2/3}V^{1/3} (липшицев случай)"""
    if V < 0:
        raise ConfigurationException(f"Полная вариация должна быть ≥ 0, получено {V}")
    return math.sqrt(N) + math.sqrt(2) / sigma ** (1 / 3) * (B / d) ** (1 / 6) * N ** (2 / 3) * V ** (
        1 / 3
    )
