import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.config import settings
from src.exceptions import ConfigurationException
from src.models.types import Regularity


class PathMetric(StrEnum):
    L2 = "l2"
    SCALED_L1 = "l1/d"


def total_variation(values: ArrayLike, metric: PathMetric = PathMetric.L2) -> float:
    path = np.asarray(values, dtype=np.float64)
    if path.ndim == 1:
        path = path[:, None]
    steps = np.diff(path, axis=0)
    if metric == PathMetric.SCALED_L1:
        return float(np.abs(steps).sum() / path.shape[1])
    return float(np.linalg.norm(steps, axis=1).sum())


@dataclass(frozen=True, eq=False)
class ParameterPath:
    """θ*_1..θ*_N (или μ*_1..μ*_N) с объявленной полной вариацией"""

    values: NDArray[np.float64]
    declared_tv: float
    kind: str
    boundaries: tuple[int, ...] | None = None
    metric: PathMetric = PathMetric.L2
    jumps: tuple[float, ...] | None = field(default=None, repr=False)

    @classmethod
    def from_values(
        cls,
        values: ArrayLike,
        kind: str,
        boundaries: Sequence[int] | None = None,
        metric: PathMetric = PathMetric.L2,
        jumps: Sequence[float] | None = None,
    ) -> "ParameterPath":
        path = np.asarray(values, dtype=np.float64)
        if path.ndim == 1:
            path = path[:, None]
        path.setflags(write=False)
        return cls(
            path,
            total_variation(path, metric),
            kind,
            tuple(boundaries) if boundaries is not None else None,
            metric,
            tuple(jumps) if jumps is not None else None,
        )

    @property
    def horizon(self) -> int:
        return self.values.shape[0]

    @property
    def dimension(self) -> int:
        return self.values.shape[1]

    @property
    def realized_tv(self) -> float:
        return total_variation(self.values, self.metric)


class ZigzagKind(StrEnum):
    LARGE = "large"
    SMALL = "small"
    UNEVEN = "uneven"
    ALTERNATING = "alternating"


def gen_zigzag(kind: ZigzagKind | str, N: int, u: float | None = None) -> ParameterPath:
    """Четыре шаблона нестационарности при d = B = 1 на Ω = [0, 1]"""
    kind = ZigzagKind(kind)
    if N < 4:
        raise ConfigurationException(f"Нужно N ≥ 4, получено {N}")
    values = np.zeros(N)
    step = N ** (-1 / 2)
    match kind:
        case ZigzagKind.SMALL:
            for n in range(1, N):
                values[n] = values[n - 1] - (-1) ** n * step
        case ZigzagKind.LARGE:
            block = max(1, math.floor(N ** (1 / 3) + 1e-9))
            blocks = max(1, (N - 1) // block)
            for n in range(1, N):
                # последний блок забирает остаток шагов
                index = min(math.ceil(n / block), blocks)
                values[n] = values[n - 1] + (step if index % 2 == 1 else -step)
        case ZigzagKind.UNEVEN:
            jumps = math.floor(math.sqrt(N) + 1e-9)
            for n in range(1, N):
                values[n] = values[n - 1] if n > jumps else n % 2
        case ZigzagKind.ALTERNATING:
            if u is None:
                raise ConfigurationException("Для alternating нужна высота ступени u")
            if not N ** (-1 / 2) - 1e-12 <= u <= N ** (-1 / 6) + 1e-12:
                raise ConfigurationException(
                    f"Нужно N^(-1/2) ≤ u ≤ N^(-1/6), получено u={u} при N={N}"
                )
            block = max(1, math.floor(math.sqrt(N) * u + 1e-9))
            for n in range(1, N):
                k, offset = divmod(n, block)
                values[n] = values[n - 1] - (-1) ** k * u if offset == 0 else values[n - 1]
    return ParameterPath.from_values(np.clip(values, 0.0, 1.0), f"zigzag-{kind}")


class StepLaw(StrEnum):
    UNIFORM = "uniform"
    DIRICHLET = "dirichlet"
    SPARSE = "sparse"


def _step_lengths(
    rng: np.random.Generator, steps: int, V: float, cap: float, law: StepLaw
) -> NDArray[np.float64]:
    match law:
        case StepLaw.UNIFORM:
            weights = rng.uniform(size=steps)
        case StepLaw.DIRICHLET:
            weights = rng.dirichlet(np.ones(steps))
        case StepLaw.SPARSE:
            weights = np.zeros(steps)
            active = rng.choice(steps, size=max(1, steps // 10), replace=False)
            weights[active] = rng.uniform(size=active.shape[0])
    lengths = V * weights / weights.sum()
    # шаг не длиннее радиуса: излишек раздаётся непереполненным шагам
    for _ in range(steps):
        over = lengths > cap
        if not np.any(over):
            break
        excess = float(np.sum(lengths[over] - cap))
        lengths[over] = cap
        room = cap - lengths
        if room.sum() <= 0:
            break
        lengths += excess * room / room.sum()
    return lengths


def _random_direction(rng: np.random.Generator, d: int) -> NDArray[np.float64]:
    direction = rng.standard_normal(d)
    norm = float(np.linalg.norm(direction))
    return direction / norm if norm > 0 else np.eye(d)[0]


def gen_tv_budget(
    N: int,
    V: float,
    step_law: StepLaw | str = StepLaw.UNIFORM,
    seed: int = 0,
    d: int = 1,
    radius: float = 1.0,
) -> ParameterPath:
    """Случайный путь в шаре B(0, radius) с полной вариацией ровно V"""
    if N < 2 or V < 0 or radius <= 0:
        raise ConfigurationException(f"Нужны N ≥ 2, V ≥ 0 и radius > 0, получено N={N}, V={V}")
    if V > (N - 1) * radius:
        raise ConfigurationException(f"Нужно V ≤ (N − 1)·radius = {(N - 1) * radius}, получено {V}")
    rng = np.random.default_rng(seed)
    values = np.zeros((N, d))
    if V == 0:
        return ParameterPath.from_values(values, "tv-budget")

    lengths = _step_lengths(rng, N - 1, V, radius, StepLaw(step_law))
    travelled = 0.0
    for n in range(1, N):
        length = lengths[n - 1] if n < N - 1 else max(V - travelled, 0.0)
        current = values[n - 1]
        proposal = current + length * _random_direction(rng, d)
        if np.linalg.norm(proposal) > radius:
            # к центру шара: |‖θ‖ − length| ≤ radius
            norm = float(np.linalg.norm(current))
            toward = -current / norm if norm > 0 else _random_direction(rng, d)
            proposal = current + length * toward
        values[n] = proposal
        travelled += float(np.linalg.norm(values[n] - current))
    return ParameterPath.from_values(values, "tv-budget")


def gen_constant(N: int, value: ArrayLike = 0.0) -> ParameterPath:
    point = np.atleast_1d(np.asarray(value, dtype=np.float64))
    if N < 1:
        raise ConfigurationException(f"Нужно N ≥ 1, получено {N}")
    return ParameterPath.from_values(np.tile(point, (N, 1)), "constant")


def _uniform_in_ball(
    rng: np.random.Generator, center: NDArray[np.float64], radius: float
) -> NDArray[np.float64]:
    while True:
        candidate = rng.uniform(-1.0, 1.0, size=center.shape[0])
        if candidate @ candidate <= 1.0:
            return center + radius * candidate


def _shrunk_ball_center(theta: NDArray[np.float64], radius: float) -> NDArray[np.float64]:
    """θ − (r/(4‖θ‖))·θ с соглашением 0/0 = 0"""
    norm = float(np.linalg.norm(theta))
    return theta - radius / (4 * norm) * theta if norm > 0 else theta.copy()


def _validate_class(boundaries: Sequence[int], jumps: Sequence[float]) -> tuple[int, ...]:
    points = (0, *boundaries) if boundaries[0] != 0 else tuple(boundaries)
    errors = []
    if any(a >= b for a, b in zip(points, points[1:])):
        errors.append(f"границы должны строго возрастать: {points}")
    if len(jumps) != len(points) - 1:
        errors.append(f"нужно {len(points) - 1} скачков r_j, передано {len(jumps)}")
    if any(not 0 <= r <= 1 for r in jumps):
        errors.append("скачки r_j должны лежать в [0, 1]")
    if errors:
        raise ConfigurationException("; ".join(errors))
    return points


def _signed_step(
    rng: np.random.Generator, current: NDArray[np.float64], size: float
) -> NDArray[np.float64]:
    """Шаг ±size по каждой координате, развёрнутый внутрь B_∞(0, 1/2)"""
    signs = rng.choice([-1.0, 1.0], size=current.shape[0])
    proposal = current + signs * size
    outside = np.abs(proposal) > 0.5
    proposal[outside] = current[outside] - signs[outside] * size
    return proposal


def gen_hard_instance(
    regime: Regularity | str,
    boundaries: Sequence[int],
    jumps: Sequence[float],
    gamma: float = 1.0,
    d: int = 1,
    B: int = 1,
    c: float | None = None,
    seed: int = 0,
) -> ParameterPath:
    """Марковская конструкция трудных экземпляров с кусками (N_{j−1}, N_j] и скачками r_j.

    boundaries - N_1 < … < N_J = N − 1.
    """
    regime = Regularity(regime)
    c = settings.HARD_INSTANCE_C if c is None else c
    points = _validate_class(boundaries, jumps)
    if not 0 <= gamma <= 1:
        raise ConfigurationException(f"Нужно 0 ≤ γ ≤ 1, получено {gamma}")
    N = points[-1] + 1
    # N_{J+1} = N: последний период образует отдельный кусок
    edges = (*points, N)
    radii = (1.0, *jumps)
    rng = np.random.default_rng(seed)
    values = np.zeros((N, d))
    previous = np.zeros(d)

    if regime == Regularity.STRONGLY_CONVEX:
        if d > 3:
            raise ConfigurationException(f"Выборка из шара реализована для d ≤ 3, получено d={d}")
        for j in range(len(edges) - 1):
            first, last = edges[j] + 1, edges[j + 1]
            start = _uniform_in_ball(rng, _shrunk_ball_center(previous, radii[j]), radii[j] / 4)
            values[first - 1] = start
            length = last - edges[j]
            if length >= 2:
                inner = min(math.sqrt(8 * gamma * c**2 * d / (B * length)), 1.0)
                center = _shrunk_ball_center(start, inner)
                for n in range(first + 1, last + 1):
                    values[n - 1] = _uniform_in_ball(rng, center, inner / 4)
            previous = values[last - 1]
        return ParameterPath.from_values(values, f"hard-{regime}", points[1:], jumps=jumps)

    for j in range(len(edges) - 1):
        first, last = edges[j] + 1, edges[j + 1]
        values[first - 1] = _signed_step(rng, previous, radii[j] / 2)
        length = last - edges[j]
        if length >= 2:
            size = min(gamma * math.sqrt(d / (B * length)) / (length - 1), 0.5)
            for n in range(first + 1, last + 1):
                values[n - 1] = _signed_step(rng, values[n - 2], size)
        previous = values[last - 1]
    return ParameterPath.from_values(
        values, f"hard-{regime}", points[1:], PathMetric.SCALED_L1, jumps
    )


@dataclass(frozen=True)
class MembershipReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_class_membership(
    path: ArrayLike,
    regime: Regularity | str,
    boundaries: Sequence[int],
    jumps: Sequence[float],
    d: int,
    B: int,
    c: float | None = None,
    tolerance: float = 1e-12,
) -> MembershipReport:
    """Независимая проверка принадлежности пути классу 𝒫(N, r) по сырым значениям"""
    regime = Regularity(regime)
    c = settings.HARD_INSTANCE_C if c is None else c
    values = np.asarray(path, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    points = _validate_class(boundaries, jumps)
    violations = []
    if points[-1] != values.shape[0] - 1:
        violations.append(f"N_J = {points[-1]} ≠ N − 1 = {values.shape[0] - 1}")
        return MembershipReport(tuple(violations))

    if regime == Regularity.STRONGLY_CONVEX:
        outside = np.flatnonzero(np.linalg.norm(values, axis=1) > 0.5 + tolerance)
        violations.extend(f"‖θ*_{n + 1}‖ > 1/2" for n in outside)
    else:
        outside = np.flatnonzero(np.max(np.abs(values), axis=1) > 0.5 + tolerance)
        violations.extend(f"‖μ*_{n + 1}‖_∞ > 1/2" for n in outside)

    for j in range(1, len(points)):
        low, high = points[j - 1], points[j]
        segment = values[low:high]
        length = high - low
        if regime == Regularity.STRONGLY_CONVEX:
            spread = np.linalg.norm(segment[:, None, :] - segment[None, :, :], axis=2).max()
            budget = math.sqrt(8 * c**2 * d / (B * length))
            jump = float(np.linalg.norm(values[high] - values[high - 1]))
        else:
            spread = np.abs(np.diff(segment, axis=0)).sum() / d
            budget = math.sqrt(d / (B * length))
            jump = float(np.abs(values[high] - values[high - 1]).sum() / d)
        if spread > budget + tolerance:
            violations.append(f"кусок {j}: изменчивость {spread:.6g} > {budget:.6g}")
        if jump > jumps[j - 1] + tolerance:
            violations.append(f"скачок после N_{j} = {high}: {jump:.6g} > r_{j} = {jumps[j - 1]}")
    return MembershipReport(tuple(violations))
