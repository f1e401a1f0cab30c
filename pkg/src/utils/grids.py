import numpy as np
from numpy.typing import NDArray

from src.config import settings
from src.exceptions import ConfigurationException
from src.models.feasible_sets import Box, EuclideanBall, FeasibleSet


def axis_points(lower: float, upper: float, points: int) -> NDArray[np.float64]:
    if points < 2:
        raise ConfigurationException(f"На оси нужно хотя бы 2 точки, получено {points}")
    return np.linspace(lower, upper, points)


def make_grid(feasible_set: FeasibleSet, points: int | None = None) -> NDArray[np.float64]:
    """Равномерная сетка точек Ω формы (P, d); для шара берутся точки куба, попавшие в шар"""
    points = points or settings.GRID_POINTS
    d = feasible_set.dimension
    if d > settings.MAX_GRID_AXES:
        raise ConfigurationException(
            f"Сетка строится не более чем по {settings.MAX_GRID_AXES} осям, получено d={d}"
        )
    if isinstance(feasible_set, Box):
        lower, upper = feasible_set.lower, feasible_set.upper
    elif isinstance(feasible_set, EuclideanBall):
        lower = feasible_set.center - feasible_set.radius
        upper = feasible_set.center + feasible_set.radius
    else:
        raise ConfigurationException(f"Сетка для множества {feasible_set.kind} не поддерживается")

    axes = [axis_points(lower[i], upper[i], points) for i in range(d)]
    grid = np.stack([axis.ravel() for axis in np.meshgrid(*axes, indexing="ij")], axis=1)
    if isinstance(feasible_set, EuclideanBall):
        inside = np.linalg.norm(grid - feasible_set.center, axis=1) <= feasible_set.radius
        grid = grid[inside]
    return grid
