import logging
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from src.exceptions import DimensionMismatchException
from src.models.empirical import EmpiricalLoss
from src.models.feasible_sets import FeasibleSet
from src.models.types import ParamVector, Regularity


@dataclass(frozen=True)
class SolverBudget:
    regime: Regularity
    M: float
    sigma: float
    A: float = 1.0
    max_iterations: int = 200
    step_rule: Literal["fixed", "decaying"] | None = None
    step_size: float | None = None
    closed_form: bool = True

    @property
    def resolved_step_rule(self) -> str:
        if self.step_rule is not None:
            return self.step_rule
        return "fixed" if self.regime == Regularity.STRONGLY_CONVEX else "decaying"

    def target_gap(self, n: int, k: int, d: int, B: int) -> float:
        if self.regime == Regularity.STRONGLY_CONVEX:
            return self.A * self.M * self.sigma * d * math.log(d + B * n) / (B * k)
        return self.A * self.sigma * math.sqrt(d * math.log(1 + B * n) / (B * k))


@dataclass(frozen=True, eq=False)
class SolveResult:
    theta: ParamVector
    objective: float
    gap_bound: float | None
    iterations: int
    target_gap: float = 0.0
    history: tuple[float, ...] = field(default=(), repr=False)

    @property
    def certified(self) -> bool:
        return self.gap_bound is not None


def solver_budget(
    regime: Regularity,
    M: float,
    sigma: float,
    A: float = 1.0,
    max_iterations: int = 200,
    closed_form: bool = True,
) -> SolverBudget:
    return SolverBudget(
        regime=regime, M=M, sigma=sigma, A=A, max_iterations=max_iterations, closed_form=closed_form
    )


def minimize_empirical(
    loss: EmpiricalLoss,
    feasible_set: FeasibleSet,
    budget: SolverBudget,
    n: int | None = None,
    warm_start: ParamVector | None = None,
) -> SolveResult:
    if loss.dimension != feasible_set.dimension:
        raise DimensionMismatchException(
            f"Размерность потерь {loss.dimension} ≠ размерности Ω {feasible_set.dimension}"
        )
    target = 0.0
    if n is not None:
        target = budget.target_gap(n, loss.window, loss.dimension, loss.batch_size)

    if budget.closed_form:
        theta = loss.model.window_minimizer(loss.stacked, feasible_set)
        if theta is not None:
            objective = loss.evaluate(theta)
            return SolveResult(theta, objective, 0.0, 0, target, (objective,))

    start = feasible_set.project(feasible_set.center if warm_start is None else warm_start)
    smoothness = loss.model.smoothness(loss.stacked)
    if budget.regime == Regularity.STRONGLY_CONVEX and smoothness is not None:
        result = _projected_gradient(loss, feasible_set, budget, start, target, smoothness)
    else:
        result = _projected_subgradient(loss, feasible_set, budget, start, target)

    if not result.certified:
        logging.debug(
            f"⚠️  Решение окна k={loss.window} не сертифицировано "
            f"за {result.iterations} итераций (цель {target:.3g})"
        )
    return result


def _projected_gradient(
    loss: EmpiricalLoss,
    feasible_set: FeasibleSet,
    budget: SolverBudget,
    start: ParamVector,
    target: float,
    smoothness: float,
) -> SolveResult:
    step = 1.0 / smoothness
    if budget.step_size is not None:
        step = min(budget.step_size, step)
    curvature = loss.model.curvature(loss.stacked, feasible_set)

    theta = start
    objective = loss.evaluate(theta)
    history = [objective]
    gap = math.inf
    iterations = 0
    for iterations in range(1, budget.max_iterations + 1):
        following = feasible_set.project(theta - step * loss.subgradient(theta))
        mapping = (theta - following) / step
        theta = following
        objective = loss.evaluate(theta)
        history.append(objective)
        if not np.any(mapping):
            gap = 0.0
            break
        if curvature is not None:
            # f(x⁺) − f* ≤ ‖G‖²/(2ρ) для шага не больше 1/L
            gap = float(mapping @ mapping) / (2 * curvature)
            if gap <= target:
                break

    certified = gap <= target
    return SolveResult(
        theta, objective, gap if certified else None, iterations, target, tuple(history)
    )


def _projected_subgradient(
    loss: EmpiricalLoss,
    feasible_set: FeasibleSet,
    budget: SolverBudget,
    start: ParamVector,
    target: float,
) -> SolveResult:
    bound = loss.model.gradient_bound(loss.stacked) or 1.0
    initial_step = budget.step_size or max(feasible_set.diameter, 1e-12) / bound
    fixed = budget.resolved_step_rule == "fixed"

    theta = start
    best_theta, best_objective = theta, loss.evaluate(theta)
    history = [best_objective]
    iterations = 0
    for iterations in range(1, budget.max_iterations + 1):
        direction = loss.subgradient(theta)
        if not np.any(direction):
            # нулевой субградиент: точка минимума
            return SolveResult(theta, loss.evaluate(theta), 0.0, iterations, target, tuple(history))
        step = initial_step if fixed else initial_step / math.sqrt(iterations)
        theta = feasible_set.project(theta - step * direction)
        objective = loss.evaluate(theta)
        history.append(objective)
        if objective < best_objective:
            best_theta, best_objective = theta, objective

    return SolveResult(best_theta, best_objective, None, iterations, target, tuple(history))
