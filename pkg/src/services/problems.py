import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.stats import norm

from src.config import settings
from src.exceptions import ConfigurationException
from src.models.batches import SampleBatch
from src.models.empirical import EmpiricalLoss
from src.models.families import (
    GaussianMeanModel,
    LinearOptModel,
    LinearRegressionModel,
    LogisticRegressionModel,
    NewsvendorModel,
    QuantileRegressionModel,
    SvmModel,
    default_feasible_set,
)
from src.models.feasible_sets import FeasibleSet
from src.models.losses import LossModel
from src.models.population import (
    ClosedFormPopulationLoss,
    ExcessEstimate,
    MonteCarloPopulationLoss,
    PopulationLoss,
)
from src.models.types import ParamVector
from src.services.solvers import SolverBudget, minimize_empirical
from src.utils.rng import RngManager


class ProblemFamily(StrEnum):
    GAUSSIAN_MEAN = "gaussian-mean"
    LINEAR_REGRESSION = "linear-regression"
    LOGISTIC_REGRESSION = "logistic-regression"
    LINEAR_OPT = "linear-opt"
    QUANTILE_REGRESSION = "quantile-regression"
    NEWSVENDOR = "newsvendor"
    SVM = "svm"


def make_model(family: ProblemFamily | str, d: int = 1, **params) -> LossModel:
    family = ProblemFamily(family)
    if d < 1:
        raise ConfigurationException(f"Размерность должна быть ≥ 1, получено d={d}")
    match family:
        case ProblemFamily.GAUSSIAN_MEAN:
            return GaussianMeanModel(d, **params)
        case ProblemFamily.LINEAR_REGRESSION:
            return LinearRegressionModel(d, **params)
        case ProblemFamily.LOGISTIC_REGRESSION:
            return LogisticRegressionModel(d, **params)
        case ProblemFamily.LINEAR_OPT:
            return LinearOptModel(d)
        case ProblemFamily.QUANTILE_REGRESSION:
            return QuantileRegressionModel(d, **params)
        case ProblemFamily.NEWSVENDOR:
            return NewsvendorModel(**params)
        case ProblemFamily.SVM:
            return SvmModel(d, **params)


def _validate_path(model: LossModel, path: NDArray[np.float64]) -> list[str]:
    """Нарушения допустимой области параметров; пустой список - путь корректен"""
    errors = []
    M = model.constants.M
    if isinstance(model, LinearOptModel):
        if np.any(np.abs(path) > 0.5 + 1e-12):
            errors.append("для linear-opt нужно ‖μ*_n‖_∞ ≤ 1/2")
    elif isinstance(model, NewsvendorModel):
        if np.any(path < 0) or np.any(path > M):
            errors.append(f"для newsvendor средний спрос должен лежать в [0, M] = [0, {M}]")
    elif np.any(np.linalg.norm(path, axis=1) > M / 4 + 1e-12):
        errors.append(f"для {model.name} нужно ‖θ*_n‖ ≤ M/4 = {M / 4}")
    if isinstance(model, QuantileRegressionModel) and math.isinf(model.noise_quantile):
        errors.append("для quantile-regression нужно 0 < ν < 1")
    return errors


def sample_linear_opt(mu: ArrayLike, d: int, rng: np.random.Generator) -> ParamVector:
    """Одна точка z = √d·x∘y из распределения 𝒫(μ)"""
    parameter = np.asarray(mu, dtype=np.float64).reshape(d)
    if np.any(np.abs(parameter) > 0.5):
        raise ConfigurationException("Нужно ‖μ‖_∞ ≤ 1/2")
    return LinearOptModel(d).sample(rng, 1, parameter)[0]


def newsvendor_population(model: NewsvendorModel, mean: float) -> ClosedFormPopulationLoss:
    """F(θ) = c₁E(θ − z)₊ + c₂E(z − θ)₊ при спросе N(mean, σ₀²)"""
    scale = model.sigma0

    def evaluate(thetas):
        theta = thetas[:, 0]
        if scale == 0:
            return model.c1 * np.maximum(theta - mean, 0) + model.c2 * np.maximum(mean - theta, 0)
        a = (theta - mean) / scale
        overage = (theta - mean) * norm.cdf(a) + scale * norm.pdf(a)
        underage = (mean - theta) * norm.sf(a) + scale * norm.pdf(a)
        return model.c1 * overage + model.c2 * underage

    minimizer = mean + (scale * norm.ppf(model.nu) if scale > 0 else 0.0)
    return ClosedFormPopulationLoss(evaluate, [float(np.clip(minimizer, 0.0, model.constants.M))])


@dataclass(eq=False)
class Environment:
    """Поток пакетов и популяционные потери одной репликации.

    Пакет периода n порождается генератором (seed, replication, n), поэтому
    все алгоритмы внутри репликации видят одни и те же данные.
    """

    model: LossModel
    feasible_set: FeasibleSet
    path: NDArray[np.float64]
    B: int
    seed: int
    replication: int = 0
    mc_samples: int = field(default_factory=lambda: settings.MC_SAMPLES)
    _populations: dict[bytes, PopulationLoss] = field(default_factory=dict, init=False, repr=False)
    _evaluation_noise: NDArray[np.float64] | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.rng = RngManager(self.seed)

    @property
    def horizon(self) -> int:
        return self.path.shape[0]

    def parameter(self, period: int) -> ParamVector:
        return self.path[period - 1]

    def batch(self, period: int) -> SampleBatch:
        generator = self.rng.batch_generator(self.replication, period)
        samples = self.model.sample(generator, self.B, self.parameter(period))
        return SampleBatch(samples, period, self.replication)

    def stream(self) -> list[SampleBatch]:
        return [self.batch(period) for period in range(1, self.horizon + 1)]

    @property
    def evaluation_noise(self) -> NDArray[np.float64]:
        if self._evaluation_noise is None:
            generator = self.rng.evaluation_generator(self.replication)
            self._evaluation_noise = self.model.draw_noise(generator, self.mc_samples)
        return self._evaluation_noise

    def population(self, period: int) -> PopulationLoss:
        parameter = self.parameter(period)
        key = parameter.tobytes()
        if key not in self._populations:
            self._populations[key] = self._build_population(parameter)
        return self._populations[key]

    def excess(self, period: int, theta: ArrayLike) -> ExcessEstimate:
        return self.population(period).excess(np.asarray(theta, dtype=np.float64))

    def _build_population(self, parameter: ParamVector) -> PopulationLoss:
        model = self.model
        if isinstance(model, GaussianMeanModel):
            offset = model.sigma0**2 * model.d / 2
            return ClosedFormPopulationLoss(
                lambda thetas: 0.5 * np.sum((thetas - parameter) ** 2, axis=1) + offset,
                parameter,
            )
        if isinstance(model, LinearRegressionModel):
            covariance, offset = model.covariance, model.sigma0**2 / 2
            return ClosedFormPopulationLoss(
                lambda thetas: 0.5 * np.einsum(
                    "ij,jk,ik->i", thetas - parameter, covariance, thetas - parameter
                )
                + offset,
                parameter,
            )
        if isinstance(model, LinearOptModel):
            direction = 2 * parameter / math.sqrt(model.d)
            return ClosedFormPopulationLoss(
                lambda thetas: thetas @ direction,
                model.window_minimizer(parameter[None, :], self.feasible_set),
            )
        if isinstance(model, NewsvendorModel):
            return newsvendor_population(model, float(parameter[0]))

        samples = model.realize(self.evaluation_noise, parameter)
        if isinstance(model, LogisticRegressionModel):
            minimizer = parameter
        elif isinstance(model, QuantileRegressionModel):
            minimizer = model.population_minimizer(parameter)
        else:
            minimizer = self._numerical_minimizer(samples)
        return MonteCarloPopulationLoss(model, samples, minimizer, self.seed)

    def _numerical_minimizer(self, samples: NDArray[np.float64]) -> ParamVector:
        loss = EmpiricalLoss(self.model, (SampleBatch(samples, 1, self.replication),))
        budget = SolverBudget(
            self.model.regularity,
            self.model.constants.M,
            self.model.constants.sigma,
            max_iterations=10 * settings.SOLVER_MAX_ITERATIONS,
        )
        result = minimize_empirical(loss, self.feasible_set, budget)
        logging.debug(f"Минимизатор F_n найден численно за {result.iterations} итераций")
        return result.theta


def make_environment(
    family: ProblemFamily | str,
    path: ArrayLike,
    B: int,
    seed: int,
    replication: int = 0,
    d: int | None = None,
    feasible_set: FeasibleSet | None = None,
    mc_samples: int | None = None,
    **params,
) -> Environment:
    values = np.asarray(path, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    model = make_model(family, d or values.shape[1], **params)
    errors = []
    if B < 1:
        errors.append(f"размер пакета должен быть ≥ 1, получено B={B}")
    if values.shape[0] < 1:
        errors.append("путь параметров пуст")
    if values.shape[1] != model.parameter_width:
        errors.append(f"ширина пути {values.shape[1]} ≠ размерности параметра {model.parameter_width}")
    else:
        errors.extend(_validate_path(model, values))
    if errors:
        raise ConfigurationException("; ".join(errors))
    return Environment(
        model=model,
        feasible_set=feasible_set or default_feasible_set(model),
        path=values,
        B=B,
        seed=seed,
        replication=replication,
        mc_samples=mc_samples or settings.MC_SAMPLES,
    )
