import math

import numpy as np
from numpy.typing import NDArray
from scipy.special import expit

from src.models.feasible_sets import Box, EuclideanBall, FeasibleSet, Interval
from src.models.losses import LossModel
from src.models.types import ParamVector, Regularity, RegularityConstants


def lower_quantile(values: NDArray[np.float64], nu: float) -> float:
    """Наименьший минимизатор средней check-функции: z_(⌈mν⌉)"""
    ordered = np.sort(values)
    rank = max(math.ceil(ordered.shape[0] * nu - 1e-9), 1)
    return float(ordered[rank - 1])


def check_loss(residuals: NDArray[np.float64], nu: float) -> NDArray[np.float64]:
    return (1 - nu) * np.maximum(-residuals, 0.0) + nu * np.maximum(residuals, 0.0)


def _logistic_curvature(t: NDArray[np.float64]) -> NDArray[np.float64]:
    p = expit(t)
    return p * (1 - p)


class GaussianMeanModel(LossModel):
    name = "gaussian-mean"
    regularity = Regularity.STRONGLY_CONVEX

    def __init__(self, d: int, sigma0: float = 1.0, M: float = 4.0):
        super().__init__(
            d, RegularityConstants(M=M, sigma=sigma0, rho=1.0, L=1.0, r=M / 4, lam=1.0)
        )
        self.sigma0 = sigma0

    def losses(self, theta, samples):
        return 0.5 * np.sum((samples - theta) ** 2, axis=1)

    def subgradients(self, theta, samples):
        return theta - samples

    def draw_noise(self, rng, size):
        return self.sigma0 * rng.standard_normal((size, self.d))

    def realize(self, noise, parameter):
        return noise + parameter

    def window_minimizer(self, samples, feasible_set):
        return feasible_set.project(samples.mean(axis=0))

    def smoothness(self, samples):
        return 1.0

    def curvature(self, samples, feasible_set):
        return 1.0


class LinearRegressionModel(LossModel):
    name = "linear-regression"
    regularity = Regularity.STRONGLY_CONVEX

    def __init__(
        self,
        d: int,
        sigma0: float = 1.0,
        M: float = 4.0,
        covariance: NDArray[np.float64] | None = None,
    ):
        self.covariance = np.eye(d) if covariance is None else np.asarray(covariance, dtype=float)
        eigenvalues = np.linalg.eigvalsh(self.covariance)
        super().__init__(
            d,
            RegularityConstants(
                M=M,
                sigma=(M + 1) * sigma0**2,
                rho=float(eigenvalues[0]),
                L=float(eigenvalues[-1]),
                r=M / 4,
                lam=sigma0,
            ),
        )
        self.sigma0 = sigma0
        self._covariance_factor = np.linalg.cholesky(self.covariance)

    @property
    def sample_width(self) -> int:
        return self.d + 1

    def losses(self, theta, samples):
        residuals = samples[:, -1] - samples[:, :-1] @ theta
        return 0.5 * residuals**2

    def subgradients(self, theta, samples):
        covariates = samples[:, :-1]
        residuals = samples[:, -1] - covariates @ theta
        return -residuals[:, None] * covariates

    def draw_noise(self, rng, size):
        covariates = rng.standard_normal((size, self.d)) @ self._covariance_factor.T
        errors = self.sigma0 * rng.standard_normal((size, 1))
        return np.hstack([covariates, errors])

    def realize(self, noise, parameter):
        covariates = noise[:, :-1]
        return np.hstack([covariates, (covariates @ parameter + noise[:, -1])[:, None]])

    def window_minimizer(self, samples, feasible_set):
        # внутри Ω решение МНК без ограничений является и решением с ограничением
        solution, *_ = np.linalg.lstsq(samples[:, :-1], samples[:, -1], rcond=None)
        if feasible_set.contains(solution):
            return solution
        return None

    def _gram(self, samples):
        covariates = samples[:, :-1]
        return covariates.T @ covariates / covariates.shape[0]

    def smoothness(self, samples):
        return max(float(np.linalg.eigvalsh(self._gram(samples))[-1]), 1e-12)

    def curvature(self, samples, feasible_set):
        smallest = float(np.linalg.eigvalsh(self._gram(samples))[0])
        return smallest if smallest > 1e-12 else None


class LogisticRegressionModel(LossModel):
    name = "logistic-regression"
    regularity = Regularity.STRONGLY_CONVEX

    def __init__(self, d: int, M: float = 4.0, sigma0: float = 1.0):
        rho = float(sigma0**2 * _logistic_curvature(np.array(M * sigma0 / 2)))
        super().__init__(
            d,
            RegularityConstants(M=M, sigma=sigma0, rho=rho, L=sigma0**2, r=M / 4, lam=sigma0),
        )
        self.sigma0 = sigma0

    @property
    def sample_width(self) -> int:
        return self.d + 1

    def losses(self, theta, samples):
        margins = samples[:, :-1] @ theta
        return np.logaddexp(0.0, margins) - samples[:, -1] * margins

    def subgradients(self, theta, samples):
        covariates = samples[:, :-1]
        weights = expit(covariates @ theta) - samples[:, -1]
        return weights[:, None] * covariates

    def draw_noise(self, rng, size):
        covariates = self.sigma0 * rng.standard_normal((size, self.d))
        return np.hstack([covariates, rng.uniform(size=(size, 1))])

    def realize(self, noise, parameter):
        covariates = noise[:, :-1]
        labels = (noise[:, -1] < expit(covariates @ parameter)).astype(np.float64)
        return np.hstack([covariates, labels[:, None]])

    def smoothness(self, samples):
        covariates = samples[:, :-1]
        gram = covariates.T @ covariates / covariates.shape[0]
        return max(0.25 * float(np.linalg.eigvalsh(gram)[-1]), 1e-12)

    def curvature(self, samples, feasible_set):
        covariates = samples[:, :-1]
        # |xᵀθ| ≤ ‖x‖·sup‖θ‖, а b'' убывает по модулю аргумента
        weights = _logistic_curvature(np.linalg.norm(covariates, axis=1) * feasible_set.sup_norm())
        hessian_bound = (covariates * weights[:, None]).T @ covariates / covariates.shape[0]
        smallest = float(np.linalg.eigvalsh(hessian_bound)[0])
        return smallest if smallest > 1e-12 else None


class LinearOptModel(LossModel):
    name = "linear-opt"
    regularity = Regularity.LIPSCHITZ

    def __init__(self, d: int):
        super().__init__(d, RegularityConstants(M=2.0, sigma=4.0, lam=1.0))

    def losses(self, theta, samples):
        return samples @ theta

    def subgradients(self, theta, samples):
        return np.array(samples, copy=True)

    def draw_noise(self, rng, size):
        coordinates = rng.integers(0, self.d, size=size).astype(np.float64)
        return np.column_stack([rng.uniform(size=size), coordinates])

    def realize(self, noise, parameter):
        coordinates = noise[:, 1].astype(np.int64)
        signs = np.where(noise[:, 0] < 0.5 + parameter[coordinates], 1.0, -1.0)
        samples = np.zeros((noise.shape[0], self.d))
        samples[np.arange(noise.shape[0]), coordinates] = math.sqrt(self.d) * signs
        return samples

    def window_minimizer(self, samples, feasible_set):
        direction = samples.mean(axis=0)
        if isinstance(feasible_set, Box):
            vertex = np.where(direction > 0, feasible_set.lower, feasible_set.upper)
            return np.where(direction == 0, feasible_set.center, vertex)
        if isinstance(feasible_set, EuclideanBall):
            norm = float(np.linalg.norm(direction))
            if norm == 0:
                return feasible_set.center.copy()
            return feasible_set.center - feasible_set.radius * direction / norm
        return None

    def gradient_bound(self, samples):
        return float(np.linalg.norm(samples.mean(axis=0))) or 1.0


class QuantileRegressionModel(LossModel):
    """Ковариаты содержат свободный член x₁ = 1, шум Laplace(0, 1)"""

    name = "quantile-regression"
    regularity = Regularity.LIPSCHITZ

    def __init__(self, d: int, nu: float = 0.5, M: float = 4.0, sigma0: float = 1.0):
        super().__init__(d, RegularityConstants(M=M, sigma=M * sigma0, lam=sigma0))
        self.nu = nu
        self.sigma0 = sigma0

    @property
    def sample_width(self) -> int:
        return self.d + 1

    @property
    def noise_quantile(self) -> float:
        if self.nu <= 0.5:
            return math.log(2 * self.nu) if self.nu > 0 else -math.inf
        return -math.log(2 * (1 - self.nu)) if self.nu < 1 else math.inf

    def losses(self, theta, samples):
        return check_loss(samples[:, -1] - samples[:, :-1] @ theta, self.nu)

    def subgradients(self, theta, samples):
        covariates = samples[:, :-1]
        residuals = samples[:, -1] - covariates @ theta
        slopes = np.where(residuals > 0, self.nu, np.where(residuals < 0, self.nu - 1, 0.0))
        return -slopes[:, None] * covariates

    def draw_noise(self, rng, size):
        covariates = np.ones((size, self.d))
        covariates[:, 1:] = self.sigma0 * rng.standard_normal((size, self.d - 1))
        return np.hstack([covariates, rng.laplace(size=(size, 1))])

    def realize(self, noise, parameter):
        covariates = noise[:, :-1]
        return np.hstack([covariates, (covariates @ parameter + noise[:, -1])[:, None]])

    def population_minimizer(self, parameter: ParamVector) -> ParamVector:
        shifted = np.array(parameter, dtype=np.float64, copy=True)
        shifted[0] += self.noise_quantile
        return shifted

    def window_minimizer(self, samples, feasible_set):
        if self.d != 1 or not np.all(samples[:, 0] == 1.0):
            return None
        return feasible_set.project([lower_quantile(samples[:, -1], self.nu)])

    def gradient_bound(self, samples):
        scale = max(self.nu, 1 - self.nu)
        return scale * float(np.mean(np.linalg.norm(samples[:, :-1], axis=1)))


class NewsvendorModel(LossModel):
    """d = 1, z - спрос, θ - объём закупки; спрос N(μ_n, σ₀²)"""

    name = "newsvendor"
    regularity = Regularity.LIPSCHITZ

    def __init__(self, c1: float = 1.0, c2: float = 1.0, sigma0: float = 1.0, M: float = 10.0):
        super().__init__(
            1, RegularityConstants(M=M, sigma=(c1 + c2) * M * sigma0, lam=(c1 + c2) * sigma0)
        )
        self.c1 = c1
        self.c2 = c2
        self.sigma0 = sigma0

    @property
    def nu(self) -> float:
        return self.c2 / (self.c1 + self.c2)

    def losses(self, theta, samples):
        demand = samples[:, 0]
        return self.c1 * np.maximum(theta[0] - demand, 0.0) + self.c2 * np.maximum(
            demand - theta[0], 0.0
        )

    def subgradients(self, theta, samples):
        demand = samples[:, 0]
        slopes = np.where(theta[0] > demand, self.c1, np.where(theta[0] < demand, -self.c2, 0.0))
        return slopes[:, None]

    def draw_noise(self, rng, size):
        return self.sigma0 * rng.standard_normal((size, 1))

    def realize(self, noise, parameter):
        return noise + parameter[0]

    def window_minimizer(self, samples, feasible_set):
        return feasible_set.project([lower_quantile(samples[:, 0], self.nu)])

    def gradient_bound(self, samples):
        return max(self.c1, self.c2)


class SvmModel(LossModel):
    """Метки порождаются логистической моделью с параметром w*"""

    name = "svm"
    regularity = Regularity.LIPSCHITZ

    def __init__(self, d: int, M: float = 4.0, sigma0: float = 1.0):
        super().__init__(d, RegularityConstants(M=M, sigma=M * sigma0, lam=sigma0))
        self.sigma0 = sigma0

    @property
    def sample_width(self) -> int:
        return self.d + 1

    def losses(self, theta, samples):
        return np.maximum(1.0 - samples[:, -1] * (samples[:, :-1] @ theta), 0.0)

    def subgradients(self, theta, samples):
        covariates = samples[:, :-1]
        labels = samples[:, -1]
        active = (1.0 - labels * (covariates @ theta)) > 0
        return -(labels * active)[:, None] * covariates

    def draw_noise(self, rng, size):
        covariates = self.sigma0 * rng.standard_normal((size, self.d))
        return np.hstack([covariates, rng.uniform(size=(size, 1))])

    def realize(self, noise, parameter):
        covariates = noise[:, :-1]
        labels = np.where(noise[:, -1] < expit(covariates @ parameter), 1.0, -1.0)
        return np.hstack([covariates, labels[:, None]])

    def gradient_bound(self, samples):
        return float(np.mean(np.linalg.norm(samples[:, :-1], axis=1)))


def default_feasible_set(model: LossModel) -> FeasibleSet:
    if isinstance(model, LinearOptModel):
        return Box.cube(model.d, 1 / math.sqrt(model.d))
    if isinstance(model, NewsvendorModel):
        return Interval.between(0.0, model.constants.M)
    return EuclideanBall.centered(model.d, model.constants.M / 2)
