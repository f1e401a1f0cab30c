from src.models.batches import SampleBatch
from src.models.empirical import EmpiricalLoss, pre_average
from src.models.families import (
    GaussianMeanModel,
    LinearOptModel,
    LinearRegressionModel,
    LogisticRegressionModel,
    NewsvendorModel,
    QuantileRegressionModel,
    SvmModel,
)
from src.models.feasible_sets import Box, EuclideanBall, FeasibleSet, Interval, project
from src.models.losses import LossModel
from src.models.population import (
    ClosedFormPopulationLoss,
    ExcessEstimate,
    MonteCarloPopulationLoss,
    PopulationLoss,
    population_excess,
)
from src.models.types import ParamVector, Regularity, RegularityConstants

__all__ = (
    "SampleBatch",
    "EmpiricalLoss",
    "pre_average",
    "GaussianMeanModel",
    "LinearOptModel",
    "LinearRegressionModel",
    "LogisticRegressionModel",
    "NewsvendorModel",
    "QuantileRegressionModel",
    "SvmModel",
    "Box",
    "EuclideanBall",
    "FeasibleSet",
    "Interval",
    "project",
    "LossModel",
    "ClosedFormPopulationLoss",
    "ExcessEstimate",
    "MonteCarloPopulationLoss",
    "PopulationLoss",
    "population_excess",
    "ParamVector",
    "Regularity",
    "RegularityConstants",
)
