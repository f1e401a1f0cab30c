from pathlib import Path

import numpy as np

from src.exceptions import ConfigurationException
from src.models.types import Regularity
from src.repositories.grids import GridsRepository
from src.repositories.mappers.mappers import (
    BoundCertificateDataMapper,
    ClosenessParamsDataMapper,
    SegmentationDataMapper,
)
from src.repositories.paths import PathsRepository
from src.schemas.bounds import BoundCertificateOut, BoundValue, CertificateRequest, LowerBoundRequest
from src.schemas.closeness import (
    ClosenessParamsOut,
    ClosenessRequest,
    ClosenessResult,
    GridFunctionAdd,
    SufficientRequest,
)
from src.schemas.segmentation import (
    LipschitzSegmentationRequest,
    SegmentationOut,
    StronglyConvexSegmentationRequest,
)
from src.services.base import BaseService
from src.services.bounds import lower_bound_reference, regret_bound_certificate, tv_regret_reference
from src.services.closeness import GridFunction, closeness_from_sufficient, is_close, min_delta
from src.services.saws import ThresholdSchedule, threshold
from src.services.segmentation import (
    SegmentCriterion,
    Segmentation,
    linear_opt_sup_distances,
    segment_greedy_lipschitz,
    segment_greedy_strongly_convex,
)


def _grid_function(data: GridFunctionAdd) -> GridFunction:
    return GridFunction(np.asarray(data.grid, dtype=np.float64), np.asarray(data.values))


class ClosenessService(BaseService):
    @staticmethod
    def _compare(f: GridFunction, g: GridFunction, epsilon: float, delta: float | None):
        return ClosenessResult(
            epsilon=epsilon,
            delta_star=min_delta(f, g, epsilon),
            close=None if delta is None else is_close(f, g, epsilon, delta),
        )

    def compare(self, data: ClosenessRequest) -> ClosenessResult:
        return self._compare(_grid_function(data.f), _grid_function(data.g), data.epsilon, data.delta)

    def compare_files(
        self, f_source: Path, g_source: Path, epsilon: float, delta: float | None = None
    ) -> ClosenessResult:
        f = GridsRepository(f_source.parent).get_one(f_source)
        g = GridsRepository(g_source.parent).get_one(g_source)
        return self._compare(f, g, epsilon, delta)

    def from_sufficient(self, data: SufficientRequest) -> ClosenessParamsOut:
        params = closeness_from_sufficient(**data.model_dump())
        return ClosenessParamsDataMapper.map_to_domain_entity(params)


class SegmentationService(BaseService):
    def strongly_convex(self, data: StronglyConvexSegmentationRequest) -> SegmentationOut:
        segmentation = segment_greedy_strongly_convex(
            np.asarray(data.path, dtype=np.float64),
            data.rho,
            data.sigma,
            data.M,
            data.r,
            data.d,
            data.B,
            data.criterion,
        )
        return SegmentationDataMapper.map_to_domain_entity(segmentation)

    def lipschitz(self, data: LipschitzSegmentationRequest) -> SegmentationOut:
        if data.mu_path is not None:
            distances = linear_opt_sup_distances(data.mu_path)
        else:
            distances = np.asarray(data.distances, dtype=np.float64)
        segmentation = segment_greedy_lipschitz(distances, data.sigma, data.d, data.B, data.criterion)
        return SegmentationDataMapper.map_to_domain_entity(segmentation)

    def segment_file(
        self,
        source: Path,
        regime: Regularity,
        sigma: float,
        B: int = 1,
        rho: float = 1.0,
        M: float = 1.0,
        r: float = 1.0,
        criterion: SegmentCriterion = SegmentCriterion.MAX_DISTANCE,
    ) -> SegmentationOut:
        """Путь θ* (сильно выпуклый случай) или μ* задачи linear-opt (липшицев случай) из CSV"""
        path = PathsRepository(source.parent).get_one(source)
        if regime == Regularity.STRONGLY_CONVEX:
            request = StronglyConvexSegmentationRequest(
                path=path.values.tolist(),
                rho=rho,
                sigma=sigma,
                M=M,
                r=r,
                d=path.dimension,
                B=B,
                criterion=criterion,
            )
            return self.strongly_convex(request)
        request = LipschitzSegmentationRequest(
            mu_path=path.values.tolist(), sigma=sigma, d=path.dimension, B=B, criterion=criterion
        )
        return self.lipschitz(request)


class BoundsService(BaseService):
    def tv_regret(self, regime: Regularity, V: float, N: int, d: int, B: int) -> BoundValue:
        return BoundValue(value=tv_regret_reference(regime, V, N, d, B))

    def lower(self, data: LowerBoundRequest) -> BoundValue:
        return BoundValue(
            value=lower_bound_reference(data.regime, data.boundaries, data.jumps, data.d, data.B)
        )

    def certificate(self, data: CertificateRequest) -> BoundCertificateOut:
        if data.boundaries[-1] > data.horizon - 1:
            raise ConfigurationException(
                f"Последняя граница {data.boundaries[-1]} больше N − 1 = {data.horizon - 1}"
            )
        segmentation = Segmentation(
            tuple(data.boundaries),
            certificates=(0.0,) * (len(data.boundaries) - 1),
            thresholds=(0.0,) * (len(data.boundaries) - 1),
        )
        schedule = ThresholdSchedule(data.regime, data.c_tau, data.d, data.B, data.alpha)
        certificate = regret_bound_certificate(
            segmentation,
            data.deltas,
            lambda i: threshold(schedule, data.horizon, i),
            data.U,
            epsilon=data.epsilon,
            initial=data.initial,
        )
        return BoundCertificateDataMapper.map_to_domain_entity(certificate)
