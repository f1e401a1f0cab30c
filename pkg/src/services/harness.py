import logging
import math
from pathlib import Path

import numpy as np
import pandas as pd

from src.config import settings
from src.exceptions import ConfigurationException, ConfigValidationException
from src.models.families import LinearOptModel
from src.models.types import Regularity
from src.repositories.configs import ConfigsRepository, config_hash
from src.repositories.mappers.mappers import BoundCertificateDataMapper
from src.schemas.bounds import BoundsReport, CurvePoint
from src.schemas.experiments import ExperimentConfig
from src.schemas.traces import ExperimentSummary, LearnerSummary, RegretTrace, SweepPoint
from src.services.base import BaseService
from src.services.bounds import (
    lower_bound_reference,
    regret_bound_certificate,
    tv_lower_bound_reference,
    tv_regret_reference,
)
from src.services.closeness import GridFunction, grid_range, pairwise_sup_distances
from src.services.envgen import total_variation
from src.services.problems import Environment
from src.services.saws import threshold
from src.services.segmentation import (
    linear_opt_sup_distances,
    segment_greedy_lipschitz,
    segment_greedy_strongly_convex,
)
from src.services.simulation import (
    build_environment,
    build_path,
    make_schedule,
    validate_config,
)
from src.tasks.replications import run_replications
from src.utils.grids import make_grid

QUANTILES = {"q10": 0.1, "q25": 0.25, "q75": 0.75, "q90": 0.9}


def summarize(traces: list[RegretTrace]) -> list[LearnerSummary]:
    """Медиана, квантили и среднее итогового регрета по репликациям, для каждого алгоритма"""
    frame = pd.DataFrame(
        {"learner": [t.learner for t in traces], "regret": [t.final_regret for t in traces]}
    )
    summaries = []
    for learner, regret in frame.groupby("learner", sort=True)["regret"]:
        summaries.append(
            LearnerSummary(
                learner=learner,
                replications=len(regret),
                median=float(regret.median()),
                mean=float(regret.mean()),
                **{name: float(regret.quantile(q)) for name, q in QUANTILES.items()},
            )
        )
    return summaries


def sweep_point(config: ExperimentConfig, parameter: str, value: float) -> ExperimentConfig:
    match parameter:
        case "V":
            update = {"path": config.path.model_copy(update={"V": value})}
        case "u":
            update = {"path": config.path.model_copy(update={"u": value})}
        case "c_tau":
            update = {"schedule": config.schedule.model_copy(update={"c_tau": value})}
    return config.model_copy(update={**update, "sweep": None})


def population_grid(environment: Environment, grid: np.ndarray) -> list[GridFunction]:
    """F_1, …, F_N на общей сетке; одинаковые параметры пути считаются один раз"""
    cache: dict[bytes, GridFunction] = {}
    functions = []
    for period in range(1, environment.horizon + 1):
        key = environment.parameter(period).tobytes()
        if key not in cache:
            cache[key] = GridFunction.from_population(environment.population(period), grid)
        functions.append(cache[key])
    return functions


class HarnessService(BaseService):
    def load_config(
        self,
        source: Path | str,
        seed: int | None = None,
        reps: int | None = None,
        out_dir: str | None = None,
    ) -> ExperimentConfig:
        config = ConfigsRepository(Path(source).parent).get_one(source)
        overrides = {"seed": seed, "replications": reps, "output_dir": out_dir}
        config = config.model_copy(
            update={key: value for key, value in overrides.items() if value is not None}
        )
        return self.check_config(config)

    @staticmethod
    def check_config(config: ExperimentConfig) -> ExperimentConfig:
        errors = validate_config(config)
        if errors:
            for error in errors:
                logging.error(f"❌ {error}")
            raise ConfigValidationException(errors)
        return config

    def run_experiment(
        self, config: ExperimentConfig, parallel: bool = False, workers: int | None = None
    ) -> list[RegretTrace]:
        self.check_config(config)
        return run_replications(config, parallel, workers)

    @staticmethod
    def summarize_experiment(
        config: ExperimentConfig, traces: list[RegretTrace]
    ) -> ExperimentSummary:
        return ExperimentSummary(
            name=config.name,
            config_hash=config_hash(config),
            horizon=config.horizon,
            seed=config.seed,
            learners=summarize(traces),
            c_tau=[t.c_tau for t in traces if t.c_tau is not None],
        )

    def emit(
        self,
        config: ExperimentConfig,
        traces: list[RegretTrace],
        summary: ExperimentSummary,
        subdir: str = "",
    ) -> None:
        if self.results is None:
            return
        self.results.traces.add_bulk(traces, subdir)
        self.results.traces.add_plot_data(traces, subdir)
        self.results.traces.add_summary(summary, subdir)
        self.results.configs.add(config, subdir)

    def run(
        self, config: ExperimentConfig, parallel: bool = False, workers: int | None = None
    ) -> ExperimentSummary:
        traces = self.run_experiment(config, parallel, workers)
        summary = self.summarize_experiment(config, traces)
        self.emit(config, traces, summary, config.name)
        if self.results is not None:
            self.results.commit()
        return summary

    def run_sweep(
        self, config: ExperimentConfig, parallel: bool = False, workers: int | None = None
    ) -> list[SweepPoint]:
        if config.sweep is None:
            raise ConfigValidationException(["sweep: для перебора нужен раздел sweep"])
        parameter = config.sweep.parameter
        points = []
        for value in config.sweep.values:
            point_config = sweep_point(config, parameter, value)
            traces = self.run_experiment(point_config, parallel, workers)
            summary = self.summarize_experiment(point_config, traces)
            subdir = str(Path(config.name, f"{parameter}={value:g}"))
            self.emit(point_config, traces, summary, subdir)
            points.append(SweepPoint(parameter=parameter, value=value, summary=summary))
            logging.info(f"✅ Точка перебора {parameter}={value:g} готова")
        if self.results is not None:
            self.results.traces.add_sweep(points, config.name)
            self.results.commit()
        return points

    def reference_curves(self, config: ExperimentConfig) -> BoundsReport:
        """Верхняя и нижняя TV-кривые по префиксам пути, сертификат и нижняя оценка класса"""
        self.check_config(config)
        path = build_path(config)
        environment = build_environment(config, path, replication=0)
        model = environment.model
        regime, N, B, d = model.regularity, path.horizon, config.batch_size, model.dimension

        horizons = sorted({2**j for j in range(1, N.bit_length()) if 2**j <= N} | {N})
        curve = []
        for n in horizons:
            V = total_variation(path.values[:n], path.metric)
            curve.append(
                CurvePoint(
                    n=n,
                    V=V,
                    tv_upper=tv_regret_reference(regime, V, n, d, B),
                    tv_lower=tv_lower_bound_reference(regime, V, n, d, B),
                )
            )

        report = BoundsReport(regime=regime, horizon=N, curve=curve)
        if path.boundaries is not None and path.jumps is not None:
            report.class_lower = lower_bound_reference(
                regime, (0, *path.boundaries), path.jumps, d, B
            )

        certificate = self._certificate(config, path, environment)
        if certificate is not None:
            report.J = len(certificate.T)
            report.certificate = BoundCertificateDataMapper.map_to_domain_entity(certificate)

        if self.results is not None:
            frame = pd.DataFrame([point.model_dump() for point in curve])
            self.results.traces.write_frame(frame, "bounds.csv", config.name)
            self.results.traces.write_text(
                report.model_dump_json(indent=2) + "\n", "bounds.json", config.name
            )
            self.results.commit()
        return report

    @staticmethod
    def _certificate(config, path, environment):
        """Сертификат на жадном разбиении; U и sup-расстояния оцениваются по сетке Ω"""
        model = environment.model
        constants = model.constants
        N, B, d = path.horizon, config.batch_size, model.dimension
        schedule = make_schedule(config, environment, config.schedule.c_tau or 1.0)
        initial = environment.excess(1, environment.feasible_set.project(np.zeros(d))).value

        functions = None
        try:
            # около GRID_POINTS точек всего, а не на каждую ось
            points = max(2, round(settings.GRID_POINTS ** (1 / d)))
            functions = population_grid(environment, make_grid(environment.feasible_set, points))
        except ConfigurationException as ex:
            logging.info(f"⚠️  Сетка не построена, U берётся из констант класса: {ex}")

        if model.regularity == Regularity.STRONGLY_CONVEX:
            if constants.rho is None or constants.L is None or constants.r is None:
                return None
            segmentation = segment_greedy_strongly_convex(
                path.values, constants.rho, constants.sigma, constants.M, constants.r, d, B
            )
            # по минимизаторам: (ln(2L/ρ), ρ/2·max‖θ*_a − θ*_b‖²)
            epsilon = math.log(2 * constants.kappa)
            deltas = [constants.rho / 2 * c**2 for c in segmentation.certificates]
            U = constants.L * constants.M**2 / 2
        elif isinstance(model, LinearOptModel):
            segmentation = segment_greedy_lipschitz(
                linear_opt_sup_distances(path.values), constants.sigma, d, B
            )
            # по sup-норме: (0, 2·max‖F_a − F_b‖_∞)
            epsilon = 0.0
            deltas = [2 * c for c in segmentation.certificates]
            U = 2.0
        elif functions is not None:
            segmentation = segment_greedy_lipschitz(
                pairwise_sup_distances(functions), constants.sigma, d, B
            )
            epsilon = 0.0
            deltas = [2 * c for c in segmentation.certificates]
            U = constants.sigma * constants.M
        else:
            logging.info(f"⚠️  Для {model.name} сертификат не строится: нет явного разбиения")
            return None

        if functions is not None:
            U = grid_range(functions)

        try:
            return regret_bound_certificate(
                segmentation,
                deltas,
                lambda i: threshold(schedule, N, i),
                U,
                epsilon=epsilon,
                initial=max(initial, 0.0),
            )
        except ConfigurationException as ex:
            logging.warning(f"⚠️  Сертификат не построен: {ex}")
            return None
