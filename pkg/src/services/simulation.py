import logging
import time
from pathlib import Path

import numpy as np

from src.exceptions import ConfigurationException, ContractViolationException
from src.repositories.configs import config_hash
from src.repositories.paths import PathsRepository
from src.schemas.experiments import BaselineConfig, ExperimentConfig
from src.schemas.traces import RegretTrace
from src.services.envgen import (
    ParameterPath,
    ZigzagKind,
    gen_constant,
    gen_hard_instance,
    gen_tv_budget,
    gen_zigzag,
)
from src.services.learners import BaseLearner, baseline
from src.services.problems import Environment, make_environment, make_model
from src.services.saws import SawsLearner, ThresholdSchedule, select_hyperparameter_cv
from src.services.solvers import SolverBudget, solver_budget


def validate_config(config: ExperimentConfig) -> list[str]:
    """Все нарушения согласованности конфигурации, которые не ловит схема"""
    errors = []
    try:
        model = make_model(config.problem.family, config.problem.d, **config.problem.params)
    except (ConfigurationException, TypeError) as ex:
        return [f"problem: {ex}"]

    if config.theta_1 is not None and len(config.theta_1) != model.dimension:
        errors.append(
            f"theta_1: длина {len(config.theta_1)} ≠ размерности задачи {model.dimension}"
        )
    regime = config.schedule.regime
    if regime is not None and regime != model.regularity:
        errors.append(
            f"schedule.regime: {regime} не совпадает с классом семейства {model.name} "
            f"({model.regularity})"
        )
    if config.schedule.c_tau is None and not config.schedule.cv_grid:
        errors.append("schedule: нужно задать c_tau или непустую cv_grid")

    path = config.path
    match path.generator:
        case "zigzag":
            if path.kind is None:
                errors.append("path.kind: для zigzag нужен вид пути")
            elif path.kind == ZigzagKind.ALTERNATING and path.u is None:
                errors.append("path.u: для alternating нужна высота ступени u")
        case "tv-budget":
            if path.V is None:
                errors.append("path.V: для tv-budget нужна полная вариация V")
        case "hard-instance":
            if path.boundaries is None or path.jumps is None:
                errors.append("path: для hard-instance нужны boundaries и jumps")
            elif path.boundaries[-1] != config.horizon - 1:
                errors.append(
                    f"path.boundaries: последняя граница должна быть N − 1 = {config.horizon - 1}"
                )
        case "csv":
            if path.file is None:
                errors.append("path.file: для csv нужен путь к файлу")

    names = set()
    for index, item in enumerate(config.baselines):
        if item.kind == "fixed-window" and item.k is None:
            errors.append(f"baselines.{index}.k: для fixed-window нужен размер окна k")
        name = item.kind if item.kind != "fixed-window" else f"fixed-window-{item.k}"
        if name in names:
            errors.append(f"baselines.{index}: алгоритм {name} указан дважды")
        names.add(name)

    if config.sweep is not None:
        if config.sweep.parameter == "V" and path.generator != "tv-budget":
            errors.append("sweep.parameter: перебор V возможен только для tv-budget")
        if config.sweep.parameter == "u" and path.kind != ZigzagKind.ALTERNATING:
            errors.append("sweep.parameter: перебор u возможен только для zigzag alternating")

    if not errors:
        try:
            build_environment(config, build_path(config), replication=0)
        except (ConfigurationException, ContractViolationException) as ex:
            errors.append(f"path: {ex}")
    return errors


def _embed(values: np.ndarray, width: int) -> np.ndarray:
    """Одномерный путь в первую координату параметра"""
    if values.shape[1] == width:
        return values
    embedded = np.zeros((values.shape[0], width))
    embedded[:, 0] = values[:, 0]
    return embedded


def build_path(config: ExperimentConfig) -> ParameterPath:
    model = make_model(config.problem.family, config.problem.d, **config.problem.params)
    width, N, path = model.parameter_width, config.horizon, config.path
    match path.generator:
        case "zigzag":
            zigzag = gen_zigzag(path.kind, N, path.u)
            return ParameterPath.from_values(_embed(zigzag.values, width), zigzag.kind)
        case "tv-budget":
            return gen_tv_budget(N, path.V, path.step_law, config.seed, width, path.radius)
        case "hard-instance":
            return gen_hard_instance(
                model.regularity,
                path.boundaries,
                path.jumps,
                path.gamma,
                width,
                config.batch_size,
                seed=config.seed,
            )
        case "constant":
            value = path.value if isinstance(path.value, list) else [path.value] * width
            return gen_constant(N, value)
        case "csv":
            loaded = PathsRepository(Path(path.file).parent).get_one(path.file)
            if loaded.horizon != N:
                raise ConfigurationException(
                    f"Длина пути в {path.file} равна {loaded.horizon}, а horizon = {N}"
                )
            return loaded


def build_environment(
    config: ExperimentConfig, path: ParameterPath, replication: int
) -> Environment:
    return make_environment(
        config.problem.family,
        path.values,
        config.batch_size,
        config.seed,
        replication,
        d=config.problem.d,
        mc_samples=config.mc_samples,
        **config.problem.params,
    )


def oracle_boundaries(path: ParameterPath, item: BaselineConfig) -> tuple[int, ...]:
    """Явные границы, границы генератора или точки изменения кусочно-постоянного пути"""
    if item.boundaries is not None:
        return tuple(item.boundaries)
    if path.boundaries is not None:
        return path.boundaries
    changes = np.any(np.diff(path.values, axis=0) != 0, axis=1)
    return tuple(int(n) for n in np.flatnonzero(changes) + 1)


def make_budget(config: ExperimentConfig, environment: Environment) -> SolverBudget:
    constants = environment.model.constants
    return solver_budget(
        environment.model.regularity,
        constants.M,
        constants.sigma,
        A=config.solver.A,
        max_iterations=config.solver.max_iterations,
        closed_form=config.solver.closed_form,
    )


def make_schedule(config: ExperimentConfig, environment: Environment, c_tau: float) -> ThresholdSchedule:
    return ThresholdSchedule(
        regime=environment.model.regularity,
        c_tau=c_tau,
        d=environment.model.dimension,
        B=config.batch_size,
        alpha=config.schedule.alpha,
    )


def simulate(
    learner: BaseLearner,
    environment: Environment,
    stream,
    replication: int,
    digest: str,
    c_tau: float | None = None,
) -> RegretTrace:
    windows, excess, errors = [], [], []
    for batch in stream:
        theta = learner.decide(batch.period)
        estimate = environment.excess(batch.period, theta)
        windows.append(int(learner.window))
        excess.append(estimate.value)
        errors.append(estimate.standard_error)
        learner.observe(batch)
    return RegretTrace(
        learner=learner.name,
        replication=replication,
        windows=windows,
        excess=excess,
        excess_se=errors,
        cum_regret=np.cumsum(excess).tolist(),
        config_hash=digest,
        c_tau=c_tau,
    )


def run_replication(config: ExperimentConfig, replication: int) -> list[RegretTrace]:
    """SAWS и все базовые алгоритмы на общем потоке пакетов одной репликации"""
    started = time.perf_counter()
    path = build_path(config)
    environment = build_environment(config, path, replication)
    stream = environment.stream()
    model, feasible_set = environment.model, environment.feasible_set
    budget = make_budget(config, environment)
    digest = config_hash(config)

    c_tau = config.schedule.c_tau
    if c_tau is None:
        schedules = [make_schedule(config, environment, value) for value in config.schedule.cv_grid]
        prefix = stream[: min(config.schedule.cv_prefix, len(stream))]
        c_tau = select_hyperparameter_cv(schedules, prefix, model, feasible_set, budget).c_tau

    learners: list[BaseLearner] = [
        SawsLearner(
            model,
            feasible_set,
            budget,
            make_schedule(config, environment, c_tau),
            theta_1=config.theta_1,
            warm_start=config.solver.warm_start,
            parallel=config.solver.parallel_candidates,
        )
    ]
    for item in config.baselines:
        learners.append(
            baseline(
                item.kind,
                model,
                feasible_set,
                budget,
                theta_1=config.theta_1,
                k=item.k,
                boundaries=oracle_boundaries(path, item) if item.kind == "restart-oracle" else None,
            )
        )

    traces = [
        simulate(
            learner,
            environment,
            stream,
            replication,
            digest,
            c_tau if isinstance(learner, SawsLearner) else None,
        )
        for learner in learners
    ]
    logging.info(
        f"✅ Репликация {replication} ({model.name}, N={len(stream)}, C_τ={c_tau}) "
        f"завершена за {time.perf_counter() - started:.1f} с"
    )
    return traces
