import numpy as np
import pytest

from src.schemas.experiments import BaselineConfig
from src.services.envgen import StepLaw, ZigzagKind
from src.services.harness import HarnessService
from src.services.simulation import build_path, run_replication
from src.tasks.replications import run_replications
from src.utils.results_manager import ResultsManager


def final_regrets(traces, learner: str, period: int | None = None) -> list[float]:
    index = -1 if period is None else period - 1
    return [t.cum_regret[index] for t in traces if t.learner == learner]


@pytest.mark.slow
def test_parallel_replications_match_sequential(mock_config):
    config = mock_config.model_copy(update={"replications": 3})
    sequential = run_replications(config, parallel=False)
    parallel = run_replications(config, parallel=True, workers=2)

    assert [t.model_dump() for t in sequential] == [t.model_dump() for t in parallel]


@pytest.mark.slow
def test_fixed_window_one_regret_slope(mock_config):
    # K_n = 1 на постоянном пути: E excess = σ²·d/(2B) на каждом шаге
    d, B, N = 2, 4, 400
    config = mock_config.model_copy(
        update={
            "problem": mock_config.problem.model_copy(update={"d": d}),
            "path": mock_config.path.model_copy(update={"generator": "constant", "value": 0.0}),
            "horizon": N,
            "batch_size": B,
            "baselines": [BaselineConfig(kind="fixed-window", k=1)],
            "replications": 4,
        }
    )
    traces = [t for t in HarnessService().run_experiment(config) if t.learner == "fixed-window-1"]
    slopes = [(t.cum_regret[-1] - t.cum_regret[0]) / (N - 1) for t in traces]

    assert np.mean(slopes) == pytest.approx(d / (2 * B), rel=0.1)


@pytest.mark.slow
def test_stationary_regret_growth(mock_config):
    # рост регрета при удвоении горизонта: SAWS почти не растёт, K_n = 1 растёт линейно
    config = mock_config.model_copy(
        update={
            "problem": mock_config.problem.model_copy(update={"d": 2}),
            "path": mock_config.path.model_copy(update={"generator": "constant", "value": 0.0}),
            "horizon": 4096,
            "schedule": mock_config.schedule.model_copy(update={"c_tau": None}),
            "baselines": [BaselineConfig(kind="fixed-window", k=1)],
            "replications": 20,
        }
    )
    traces = HarnessService().run_experiment(config, parallel=True)

    ratios = {
        learner: np.median(final_regrets(traces, learner))
        / np.median(final_regrets(traces, learner, period=2048))
        for learner in ("saws", "fixed-window-1")
    }
    assert ratios["saws"] <= 1.6
    assert ratios["fixed-window-1"] >= 1.9


@pytest.mark.slow
def test_small_zigzags_cost_less_than_uneven(mock_config):
    medians, variations = {}, {}
    for kind in (ZigzagKind.SMALL, ZigzagKind.UNEVEN):
        config = mock_config.model_copy(
            update={
                "path": mock_config.path.model_copy(update={"kind": kind}),
                "horizon": 4096,
                "schedule": mock_config.schedule.model_copy(update={"c_tau": 10.0}),
                "baselines": [],
                "replications": 20,
            }
        )
        variations[kind] = build_path(config).realized_tv
        traces = HarnessService().run_experiment(config, parallel=True)
        medians[kind] = np.median(final_regrets(traces, "saws"))

    assert variations[ZigzagKind.SMALL] == pytest.approx(variations[ZigzagKind.UNEVEN], rel=0.05)
    assert medians[ZigzagKind.SMALL] <= medians[ZigzagKind.UNEVEN] / 3


@pytest.mark.slow
def test_noiseless_regret_below_certificate(mock_config):
    for seed in range(50):
        config = mock_config.model_copy(
            update={
                "problem": mock_config.problem.model_copy(update={"params": {"sigma0": 0.0}}),
                "path": mock_config.path.model_copy(
                    update={
                        "generator": "tv-budget",
                        "V": [1.0, 4.0, 16.0][seed % 3],
                        "step_law": StepLaw.SPARSE,
                    }
                ),
                "horizon": 256,
                "baselines": [],
                "replications": 1,
                "seed": seed,
            }
        )
        saws = run_replication(config, replication=0)[0]
        certificate = HarnessService().reference_curves(config).certificate

        assert certificate is not None
        assert saws.cum_regret[-1] <= certificate.total


@pytest.mark.slow
def test_outputs_are_byte_identical_across_modes(tmp_path, mock_config):
    config = mock_config.model_copy(update={"replications": 3})
    outputs = {}
    for name, parallel in (("sequential", False), ("parallel", True), ("parallel-again", True)):
        with ResultsManager(tmp_path / name) as results:
            HarnessService(results).run(config, parallel=parallel, workers=2)
        root = tmp_path / name / config.name
        outputs[name] = {
            str(path.relative_to(root)): path.read_bytes()
            for path in sorted(root.rglob("*"))
            if path.is_file()
        }

    assert len([path for path in outputs["parallel"] if path.endswith(".csv")]) == 3 * 4 + 1
    assert outputs["parallel"] == outputs["parallel-again"]
    assert outputs["parallel"] == outputs["sequential"]
