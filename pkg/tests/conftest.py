# ruff: noqa: E402
from pathlib import Path
from typing import AsyncGenerator, Any

import numpy as np
import pytest
from httpx import AsyncClient

from src.api.dependencies import get_results
from src.config import settings
from src.main import app
from src.models.batches import SampleBatch
from src.models.families import GaussianMeanModel
from src.models.feasible_sets import EuclideanBall
from src.repositories.configs import ConfigsRepository
from src.utils.results_manager import ResultsManager

MOCK_EXPERIMENT = Path(__file__).parent / "mock_experiment.yaml"


@pytest.fixture(scope="session", autouse=True)
def check_test_mode():
    assert settings.MODE == "TEST"


@pytest.fixture(scope="session")
def results_root(tmp_path_factory) -> Path:
    return tmp_path_factory.mktemp("results")


@pytest.fixture(scope="session", autouse=True)
def override_results(results_root):
    def get_results_tmp():
        with ResultsManager(results_root) as results:
            yield results

    app.dependency_overrides[get_results] = get_results_tmp
    yield
    app.dependency_overrides.pop(get_results, None)


@pytest.fixture(scope="function")
async def ac() -> AsyncGenerator[AsyncClient, Any]:
    async with AsyncClient(app=app, base_url="http://test") as ac:
        yield ac


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240801)


@pytest.fixture
def mock_config():
    return ConfigsRepository(MOCK_EXPERIMENT.parent).get_one(MOCK_EXPERIMENT)


@pytest.fixture
def gaussian():
    """Оценка среднего в ℝ¹ на шаре радиуса 2"""
    model = GaussianMeanModel(1)
    return model, EuclideanBall.centered(1, model.constants.M / 2)


def make_batches(values, B: int = 1) -> list[SampleBatch]:
    """Детерминированные пакеты: B одинаковых точек на период"""
    batches = []
    for period, value in enumerate(values, start=1):
        point = np.atleast_1d(np.asarray(value, dtype=np.float64))
        batches.append(SampleBatch(np.tile(point, (B, 1)), period))
    return batches


@pytest.fixture
def batches_of():
    return make_batches
