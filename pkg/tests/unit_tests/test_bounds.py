import math

import pytest

from src.exceptions import ConfigurationException
from src.models.types import Regularity
from src.services.bounds import (
    cumulative_threshold,
    lower_bound_reference,
    regret_bound_certificate,
    tv_lower_bound_reference,
    tv_regret_reference,
)
from src.services.segmentation import Segmentation


def test_cumulative_threshold():
    assert cumulative_threshold(lambda i: 1 / i, U=0.5, n=3) == pytest.approx(4 / 3)


def test_certificate_of_stationary_noiseless_path():
    segmentation = Segmentation((0, 9), (0.0,), (0.0,))
    certificate = regret_bound_certificate(segmentation, [0.0], lambda i: 0.0, U=1.0)

    assert certificate.total == 0.0


def test_certificate_terms():
    segmentation = Segmentation((0, 2, 5), (0.0, 0.0), (0.0, 0.0))
    certificate = regret_bound_certificate(
        segmentation, [0.1, 0.2], lambda i: 1 / i, U=0.5, epsilon=0.0, initial=0.7
    )

    assert certificate.T == pytest.approx((1.0, 4 / 3))
    assert certificate.stochastic == pytest.approx(3 * 4 * (7 / 3))
    assert certificate.drift == pytest.approx(0.3)
    assert certificate.total == pytest.approx(0.7 + 28 + 0.3)


def test_certificate_inflates_with_epsilon():
    segmentation = Segmentation((0, 4), (0.0,), (0.0,))
    plain = regret_bound_certificate(segmentation, [0.5], lambda i: 1 / i, U=1.0)
    inflated = regret_bound_certificate(segmentation, [0.5], lambda i: 1 / i, U=1.0, epsilon=0.1)

    assert inflated.stochastic == pytest.approx(plain.stochastic * math.exp(0.3))
    assert inflated.drift == pytest.approx(plain.drift * math.exp(0.1))


@pytest.mark.parametrize(
    "deltas, U",
    [
        ([0.1, 0.2], 1.0),
        ([-0.1], 1.0),
        ([0.1], -1.0),
    ],
)
def test_certificate_contract(deltas, U):
    with pytest.raises(ConfigurationException):
        regret_bound_certificate(Segmentation((0, 4), (0.0,), (0.0,)), deltas, lambda i: 1.0, U=U)


@pytest.mark.parametrize(
    "regime, boundaries, jumps, expected",
    [
        (Regularity.STRONGLY_CONVEX, (0, 99), [0.0], 2.0),
        (Regularity.STRONGLY_CONVEX, (0, 49, 99), [0.0, 0.5], 1 + 1 + 1 + 0.25),
        (Regularity.LIPSCHITZ, (0, 99), [0.0], 1 + math.sqrt(99)),
        (Regularity.LIPSCHITZ, (0, 2, 99), [0.3, 1.0], 1 + 0 + math.sqrt(97) + 1.3),
    ],
)
def test_lower_bound_reference(regime, boundaries, jumps, expected):
    assert lower_bound_reference(regime, boundaries, jumps, d=1, B=1) == pytest.approx(expected)


@pytest.mark.parametrize(
    "boundaries, jumps",
    [
        ((1, 99), [0.0]),
        ((0, 50, 50), [0.0, 0.0]),
        ((0, 99), [0.0, 0.0]),
        ((0, 99), [1.5]),
    ],
)
def test_lower_bound_contract(boundaries, jumps):
    with pytest.raises(ConfigurationException):
        lower_bound_reference(Regularity.LIPSCHITZ, boundaries, jumps, d=1, B=1)


@pytest.mark.parametrize(
    "regime, expected_upper, expected_lower",
    [
        (Regularity.STRONGLY_CONVEX, 2.0, 2.0),
        (Regularity.LIPSCHITZ, 11.0, 11.0),
    ],
)
def test_tv_references_without_drift(regime, expected_upper, expected_lower):
    assert tv_regret_reference(regime, V=0.0, N=100, d=1, B=1) == pytest.approx(expected_upper)
    assert tv_lower_bound_reference(regime, V=0.0, N=100, d=1, B=1) == pytest.approx(expected_lower)


@pytest.mark.parametrize("regime", list(Regularity))
def test_tv_reference_grows_with_variation(regime):
    values = [tv_regret_reference(regime, V, N=1000, d=2, B=1) for V in (0.0, 1.0, 10.0)]

    assert values == sorted(values)
    assert values[0] < values[-1]
    with pytest.raises(ConfigurationException):
        tv_regret_reference(regime, V=-1.0, N=1000, d=2, B=1)
