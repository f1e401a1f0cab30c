import pytest

GRID = [0.0, 0.5, 1.0]


@pytest.mark.parametrize(
    "f_values, g_values, epsilon, delta, status_code, delta_star, close",
    [
        ([0.0, 0.125, 0.5], [0.5, 0.125, 0.0], 0.0, 0.5, 200, 0.5, True),
        ([0.0, 0.125, 0.5], [0.5, 0.125, 0.0], 0.0, 0.4, 200, 0.5, False),
        ([1.0, 2.0, 3.0], [11.0, 12.0, 13.0], 0.0, None, 200, 0.0, None),
        ([0.0, 0.125, 0.5], [0.5, 0.125, 0.0], -1.0, None, 422, None, None),
        ([0.0, 0.125], [0.5, 0.125, 0.0], 0.0, None, 422, None, None),
    ],
)
async def test_compare_functions(
    ac, f_values, g_values, epsilon, delta, status_code, delta_star, close
):
    response = await ac.post(
        "/closeness",
        json={
            "f": {"grid": GRID, "values": f_values},
            "g": {"grid": GRID, "values": g_values},
            "epsilon": epsilon,
            "delta": delta,
        },
    )

    assert response.status_code == status_code
    if status_code == 200:
        res = response.json()
        assert res["status"] == "OK"
        assert res["data"]["delta_star"] == pytest.approx(delta_star)
        assert res["data"]["close"] == close


async def test_compare_functions_on_different_grids(ac):
    response = await ac.post(
        "/closeness",
        json={
            "f": {"grid": [0.0, 1.0], "values": [0.0, 1.0]},
            "g": {"grid": [0.0, 2.0], "values": [0.0, 1.0]},
        },
    )

    assert response.status_code == 422


@pytest.mark.parametrize(
    "body, status_code, epsilon, delta",
    [
        ({"kind": "sup-norm", "D0": 0.25}, 200, 0.0, 0.5),
        ({"kind": "gradient-sup", "D1": 0.1, "M": 2.0}, 200, 0.0, 0.4),
        ({"kind": "minimizers", "rho": 1.0, "L": 1.0, "theta_f": [0.0], "theta_g": [1.0]}, 200, 0.6931, 0.5),
        ({"kind": "gradient-sup", "D1": 0.1}, 422, None, None),
        ({"kind": "minimizers", "rho": 2.0, "L": 1.0, "theta_f": [0.0], "theta_g": [1.0]}, 422, None, None),
        ({"kind": "unknown"}, 422, None, None),
    ],
)
async def test_closeness_from_condition(ac, body, status_code, epsilon, delta):
    response = await ac.post("/closeness/sufficient", json=body)

    assert response.status_code == status_code
    if status_code == 200:
        params = response.json()["data"]
        assert params["epsilon"] == pytest.approx(epsilon, abs=1e-4)
        assert params["delta"] == pytest.approx(delta)
