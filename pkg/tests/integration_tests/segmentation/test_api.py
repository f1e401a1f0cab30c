import pytest


@pytest.mark.parametrize(
    "path, status_code, boundaries",
    [
        ([0.0] * 10, 200, [0, 9]),
        ([0, 0, 0, 5, 5, 5], 200, [0, 3, 5]),
        ([[0.0, 0.0], [0.0, 0.0], [3.0, 3.0]], 200, [0, 2]),
        ([0.0], 422, None),
    ],
)
async def test_segment_strongly_convex(ac, path, status_code, boundaries):
    response = await ac.post("/segmentation/strongly-convex", json={"path": path})

    assert response.status_code == status_code
    if status_code == 200:
        res = response.json()
        assert res["status"] == "OK"
        assert res["data"]["boundaries"][0] == 0
        assert res["data"]["boundaries"][-1] == len(path) - 1
        assert res["data"]["J"] == len(res["data"]["boundaries"]) - 1
        if len(boundaries) > 2:
            assert res["data"]["boundaries"] == boundaries


async def test_segment_strongly_convex_rejects_radius(ac):
    response = await ac.post("/segmentation/strongly-convex", json={"path": [0, 1], "r": 0})

    assert response.status_code == 422


@pytest.mark.parametrize(
    "body, status_code, J",
    [
        ({"distances": [[0.0] * 4] * 4}, 200, 1),
        ({"mu_path": [[0.0]] * 6}, 200, 1),
        ({"distances": [[0.0, 1.0], [1.0, 0.0]], "mu_path": [[0.0], [0.1]]}, 422, None),
        ({}, 422, None),
        ({"distances": [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]}, 422, None),
        ({"distances": [[0.0]]}, 400, None),
    ],
)
async def test_segment_lipschitz(ac, body, status_code, J):
    response = await ac.post("/segmentation/lipschitz", json=body)

    assert response.status_code == status_code
    if status_code == 200:
        assert response.json()["data"]["J"] == J
