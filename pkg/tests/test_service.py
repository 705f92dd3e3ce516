"""Service endpoints via the in-process ASGI transport."""

import math

import httpx
import pytest

from a2glink.service import create_app


@pytest.fixture(scope="module")
def client():
    transport = httpx.ASGITransport(app=create_app())

    class Client:
        def post(self, path, json):
            import asyncio

            async def go():
                async with httpx.AsyncClient(transport=transport, base_url="http://test", timeout=None) as c:
                    return await c.post(path, json=json)

            return asyncio.run(go())

        def get(self, path):
            import asyncio

            async def go():
                async with httpx.AsyncClient(transport=transport, base_url="http://test", timeout=None) as c:
                    return await c.get(path)

            return asyncio.run(go())

    return Client()


PARAMS = {"n_subframes": 30, "n_rb_dl": 6}


def test_health(client):
    r = client.get("/v1/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_sweep_endpoint(client):
    r = client.post(
        "/v1/sweep",
        json={"scheme": "type1-cc", "mcs": 2, "sinr_db": [0.0, 20.0], "seed": 1, "params": PARAMS},
    )
    assert r.status_code == 200
    body = r.json()
    assert len(body["rows"]) == 2
    assert body["rows"][1]["throughput_ratio_pct"] == 100.0
    assert body["metadata"]["experiment"] == "sweep"


def test_sweep_validation_errors(client):
    bad = [
        {"scheme": "type9", "sinr_db": [0.0]},
        {"scheme": "type1-cc", "mcs": 7, "sinr_db": [0.0]},
        {"scheme": "type1-cc", "sinr_db": []},
        {"scheme": "type1-cc", "sinr_db": [3.0, 1.0]},
    ]
    for body in bad:
        assert client.post("/v1/sweep", json=body).status_code == 422, body


def test_latency_endpoint(client):
    r = client.post(
        "/v1/latency",
        json={"sinr_db": [25.0], "seed": 0, "params": PARAMS, "schemes": ["type1-nc", "burst-cc"]},
    )
    body = r.json()
    lat = {row["scheme"]: row["avg_latency_ms"] for row in body["rows"]}
    assert lat == {"type1-nc": 11.0, "burst-cc": 10.0}


def test_asymmetry_endpoint(client):
    r = client.post(
        "/v1/asymmetry",
        json={
            "standard": "nr",
            "offsets_db": [0.0, 15.0],
            "sinr_db": [2.0],
            "seed": 2,
            "params": PARAMS,
        },
    )
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert [row["standard"] for row in rows] == ["perfect", "nr", "nr"]
    assert rows[1]["ul_sinr_db"] == 2.0
    assert rows[2]["ul_sinr_db"] == -13.0


def test_bler_endpoint(client):
    r = client.post(
        "/v1/bler",
        json={"curves": ["wifi-ack"], "trials": 200, "sinr_db": [10.0], "seed": 0},
    )
    assert r.status_code == 200
    assert r.json()["rows"][0]["bler"] == 0.0


def test_chanest_endpoint(client):
    r = client.post("/v1/chanest-rmse", json={"sinr_db": [0.0], "trials": 400, "seed": 0})
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert {row["standard"] for row in rows} == {"lte", "nr"}
    assert all(math.isfinite(row["rmse"]) and row["rmse"] > 0 for row in rows)
