"""HTTP surface: routes mirror the handlers, errors map to status codes."""

import math

import pytest
from fastapi.testclient import TestClient

from polycasimir.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestRoutes:
    def test_zeros(self, client):
        r = client.post("/v1/zeros", json={"order": 0, "count": 3})
        assert r.status_code == 200
        assert r.json()["zeros"][0] == pytest.approx(2.404825557695773, rel=1e-14)

    def test_spectrum_global(self, client):
        r = client.post("/v1/spectrum", json={"domain": "disk", "count": 5})
        obj = r.json()
        assert obj["truncation"] == ["global", 5]
        assert [e[2] for e in obj["entries"]] == sorted(e[2] for e in obj["entries"])

    def test_spectrum_square_grid(self, client):
        r = client.post("/v1/spectrum", json={"domain": "square", "grid": 3})
        assert r.status_code == 200
        assert r.json()["entries"][0][2] == pytest.approx(math.pi * math.sqrt(2), rel=1e-14)

    def test_compare(self, client):
        r = client.post("/v1/compare", json={"grid": 25})
        obj = r.json()
        assert len(obj["pairs"]) == 625
        assert 0.1 < obj["summary"]["mean_rel_diff"] < 0.2

    def test_regimes(self, client):
        r = client.post("/v1/regimes", json={})
        assert [row["regime"] for row in r.json()] == ["n>>m", "m~n", "m>>n"]

    def test_circle_energy_default_source(self, client):
        r = client.post("/v1/energy/circle", json={})
        assert r.json() == {"finite": 0.023595, "pole_residue": -1.0 / 128.0,
                            "source": "paper_constants"}

    def test_square_energy(self, client):
        r = client.post("/v1/energy/square", json={"epsilon": 1e-3, "with_terms": True})
        obj = r.json()
        assert obj["energy"] == pytest.approx(0.041535684697839206, rel=1e-14)
        assert obj["epsilon_gap"] < 1e-5
        assert obj["terms"]["bessel_boundary"] < 0

    def test_polygon_energy(self, client):
        r = client.post("/v1/energy/polygon", json={"sides": 4})
        assert r.json()["finite"] == 0.029769

    def test_rd_scale(self, client):
        r = client.post("/v1/rd-scale", json={"dims": 0, "sides": 4, "s": -0.5})
        assert r.json()["scale"] == pytest.approx(1.0, rel=1e-15)

    def test_cylinder(self, client):
        r = client.post("/v1/cylinder", json={"length": 2.0, "method": "both"})
        obj = r.json()
        assert obj["exact"] == pytest.approx(-9.15927572897644e-07, rel=1e-12)
        assert obj["exact"] < obj["asymptotic"] < 0

    def test_inflate(self, client):
        r = client.post("/v1/inflate", json={"delta_r": -0.05})
        assert r.json()["energy_factor"] == pytest.approx(
            math.sqrt(1 + 0.1 + 3 * 0.0025), rel=1e-14)

    def test_reconcile(self, client):
        r = client.post("/v1/reconcile", json={})
        assert len(r.json()) == 12


class TestErrorMapping:
    def test_validation_is_422(self, client):
        assert client.post("/v1/zeros", json={"order": -1}).status_code == 422
        assert client.post("/v1/compare", json={"grid": 0}).status_code == 422

    def test_domain_errors_are_422(self, client):
        r = client.post("/v1/inflate", json={"delta_r": 0.9})
        assert r.status_code == 422 and "regime" in r.json()["detail"]
        r = client.post("/v1/cylinder", json={"length": 0.05, "method": "asymptotic"})
        assert r.status_code == 422

    def test_spectrum_truncation_conflict_is_422(self, client):
        r = client.post("/v1/spectrum", json={"grid": 4, "count": 4})
        assert r.status_code == 422
