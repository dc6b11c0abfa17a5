"""HTTP endpoints: flows, error codes, determinism, session expiry."""

import json
import threading

import pytest
from fastapi.testclient import TestClient

from pptree.server import SCHEMA_VERSION, SessionStore, create_app


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


def simulate_payload(**over):
    body = {"scenario": "basic", "n": 120, "k": 3, "seed": 1}
    body.update(over)
    return body


class TestHealth:
    def test_ok(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        doc = r.json()
        assert doc["status"] == "ok"
        assert doc["schema_version"] == SCHEMA_VERSION


class TestSimulate:
    def test_returns_points_and_bbox(self, client):
        r = client.post("/simulate", json=simulate_payload())
        assert r.status_code == 200
        doc = r.json()
        assert doc["schema_version"] == SCHEMA_VERSION
        assert len(doc["points"]) == 120
        assert len(doc["labels"]) == 120
        assert sorted(set(doc["labels"])) == [1, 2, 3]
        assert len(doc["bbox"]) == 2
        assert doc["dataset_id"]

    def test_unknown_scenario_is_400(self, client):
        r = client.post("/simulate", json=simulate_payload(scenario="rings"))
        assert r.status_code == 400
        assert r.json()["code"] == "invalid_request"

    def test_bad_parameter_is_400(self, client):
        r = client.post("/simulate", json=simulate_payload(k=1))
        assert r.status_code == 400
        doc = r.json()
        assert doc["code"] == "invalid_request"
        assert "k" in doc["message"] or "class" in doc["message"]

    def test_oversized_n_is_400(self, client):
        r = client.post("/simulate", json=simulate_payload(n=60000))
        assert r.status_code == 400

    def test_ids_are_unique(self, client):
        ids = {client.post("/simulate", json=simulate_payload(seed=s)).json()["dataset_id"]
               for s in range(5)}
        assert len(ids) == 5


class TestFit:
    def fit(self, client, dataset_id, **over):
        body = {"dataset_id": dataset_id, "variant": "original"}
        body.update(over)
        return client.post("/fit", json=body)

    def test_summary_fields(self, client):
        ds = client.post("/simulate", json=simulate_payload()).json()
        r = self.fit(client, ds["dataset_id"], variant="mod2")
        assert r.status_code == 200
        doc = r.json()
        assert doc["model_id"]
        assert doc["variant"] == "mod2"
        assert doc["classes"] == [1, 2, 3]
        assert 0.0 <= doc["training_error"] <= 1.0
        assert doc["n_leaves"] >= 3
        assert doc["model"]["version"] == 1
        assert doc["model"]["root"]["alpha"]

    def test_unknown_dataset_is_404(self, client):
        r = self.fit(client, "deadbeef")
        assert r.status_code == 404
        assert r.json()["code"] == "unknown_id"

    def test_bad_config_is_400(self, client):
        ds = client.post("/simulate", json=simulate_payload()).json()
        r = self.fit(client, ds["dataset_id"], rule=9)
        assert r.status_code == 400
        assert r.json()["code"] == "invalid_request"

    def test_fit_failure_is_422(self, client):
        ds = client.post("/simulate",
                         json=simulate_payload(n=2, k=2)).json()
        r = self.fit(client, ds["dataset_id"], variant="original")
        assert r.status_code == 422
        assert r.json()["code"] == "fit_failed"

    def test_deterministic_model_docs(self, client):
        ds = client.post("/simulate", json=simulate_payload(seed=8)).json()
        a = self.fit(client, ds["dataset_id"], variant="mod1").json()
        b = self.fit(client, ds["dataset_id"], variant="mod1").json()
        assert a["model_id"] != b["model_id"]
        assert a["model"] == b["model"]
        assert a["training_error"] == b["training_error"]

    def test_pda_penalty_accepted(self, client):
        ds = client.post("/simulate", json=simulate_payload()).json()
        r = self.fit(client, ds["dataset_id"], index="pda",
                     **{"lambda": 0.3})
        assert r.status_code == 200
        assert r.json()["model"]["config"]["index"]["lambda"] == 0.3


class TestBoundary:
    def make_model(self, client, **sim_over):
        ds = client.post("/simulate", json=simulate_payload(**sim_over)).json()
        fit = client.post("/fit", json={"dataset_id": ds["dataset_id"],
                                        "variant": "mod2"}).json()
        return ds, fit

    def test_grid_payload(self, client):
        ds, fit = self.make_model(client)
        r = client.post("/boundary", json={"model_id": fit["model_id"],
                                           "resolution": 21})
        assert r.status_code == 200
        doc = r.json()
        assert doc["resolution"] == 21
        assert len(doc["x1"]) == 21
        assert len(doc["labels"]) == 441
        assert len(doc["border"]) == 441
        assert set(doc["border"]) <= {0, 1}
        assert doc["bbox"] == ds["bbox"]

    def test_unknown_model_is_404(self, client):
        r = client.post("/boundary", json={"model_id": "nope"})
        assert r.status_code == 404

    def test_resolution_caps(self, client):
        _, fit = self.make_model(client)
        for bad in (1, 502):
            r = client.post("/boundary", json={"model_id": fit["model_id"],
                                               "resolution": bad})
            assert r.status_code == 400

    def test_labels_match_separate_fits(self, client):
        # two identical fits produce pixel-identical grids
        ds, fit1 = self.make_model(client, seed=4)
        fit2 = client.post("/fit", json={"dataset_id": ds["dataset_id"],
                                         "variant": "mod2"}).json()
        g1 = client.post("/boundary", json={"model_id": fit1["model_id"],
                                            "resolution": 31}).json()
        g2 = client.post("/boundary", json={"model_id": fit2["model_id"],
                                            "resolution": 31}).json()
        assert g1["labels"] == g2["labels"]


class TestBench:
    def spec(self, reps=3):
        return {
            "seed": 2,
            "repetitions": reps,
            "datasets": [{"name": "basic",
                          "sim": {"scenario": "basic", "n": 90, "k": 2,
                                  "seed": 1}}],
            "models": [{"name": "original", "variant": "original"},
                       {"name": "mod2", "variant": "mod2"}],
        }

    def test_report_rows(self, client):
        r = client.post("/bench", json=self.spec())
        assert r.status_code == 200
        rows = r.json()["report"]["rows"]
        assert [row["model"] for row in rows] == ["original", "mod2"]
        for row in rows:
            assert row["repetitions"] == 3

    def test_repetition_cap_is_400(self, client):
        r = client.post("/bench", json=self.spec(reps=1001))
        assert r.status_code == 400

    def test_malformed_spec_is_400(self, client):
        r = client.post("/bench", json={"models": []})
        assert r.status_code == 400


class TestValidationShapes:
    def test_missing_field_is_400_with_location(self, client):
        r = client.post("/simulate", json={"n": 100})
        assert r.status_code == 400
        doc = r.json()
        assert doc["code"] == "invalid_request"
        assert "scenario" in doc["message"]

    def test_wrong_type_is_400(self, client):
        r = client.post("/simulate", json=simulate_payload(n="many"))
        assert r.status_code == 400


class TestSessionStore:
    def test_ttl_eviction_with_injected_clock(self):
        now = [0.0]
        store = SessionStore(ttl=10.0, clock=lambda: now[0])
        key = store.put("payload")
        assert store.get(key) == "payload"
        now[0] = 9.0
        assert store.get(key) == "payload"
        # the successful read at t=9 renewed the lease
        now[0] = 18.0
        assert store.get(key) == "payload"
        now[0] = 40.0
        assert store.get(key) is None
        assert len(store) == 0

    def test_expiry_via_http(self):
        now = [100.0]
        app = create_app(ttl=5.0, clock=lambda: now[0])
        with TestClient(app) as client:
            ds = client.post("/simulate", json=simulate_payload()).json()
            now[0] = 120.0
            r = client.post("/fit", json={"dataset_id": ds["dataset_id"],
                                          "variant": "mod2"})
            assert r.status_code == 404

    def test_concurrent_access_is_safe(self):
        store = SessionStore(ttl=60.0)
        errors = []

        def worker(i):
            try:
                for j in range(50):
                    key = store.put((i, j))
                    assert store.get(key) == (i, j)
            except Exception as exc:
                errors.append(exc)

        threads = [threading.Thread(target=worker, args=(i,)) for i in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors


class TestFullFlow:
    def test_side_by_side_comparison_payload(self, client):
        ds = client.post("/simulate",
                         json={"scenario": "outlier", "n": 300, "k": 2,
                               "seed": 3, "outlier_fraction": 0.15}).json()
        grids = {}
        errors = {}
        for variant in ("original", "mod2"):
            fit = client.post("/fit", json={"dataset_id": ds["dataset_id"],
                                            "variant": variant}).json()
            errors[variant] = fit["training_error"]
            grids[variant] = client.post(
                "/boundary", json={"model_id": fit["model_id"],
                                   "resolution": 41}).json()
        # same frame for a fair visual comparison
        assert grids["original"]["bbox"] == grids["mod2"]["bbox"]
        assert grids["original"]["x1"] == grids["mod2"]["x1"]
        # and the flanking-cluster effect is visible in the numbers
        assert errors["mod2"] < errors["original"]
        assert json.dumps(grids["mod2"])  # payload is JSON-serializable
