import json
import time

import pytest
from fastapi.testclient import TestClient

from netgame.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


@pytest.fixture
def complete_doc(data_dir):
    return json.loads((data_dir / "complete_example.json").read_text())


@pytest.fixture
def degree_doc(data_dir):
    return json.loads((data_dir / "ten_by_five.json").read_text())


def load(client, doc):
    resp = client.post("/games", json=doc)
    assert resp.status_code == 201
    return resp.json()["game_id"]


class TestLoading:
    def test_load_returns_metadata(self, client, complete_doc):
        resp = client.post("/games", json=complete_doc)
        assert resp.status_code == 201
        body = resp.json()
        assert body["kind"] == "link_bias"
        assert body["n"] == 10
        assert body["schema_version"] == "1"

    def test_content_hash_ids_are_idempotent(self, client, complete_doc):
        assert load(client, complete_doc) == load(client, complete_doc)

    def test_invalid_document_is_400(self, client):
        resp = client.post("/games", json={"schema_version": "1", "kind": "degree",
                                           "n": 2, "d": [1]})
        assert resp.status_code == 400

    def test_unknown_game_is_404(self, client):
        assert client.get("/games/feedbeef/anarchy").status_code == 404

    def test_game_info_carries_labels(self, client, complete_doc):
        gid = load(client, complete_doc)
        info = client.get(f"/games/{gid}").json()
        assert info["labels"] == [str(i) for i in range(1, 11)]
        assert info["parent_id"] is None


class TestAnalysis:
    def test_anarchy_endpoint(self, client, complete_doc):
        gid = load(client, complete_doc)
        body = client.get(f"/games/{gid}/anarchy").json()
        assert body["report"]["worst_stable_value"] == 1077
        assert body["report"]["best_value"] == 1487
        assert body["report"]["poa_ratio"] == pytest.approx(0.724277, abs=1e-6)
        assert body["game_hash"] == gid

    def test_stable_and_best_graphs(self, client, complete_doc):
        gid = load(client, complete_doc)
        stable = client.get(f"/games/{gid}/stable").json()
        assert stable["communal_value"] == 1077
        assert len(stable["graph"]["edges"]) == 13
        best = client.get(f"/games/{gid}/best").json()
        assert best["communal_value"] == 1487

    def test_degree_game_solves(self, client, degree_doc):
        gid = load(client, degree_doc)
        stable = client.get(f"/games/{gid}/stable").json()
        assert stable["communal_value"] == -8  # worst stable, cost 8
        best = client.get(f"/games/{gid}/best").json()
        assert best["communal_value"] == 0

    def test_summary_rows_and_pareto(self, client, complete_doc):
        gid = load(client, complete_doc)
        body = client.get(f"/games/{gid}/summary").json()
        assert [r["communal_utility_change"] for r in body["rows"]] == \
            [178, 153, 285, 190, 193, 42, 213, 221, 103, 576]
        assert body["pareto"] == [9]

    def test_summary_on_degree_game_is_409(self, client, degree_doc):
        gid = load(client, degree_doc)
        assert client.get(f"/games/{gid}/summary").status_code == 409

    def test_repeated_gets_identical(self, client, complete_doc):
        gid = load(client, complete_doc)
        a = client.get(f"/games/{gid}/anarchy").content
        b = client.get(f"/games/{gid}/anarchy").content
        assert a == b


class TestWhatIf:
    def test_remove_vertex_ten(self, client, complete_doc):
        gid = load(client, complete_doc)
        resp = client.post(f"/games/{gid}/whatif", json={"remove": 9})
        assert resp.status_code == 200
        body = resp.json()
        after = body["whatif"]["report_after"]
        assert after["worst_stable_value"] == 501
        assert after["best_value"] == 789
        derived = body["derived_game_id"]
        assert derived != gid
        anarchy = client.get(f"/games/{derived}/anarchy").json()
        assert anarchy["report"]["worst_stable_value"] == 501

    def test_chained_exploration_and_undo(self, client, complete_doc):
        gid = load(client, complete_doc)
        first = client.post(f"/games/{gid}/whatif", json={"remove": 9}).json()
        second = client.post(f"/games/{first['derived_game_id']}/whatif",
                             json={"remove": 0}).json()
        undo1 = client.post(f"/games/{second['derived_game_id']}/undo").json()
        assert undo1["game_id"] == first["derived_game_id"]
        undo2 = client.post(f"/games/{undo1['game_id']}/undo").json()
        assert undo2["game_id"] == gid

    def test_undo_at_root_is_409(self, client, complete_doc):
        gid = load(client, complete_doc)
        assert client.post(f"/games/{gid}/undo").status_code == 409

    def test_path_independence(self, client, complete_doc):
        gid = load(client, complete_doc)
        derived = client.post(f"/games/{gid}/whatif",
                              json={"remove": 9}).json()["derived_game_id"]
        via_api = client.post(f"/games/{derived}/whatif", json={"remove": 0}).json()

        reduced = [row[:9] for row in complete_doc["c"][:9]]
        fresh_doc = {"schema_version": "1", "kind": "link_bias", "n": 9,
                     "c": reduced}
        fresh = load(client, fresh_doc)
        direct = client.post(f"/games/{fresh}/whatif", json={"remove": 0}).json()
        assert via_api["whatif"] == direct["whatif"]

    def test_out_of_range_is_422(self, client, complete_doc):
        gid = load(client, complete_doc)
        assert client.post(f"/games/{gid}/whatif",
                           json={"remove": 10}).status_code == 422

    def test_whatif_on_degree_game_is_409(self, client, degree_doc):
        gid = load(client, degree_doc)
        assert client.post(f"/games/{gid}/whatif",
                           json={"remove": 0}).status_code == 409

    def test_derived_labels_drop_removed_vertex(self, client, complete_doc):
        gid = load(client, complete_doc)
        derived = client.post(f"/games/{gid}/whatif",
                              json={"remove": 9}).json()["derived_game_id"]
        info = client.get(f"/games/{derived}").json()
        assert info["labels"] == [str(i) for i in range(1, 10)]
        assert info["parent_id"] == gid


class TestSimulation:
    def test_small_batch_is_synchronous(self, client, degree_doc):
        gid = load(client, degree_doc)
        resp = client.post(f"/games/{gid}/simulate", json={"runs": 5, "seed": 42})
        assert resp.status_code == 200
        body = resp.json()
        assert body["runs"] == 5
        assert len(body["poa_values"]) == 5
        assert "degree_distribution" in body["statistics"]

    def test_simulate_on_link_bias_is_409(self, client, complete_doc):
        gid = load(client, complete_doc)
        assert client.post(f"/games/{gid}/simulate",
                           json={"runs": 2, "seed": 1}).status_code == 409

    def test_zero_runs_is_422(self, client, degree_doc):
        gid = load(client, degree_doc)
        assert client.post(f"/games/{gid}/simulate",
                           json={"runs": 0, "seed": 1}).status_code == 422

    def test_large_batch_becomes_job(self, degree_doc):
        client = TestClient(create_app(sync_threshold=0.0))
        gid = load(client, degree_doc)
        resp = client.post(f"/games/{gid}/simulate", json={"runs": 3, "seed": 2})
        assert resp.status_code == 202
        job_id = resp.json()["job_id"]
        for _ in range(200):
            status = client.get(f"/jobs/{job_id}").json()
            if status["status"] != "running":
                break
            time.sleep(0.01)
        assert status["status"] == "done"
        assert status["result"]["runs"] == 3

    def test_unknown_job_is_404(self, client):
        assert client.get("/jobs/nope").status_code == 404

    def test_sync_and_async_results_agree(self, degree_doc):
        sync_client = TestClient(create_app(sync_threshold=1e9))
        async_client = TestClient(create_app(sync_threshold=0.0))
        gid_s = load(sync_client, degree_doc)
        gid_a = load(async_client, degree_doc)
        sync_body = sync_client.post(f"/games/{gid_s}/simulate",
                                     json={"runs": 4, "seed": 9}).json()
        resp = async_client.post(f"/games/{gid_a}/simulate",
                                 json={"runs": 4, "seed": 9})
        job_id = resp.json()["job_id"]
        for _ in range(200):
            status = async_client.get(f"/jobs/{job_id}").json()
            if status["status"] != "running":
                break
            time.sleep(0.01)
        assert status["result"] == sync_body
