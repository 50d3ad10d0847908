import json

import pytest
from fastapi.testclient import TestClient

from anpkit.network import network_to_dict
from anpkit.service import create_app
from anpkit.session import SessionStore
from conftest import planted_judgment_rows


@pytest.fixture
def client(tmp_path, railway):
    store = SessionStore(tmp_path / "sessions")
    app = create_app(store, model_dir=tmp_path)
    with TestClient(app) as c:
        c.railway_doc = network_to_dict(railway)
        yield c


def create_session(client, experts=("e1",)):
    resp = client.post("/sessions", json={"model": client.railway_doc, "experts": list(experts)})
    assert resp.status_code == 201, resp.text
    return resp.json()["session_id"]


def test_create_session_inline_model(client):
    sid = create_session(client)
    assert isinstance(sid, str) and sid


def test_create_session_from_path(client, tmp_path, railway):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(network_to_dict(railway)), encoding="utf-8")
    resp = client.post("/sessions", json={"model": "m.json", "experts": ["e1"]})
    assert resp.status_code == 201


def test_create_session_invalid_model(client):
    resp = client.post("/sessions", json={"model": {"goal": "g"}, "experts": ["e1"]})
    assert resp.status_code == 400
    assert resp.json()["error"] == "invalid_model"


def test_questionnaire_endpoint(client):
    sid = create_session(client)
    resp = client.get(f"/sessions/{sid}/questionnaire")
    assert resp.status_code == 200
    body = resp.json()
    assert body["total"] == 108
    assert body["expected_per_expert"] == 108
    assert body["questions"][0]["context"] == "goal"


def test_unknown_session_404(client):
    resp = client.get("/sessions/nope/questionnaire")
    assert resp.status_code == 404
    assert resp.json()["error"] == "unknown_session"


def test_submit_judgment_flow(client):
    sid = create_session(client)
    put = lambda row, col, value: client.put(
        f"/sessions/{sid}/judgments",
        json={"expert": "e1", "context": "goal", "row": row, "col": col, "value": value},
    )
    r = put("C1", "C2", "2")
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "incomplete"
    assert body["consistency"] is None
    assert body["context_filled"] == 1
    assert body["context_expected"] == 3

    put("C1", "C3", "4")
    r = put("C2", "C3", "2")
    body = r.json()
    assert body["status"] == "context-complete"
    assert body["consistency"]["pass"] is True
    assert body["consistency"]["cr"] == pytest.approx(0.0, abs=1e-9)


def test_submit_errors(client):
    sid = create_session(client)
    base = {"expert": "e1", "context": "goal", "row": "C1", "col": "C2", "value": "3"}
    resp = client.put(f"/sessions/{sid}/judgments", json={**base, "expert": "ghost"})
    assert resp.status_code == 404
    assert resp.json()["error"] == "unknown_expert"
    resp = client.put(f"/sessions/{sid}/judgments", json={**base, "context": "zzz"})
    assert resp.status_code == 404
    assert resp.json()["error"] == "unknown_context"
    resp = client.put(f"/sessions/{sid}/judgments", json={**base, "col": "e11"})
    assert resp.status_code == 404
    assert resp.json()["error"] == "unknown_pair"
    resp = client.put(f"/sessions/{sid}/judgments", json={**base, "value": "10"})
    assert resp.status_code == 422
    assert resp.json()["error"] == "value_not_on_scale"


def test_consistency_endpoint(client, railway):
    sid = create_session(client)
    for row in ({"row": "C1", "col": "C2", "value": "9"},
                {"row": "C2", "col": "C3", "value": "9"},
                {"row": "C1", "col": "C3", "value": "1/9"}):
        client.put(
            f"/sessions/{sid}/judgments",
            json={"expert": "e1", "context": "goal", **row},
        )
    resp = client.get(f"/sessions/{sid}/consistency")
    assert resp.status_code == 200
    body = resp.json()
    assert body["progress"]["stored_total"] == 3
    assert body["progress"]["expected_total"] == 108
    goal = next(c for c in body["contexts"] if c["context"] == "goal")
    report = goal["experts"]["e1"]
    assert report["pass"] is False
    assert report["cr"] > 0.1
    assert report["worst_triad"]["row"] in ("C1", "C2", "C3")
    # aggregate across the full panel equals the lone expert's matrix report
    assert goal["aggregate"]["cr"] == pytest.approx(report["cr"], abs=1e-12)


def test_compute_incomplete_409(client):
    sid = create_session(client)
    resp = client.post(f"/sessions/{sid}/compute")
    assert resp.status_code == 409
    assert resp.json()["error"] == "incomplete"


def test_report_404_before_compute(client):
    sid = create_session(client)
    resp = client.get(f"/sessions/{sid}/report")
    assert resp.status_code == 404
    assert resp.json()["error"] == "not_computed"


def test_full_elicitation_loop(client, railway):
    sid = create_session(client, experts=("e1", "e2"))
    for row in planted_judgment_rows(railway, experts=("e1", "e2")):
        resp = client.put(f"/sessions/{sid}/judgments", json=row | {"expert": row["expert"]})
        assert resp.status_code == 200
    resp = client.post(f"/sessions/{sid}/compute")
    assert resp.status_code == 200, resp.text
    report = resp.json()
    assert len(report["elements"]) == 15
    assert report["convergence"]["mode"] in ("power", "cesaro")
    assert all(r["pass"] for r in report["consistency"])

    again = client.get(f"/sessions/{sid}/report")
    assert again.status_code == 200
    assert again.json() == report


def test_compute_gate_failure_422(client, railway):
    sid = create_session(client)
    for row in planted_judgment_rows(railway):
        client.put(f"/sessions/{sid}/judgments", json=row | {"expert": "e1"})
    for row, col, value in (("e12", "e13", "9"), ("e13", "e14", "9"), ("e12", "e14", "1/9")):
        client.put(
            f"/sessions/{sid}/judgments",
            json={"expert": "e1", "context": "e11", "row": row, "col": col, "value": value},
        )
    resp = client.post(f"/sessions/{sid}/compute")
    assert resp.status_code == 422
    body = resp.json()
    assert body["error"] == "consistency_gate_failed"
    assert any(item["context"] == "e11" for item in body["detail"])
