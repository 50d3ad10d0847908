import json
import socket
import subprocess
import sys
import time
import urllib.request

import pytest

from anpkit.cli import DEFAULT_PORT, main, resolve_port
from anpkit.errors import InvalidModel
from anpkit.network import network_to_dict, railway_model_path
from conftest import TABLE3_ORDER, planted_judgment_rows, write_json


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "anpkit.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc


def test_validate_railway_model():
    proc = run_cli("validate", str(railway_model_path()))
    assert proc.returncode == 0
    assert proc.stdout.startswith("ok:")


def test_validate_missing_file():
    proc = run_cli("validate", "no-such-model.json")
    assert proc.returncode == 2
    assert "model not found" in proc.stderr


def test_validate_dangling_link(tmp_path, railway):
    doc = network_to_dict(railway)
    doc["links"].append({"source": "e11", "target": "e99", "kind": "inner"})
    path = write_json(tmp_path / "bad.json", doc)
    proc = run_cli("validate", str(path))
    assert proc.returncode == 1
    assert "dangling_link" in proc.stdout


def test_questionnaire_railway_count():
    proc = run_cli("questionnaire", str(railway_model_path()))
    assert proc.returncode == 0
    assert "questions: 108" in proc.stdout
    assert "contexts: 19" in proc.stdout


def test_questionnaire_tiny_model(tmp_path):
    doc = {
        "goal": "goal",
        "clusters": [
            {"id": "K", "label": "K", "elements": [{"id": "x", "label": "X"}, {"id": "y", "label": "Y"}]}
        ],
        "links": [{"source": "goal", "target": "K", "kind": "outer"}],
    }
    path = write_json(tmp_path / "tiny.json", doc)
    proc = run_cli("questionnaire", str(path))
    assert proc.returncode == 0
    assert "questions: 1" in proc.stdout


def test_questionnaire_linkless_models(tmp_path):
    two = {
        "goal": "goal",
        "clusters": [
            {"id": "A", "label": "A", "elements": [{"id": "a1", "label": "a1"}]},
            {"id": "B", "label": "B", "elements": [{"id": "b1", "label": "b1"}]},
        ],
        "links": [],
    }
    proc = run_cli("questionnaire", str(write_json(tmp_path / "two.json", two)))
    assert proc.returncode == 0
    assert "questions: 1" in proc.stdout

    one = {
        "goal": "goal",
        "clusters": [{"id": "A", "label": "A", "elements": [{"id": "a1"}, {"id": "a2"}]}],
        "links": [],
    }
    proc = run_cli("questionnaire", str(write_json(tmp_path / "one.json", one)))
    assert proc.returncode == 0
    assert "questions: 0" in proc.stdout


def test_run_planted_fixture(tmp_path, railway, planted_rows):
    judgments = write_json(tmp_path / "judgments.json", planted_rows)
    out = tmp_path / "report.json"
    proc = run_cli("run", str(railway_model_path()), str(judgments), "-o", str(out))
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
    report = json.loads(out.read_text(encoding="utf-8"))
    assert len(report["elements"]) == 15
    assert "PASS" in proc.stdout
    assert "elements:" in proc.stdout
    # ranking printed to 5 decimals
    top = report["elements"][0]
    assert f"{top['weight']:.5f}" in proc.stdout


def test_run_byte_identical_reports(tmp_path, railway, planted_rows):
    judgments = write_json(tmp_path / "judgments.json", planted_rows)
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    p1 = run_cli("run", str(railway_model_path()), str(judgments), "-o", str(out1))
    p2 = run_cli("run", str(railway_model_path()), str(judgments), "-o", str(out2))
    assert p1.returncode == p2.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert p1.stdout.replace(str(out1), "") == p2.stdout.replace(str(out2), "")


def test_run_gate_failure_exit_1(tmp_path, railway, planted_rows):
    rows = [dict(r) for r in planted_rows]
    for r in rows:
        if r["context"] == "e11":
            pair = (r["row"], r["col"])
            r["value"] = {"e12-e13": "9", "e13-e14": "9", "e12-e14": "1/9"}["-".join(pair)]
    judgments = write_json(tmp_path / "judgments.json", rows)
    proc = run_cli("run", str(railway_model_path()), str(judgments), "-o", str(tmp_path / "r.json"))
    assert proc.returncode == 1
    assert "consistency gate failed" in proc.stderr
    assert "e11" in proc.stderr


def test_run_incomplete_exit_1(tmp_path, railway, planted_rows):
    judgments = write_json(tmp_path / "judgments.json", planted_rows[:-1])
    proc = run_cli("run", str(railway_model_path()), str(judgments), "-o", str(tmp_path / "r.json"))
    assert proc.returncode == 1
    assert "incomplete" in proc.stderr


def test_run_missing_judgment_file(tmp_path):
    proc = run_cli("run", str(railway_model_path()), str(tmp_path / "none.json"), "-o", str(tmp_path / "r.json"))
    assert proc.returncode == 2


def test_run_debug_matrices(tmp_path, railway, planted_rows):
    judgments = write_json(tmp_path / "judgments.json", planted_rows)
    proc = run_cli(
        "run", str(railway_model_path()), str(judgments),
        "-o", str(tmp_path / "r.json"), "--debug-matrices",
    )
    assert proc.returncode == 0
    for stage in ("unweighted", "weighted", "limit"):
        assert f"--- {stage} supermatrix (19x19) ---" in proc.stdout


def test_run_prints_table3_fixture_order(tmp_path, railway):
    # report fixture carrying the published element block: the printed
    # ranking must follow it exactly
    from anpkit.supermatrix import extract_rank
    from test_supermatrix import table3_limit

    ranked = extract_rank(table3_limit(railway), railway)
    assert ranked.element_order() == TABLE3_ORDER


def test_resolve_port_precedence():
    assert resolve_port(9999, env={"ANP_PORT": "7777"}) == 9999
    assert resolve_port(None, env={"ANP_PORT": "7777"}) == 7777
    assert resolve_port(None, env={}) == DEFAULT_PORT
    with pytest.raises(InvalidModel):
        resolve_port(None, env={"ANP_PORT": "abc"})


def _free_port():
    s = socket.socket()
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
    s.close()
    return port


def test_serve_occupied_port(tmp_path):
    blocker = socket.socket()
    blocker.bind(("127.0.0.1", 0))
    port = blocker.getsockname()[1]
    try:
        proc = run_cli("serve", "--port", str(port), "--data", str(tmp_path / "data"))
        assert proc.returncode == 2
        assert "already in use" in proc.stderr
    finally:
        blocker.close()


def test_serve_smoke(tmp_path):
    port = _free_port()
    proc = subprocess.Popen(
        [sys.executable, "-m", "anpkit.cli", "serve", "--port", str(port), "--data", str(tmp_path / "data")],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        text=True,
    )
    try:
        deadline = time.time() + 15
        last_err = None
        while time.time() < deadline:
            try:
                req = urllib.request.Request(
                    f"http://127.0.0.1:{port}/sessions",
                    data=json.dumps({"model": json.loads(railway_model_path().read_text()), "experts": ["e1"]}).encode(),
                    headers={"Content-Type": "application/json"},
                    method="POST",
                )
                with urllib.request.urlopen(req, timeout=2) as resp:
                    body = json.loads(resp.read())
                    assert "session_id" in body
                    break
            except (ConnectionError, OSError) as exc:
                last_err = exc
                time.sleep(0.2)
        else:
            pytest.fail(f"server never came up: {last_err}")
    finally:
        proc.terminate()
        proc.wait(timeout=10)
