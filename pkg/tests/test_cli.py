"""End-to-end tests of the ``statec`` command line."""

from __future__ import annotations

import json

import pytest

from statepoly.cli import EXIT_BUDGET, EXIT_OK, EXIT_VALIDATION, main

DATA = "data/examples"


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv: str) -> tuple[int, dict]:
    code, out, err = run(capsys, *argv)
    assert err == ""
    return code, json.loads(out)


@pytest.fixture
def cubic_file(tmp_path):
    path = tmp_path / "cubic.ideal"
    path.write_text(
        "ring: x, y, z\nideal:\nx^2 - y*z\nx*y - z^2\n", encoding="utf-8"
    )
    return str(path)


@pytest.fixture
def conic_file(tmp_path):
    path = tmp_path / "conic.ideal"
    path.write_text("ring: x, y, z\nideal: x*z - y^2\n", encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------------------
# exit-code families


def test_missing_file_is_a_validation_error(capsys, tmp_path):
    code, out, err = run(capsys, "gb", "--ideal", str(tmp_path / "nope.ideal"))
    assert code == EXIT_VALIDATION
    assert out == ""
    assert "error:" in err


def test_parse_error_in_file_is_a_validation_error(capsys, tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("ring: x\nideal: x $ y\n", encoding="utf-8")
    code, _, err = run(capsys, "gb", "--ideal", str(bad))
    assert code == EXIT_VALIDATION
    assert "error:" in err


def test_unknown_order_is_a_validation_error(capsys, conic_file):
    code, _, err = run(capsys, "gb", "--ideal", conic_file, "--order", "mystery")
    assert code == EXIT_VALIDATION
    assert "unknown order" in err


def test_bad_parallel_is_a_validation_error(capsys, conic_file):
    code, _, err = run(capsys, "gb", "--ideal", conic_file, "--parallel", "0")
    assert code == EXIT_VALIDATION
    assert "--parallel" in err


def test_budget_flag_reports_partial_result(capsys, cubic_file):
    code, doc = run_json(
        capsys, "state", "--ideal", cubic_file, "--m", "2", "--budget", "1"
    )
    assert code == EXIT_BUDGET
    assert doc["payload"]["status"] == "budget_exhausted"
    assert doc["payload"]["query_count"] <= 1


def test_budget_env_variable(capsys, cubic_file, monkeypatch):
    monkeypatch.setenv("STATEC_BUDGET", "1")
    code, doc = run_json(capsys, "state", "--ideal", cubic_file, "--m", "2")
    assert code == EXIT_BUDGET
    assert doc["payload"]["status"] == "budget_exhausted"
    monkeypatch.setenv("STATEC_BUDGET", "junk")
    code, _, err = run(capsys, "state", "--ideal", cubic_file, "--m", "2")
    assert code == EXIT_VALIDATION
    assert "STATEC_BUDGET" in err


# ---------------------------------------------------------------------------
# determinism and output plumbing


def test_repeated_runs_are_byte_identical(capsys, cubic_file):
    code1, out1, _ = run(capsys, "state", "--ideal", cubic_file, "--m", "2")
    code2, out2, _ = run(capsys, "state", "--ideal", cubic_file, "--m", "2")
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert out1.endswith("\n")


def test_out_flag_writes_file_and_keeps_stdout_quiet(capsys, conic_file, tmp_path):
    target = tmp_path / "result.json"
    code, out, err = run(
        capsys, "gb", "--ideal", conic_file, "--out", str(target)
    )
    assert code == EXIT_OK
    assert out == "" and err == ""
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert doc["command"] == "gb"


def test_digest_tracks_arguments_and_file_content(capsys, cubic_file, tmp_path):
    _, doc_m2 = run_json(capsys, "state", "--ideal", cubic_file, "--m", "2")
    _, doc_m2_again = run_json(capsys, "state", "--ideal", cubic_file, "--m", "2")
    _, doc_m3 = run_json(capsys, "state", "--ideal", cubic_file, "--m", "3")
    assert doc_m2["input_digest"] == doc_m2_again["input_digest"]
    assert doc_m2["input_digest"] != doc_m3["input_digest"]

    other = tmp_path / "other.ideal"
    other.write_text(
        "ring: x, y, z\nideal:\nx^2 - y*z\nx*y - z^2\n# trailing comment\n",
        encoding="utf-8",
    )
    _, doc_other = run_json(capsys, "state", "--ideal", str(other), "--m", "2")
    assert doc_other["input_digest"] != doc_m2["input_digest"]
    assert doc_other["payload"] == doc_m2["payload"]


def test_parallel_flag_changes_nothing_but_the_digest(capsys, cubic_file):
    _, doc1 = run_json(capsys, "state", "--ideal", cubic_file, "--m", "2")
    _, doc2 = run_json(
        capsys, "state", "--ideal", cubic_file, "--m", "2", "--parallel", "2"
    )
    assert doc1["payload"] == doc2["payload"]


# ---------------------------------------------------------------------------
# golden runs per subcommand


def test_gb_golden(capsys, tmp_path):
    path = tmp_path / "gb.ideal"
    path.write_text(
        "ring: x, y\nideal:\nx^3 - 2*x*y\nx^2*y - 2*y^2 + x\n", encoding="utf-8"
    )
    code, doc = run_json(capsys, "gb", "--ideal", str(path), "--order", "grlex")
    assert code == EXIT_OK
    assert doc["payload"]["order"] == "grlex"
    assert sorted(doc["payload"]["basis"]) == ["x*y", "x^2", "y^2 - 1/2*x"]
    assert sorted(map(tuple, doc["payload"]["leads"])) == [(0, 2), (1, 1), (2, 0)]
    assert doc["warnings"] == ["input generators are not homogeneous"]


def test_initial_golden(capsys, cubic_file):
    code, doc = run_json(
        capsys, "initial", "--ideal", cubic_file, "--order", "lex"
    )
    assert code == EXIT_OK
    assert doc["payload"]["order"] == "lex"
    gens = [tuple(m) for m in doc["payload"]["generators"]]
    assert (2, 0, 0) in gens or (1, 1, 0) in gens
    assert doc["warnings"] == []


def test_state_golden(capsys, conic_file):
    code, doc = run_json(capsys, "state", "--ideal", conic_file, "--m", "2")
    assert code == EXIT_OK
    payload = doc["payload"]
    assert payload["status"] == "complete"
    assert payload["m"] == 2
    # the quadric contributes a single degree-two lead, either y^2 or x*z
    assert payload["q"] == 1
    vertices = [tuple(v) for v in payload["polytope"]["vertices"]]
    assert set(vertices) == {(0, 2, 0), (1, 0, 1)}
    assert set(payload["witnesses"]) == {
        ",".join(str(c) for c in v) for v in vertices
    }


def test_intersect_golden(capsys, tmp_path):
    path = tmp_path / "two.ideal"
    path.write_text("ring: x, y\nideal[1]: x\nideal[2]: y\n", encoding="utf-8")
    code, doc = run_json(capsys, "intersect", "--ideal", str(path))
    assert code == EXIT_OK
    assert doc["payload"]["generators"] == ["x*y"]


def test_eliminate_golden(capsys, tmp_path):
    path = tmp_path / "elim.ideal"
    path.write_text(
        "ring: t, x, y\nideal:\nx - t^2\ny - t^3\n", encoding="utf-8"
    )
    code, doc = run_json(capsys, "eliminate", "--ideal", str(path), "--keep", "1,2")
    assert code == EXIT_OK
    assert doc["payload"]["keep"] == [1, 2]
    assert doc["payload"]["generators"] == ["x^3 - y^2"]


def test_implicitize_golden(capsys, tmp_path):
    path = tmp_path / "veronese.ideal"
    path.write_text("ring: s, t\nideal:\ns^2\ns*t\nt^2\n", encoding="utf-8")
    code, doc = run_json(capsys, "implicitize", "--ideal", str(path), "--nvars", "3")
    assert code == EXIT_OK
    assert doc["payload"]["variables"] == ["x0", "x1", "x2"]
    assert doc["payload"]["generators"] == ["x1^2 - x0*x2"]


def test_chain_state_golden(capsys):
    code, doc = run_json(
        capsys, "chain-state", "--ideal", f"{DATA}/planecurve_chain.ideal", "--m", "2"
    )
    assert code == EXIT_OK
    payload = doc["payload"]
    assert payload["status"] == "complete"
    assert payload["tau"] == [2, 2, 0, 2, 2]
    assert payload["mixed_monomial_count"] == 4
    assert payload["polytope"]["vertices"]


def test_tau_golden(capsys):
    code, doc = run_json(capsys, "tau", "--blocks", "0,1,2,3", "--m", "2")
    assert code == EXIT_OK
    assert doc["payload"]["tau"] == [2, 1, 1, 2]
    assert doc["payload"]["mixed_monomial_count"] == 3

    code, _, err = run(capsys, "tau", "--blocks", "0,1,2,3", "--m", "2", "--nvars", "7")
    assert code == EXIT_VALIDATION
    assert "disagrees" in err


def test_decompose_point_golden(capsys):
    code, doc = run_json(
        capsys,
        "decompose-point",
        "--blocks",
        "0,2,4",
        "--point",
        "1,2,3,2,1",
        "--levels",
        "5,4",
    )
    assert code == EXIT_OK
    assert doc["payload"]["summands"] == [[1, 2, 2, 0, 0], [0, 0, 1, 2, 1]]


def test_contains_golden(capsys, tmp_path):
    code, doc = run_json(
        capsys,
        "contains",
        "--polytope",
        "data/bridge/elliptic.json",
        "--point",
        "0,0,0,0,1,0,3,0,0,0,0,0",
    )
    assert code == EXIT_OK
    assert doc["payload"]["inside"] is True
    assert doc["payload"]["coefficients"] is not None

    code, doc = run_json(
        capsys,
        "contains",
        "--polytope",
        "data/bridge/elliptic.json",
        "--point",
        "0,0,0,0,4,0,0,0,0,0,0,0",
    )
    assert code == EXIT_OK
    assert doc["payload"]["inside"] is False
    assert doc["payload"]["separator"] is not None


def test_semistable_direct_golden(capsys, tmp_path):
    path = tmp_path / "points.ideal"
    path.write_text("ring: x, y\nideal: x*y\n", encoding="utf-8")
    code, doc = run_json(capsys, "semistable", "--ideal", str(path), "--m", "2")
    assert code == EXIT_OK
    payload = doc["payload"]
    assert payload["route"] == "direct"
    assert payload["member_of_hull"] is True
    assert any("slice counts" in w for w in doc["warnings"])


def test_semistable_chain_golden(capsys):
    code, doc = run_json(
        capsys, "semistable", "--ideal", f"{DATA}/planecurve_chain.ideal", "--m", "2"
    )
    assert code == EXIT_OK
    payload = doc["payload"]
    assert payload["route"] == "components"
    assert len(payload["summands"]) == 2
    assert len(payload["components"]) == 2
    assert payload["member_of_hull"] == all(
        entry["inside"] for entry in payload["components"]
    )


def test_hm_direct_golden(capsys, tmp_path):
    path = tmp_path / "points.ideal"
    path.write_text("ring: x, y\nideal: x*y\n", encoding="utf-8")
    code, doc = run_json(
        capsys, "hm", "--ideal", str(path), "--m", "1", "--weights", "1,0"
    )
    assert code == EXIT_OK
    assert doc["payload"]["mu"] == 0
    assert doc["payload"]["p_value"] == 2

    code, _, err = run(capsys, "hm", "--ideal", str(path), "--m", "1")
    assert code == EXIT_VALIDATION
    assert "--weights" in err


def test_hm_chain_golden(capsys):
    code, doc = run_json(
        capsys,
        "hm",
        "--ideal",
        f"{DATA}/planecurve_chain.ideal",
        "--m",
        "2",
        "--weights",
        "1,1,0,0,0",
    )
    assert code == EXIT_OK
    payload = doc["payload"]
    assert "junction_term" in payload
    assert [c["index"] for c in payload["components"]] == [1, 2]


def test_rosary_wtable_csv(capsys):
    code, out, err = run(capsys, "rosary", "--r", "4")
    assert code == EXIT_OK and err == ""
    lines = out.strip().splitlines()
    assert lines[0] == "r,w2_closed,w2_rec,w3_closed,w3_rec,agree"
    assert lines[1].startswith("1,6,6,34,34,")
    assert lines[4].startswith("4,248,248,2460,2460,")
    assert len(lines) == 5

    code, doc = run_json(capsys, "rosary", "--r", "2", "--format", "json")
    assert code == EXIT_OK
    assert doc["payload"]["rows"][1]["w2_closed"] == 52


def test_rosary_component_and_check(capsys):
    code, doc = run_json(
        capsys, "rosary", "--r", "2", "--what", "component", "--l", "2"
    )
    assert code == EXIT_OK
    assert len(doc["payload"]["generators"]) == 6

    code, doc = run_json(capsys, "rosary", "--r", "2", "--what", "check", "--d", "2")
    assert code == EXIT_OK
    assert doc["payload"]["ok"] is True
    assert doc["payload"]["missing"] == []
    assert doc["payload"]["extra"] == []

    code, _, err = run(capsys, "rosary", "--r", "2", "--what", "component")
    assert code == EXIT_VALIDATION
    assert "--l" in err


def test_csv_rejected_for_non_tabular_payload(capsys, conic_file):
    code, _, err = run(capsys, "gb", "--ideal", conic_file, "--format", "csv")
    assert code == EXIT_VALIDATION
    assert "tabular" in err
