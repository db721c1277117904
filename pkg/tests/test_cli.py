import json

import pytest

from app.main import main
from app.utils.config import Config
from app.utils.errors import NotMonicError

WORKED_BUILD = ["build", "--backend", "ff", "--p", "3", "--d", "2", "--n", "2", "--a", "[[0,1],[1,0]]"]

WORKED_SECTION = {
    "n": 2,
    "a": [{"x": 0, "y": 1}, {"x": 1, "y": 0}],
    "b": [{"x": 0, "y": 2}, {"x": 1, "y": 0}],
    "alpha": {"x": 0, "y": 1},
    "X": {
        "n": 2,
        "entries": [
            [{"x": 0, "y": 1}, {"x": 0, "y": 2}],
            [{"x": 0, "y": 1}, {"x": 0, "y": 1}],
        ],
    },
    "report": {
        "membership": True,
        "charpoly_match": True,
        "conjugacy_match": True,
        "b_parity": True,
        "placement_match": True,
        "first_failure": None,
    },
}


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


def test_build_golden_output(capsys):
    status, first = run(capsys, *WORKED_BUILD)
    assert status == 0
    assert json.loads(first) == WORKED_SECTION
    _, second = run(capsys, *WORKED_BUILD)
    assert first == second


def test_build_zero_tuple(capsys):
    status, out = run(capsys, "build", "--p", "5", "--a", "[[0,0],[0,0],[0,0]]")
    assert status == 0
    entries = json.loads(out)["X"]["entries"]
    nonzero = [(i, j) for i, row in enumerate(entries) for j, e in enumerate(row) if e != {"x": 0, "y": 0}]
    assert nonzero == [(1, 0), (2, 1)]
    assert entries[1][0] == {"x": 0, "y": 1}


def test_build_rational(capsys):
    status, out = run(capsys, "build", "--backend", "rational", "--a", '[["0","1"],["1","0"]]')
    assert status == 0
    assert json.loads(out)["b"][0] == {"x": "0/1", "y": "1/2"}


def test_build_reads_tuple_from_file(capsys, tmp_path):
    path = tmp_path / "a.json"
    path.write_text("[[0,1],[1,0]]")
    status, out = run(capsys, "build", "--p", "3", "--a", str(path))
    assert status == 0
    assert json.loads(out) == WORKED_SECTION


def test_build_with_alpha_override(capsys):
    status, out = run(capsys, *WORKED_BUILD, "--alpha", "[0,2]")
    assert status == 0
    assert json.loads(out)["alpha"] == {"x": 0, "y": 2}


@pytest.mark.parametrize("argv, code", [
    (["build", "--p", "2", "--n", "2", "--a", "[[0,1],[1,0]]"], "non-invertible-2"),
    (["build", "--p", "3", "--a", "[[1,0],[1,0]]"], "codomain-violation"),
    (WORKED_BUILD + ["--alpha", "[1,0]"], "invalid-alpha"),
    (["build", "--p", "9", "--a", "[[0,1]]"], "invalid-descriptor"),
    (["build", "--backend", "rational", "--a", "[[1e400, 0]]"], "invalid-element"),
    (["verify", "--p", "3", "--matrix", '{"n": 1, "entries": 5}'], "invalid-element"),
])
def test_domain_errors_exit_one(capsys, argv, code):
    status, out = run(capsys, *argv)
    assert status == 1
    payload = json.loads(out)
    assert payload["success"] is False
    assert payload["error"] == code


@pytest.mark.parametrize("argv", [
    ["build", "--p", "3"],
    ["build", "--p", "3", "--n", "3", "--a", "[[0,1],[1,0]]"],
    ["verify", "--matrix", "[[[0,0]]]", "--alpha", "[0,1]"],
    ["campaign", "--n", "2"],
    ["frobnicate"],
    ["build", "--a", "not json"],
])
def test_usage_errors_exit_two(capsys, argv):
    status, out = run(capsys, *argv)
    assert status == 2
    assert json.loads(out)["error"] == "usage-error"


def test_verify_gram_matrix_fails(capsys):
    status, out = run(capsys, "verify", "--p", "3", "--matrix", "[[[0,0],[1,0]],[[1,0],[0,0]]]")
    assert status == 1
    payload = json.loads(out)
    assert payload["membership"] is False
    assert payload["first_failure"] == {"i": 1, "j": 1, "value": {"x": 2, "y": 0}}
    assert payload["invariants"] is None


def test_verify_worked_section(capsys):
    status, out = run(capsys, "verify", "--p", "3", "--matrix", json.dumps(WORKED_SECTION["X"]))
    assert status == 0
    payload = json.loads(out)
    assert payload["membership"] and payload["paths_agree"] and payload["krylov_unit"]
    assert payload["invariants"] == WORKED_SECTION["a"]
    assert payload["descriptor"] == {"backend": "finite-field-quadratic", "p": 3, "d": 2, "N": None}


@pytest.mark.parametrize("n, char, status, verdict", [
    ("3", "2", 0, "yes-over-o"),
    ("4", "2", 1, "no-guarantee"),
    ("4", "3", 0, "yes-over-o"),
])
def test_exists(capsys, n, char, status, verdict):
    code, out = run(capsys, "exists", "--n", n, "--char", char)
    assert code == status
    assert json.loads(out)["status"] == verdict


def test_exists_odd_n_in_characteristic_two_is_not_constructive(capsys):
    _, out = run(capsys, "exists", "--n", "3", "--char", "2")
    payload = json.loads(out)
    assert payload["constructive_here"] is False
    assert payload["theorem_case"] == "odd-n"


def test_sample_is_reproducible(capsys):
    argv = ["sample", "--p", "3", "--n", "2", "--count", "5", "--seed", "7"]
    status, first = run(capsys, *argv)
    assert status == 0
    _, second = run(capsys, *argv)
    assert first == second
    assert len(json.loads(first)["samples"]) == 5


def test_descriptor_from_environment(capsys, monkeypatch):
    monkeypatch.setattr(Config, "DESCRIPTOR", '{"backend": "series", "p": 5, "N": 2}')
    _, out = run(capsys, "sample", "--n", "1", "--seed", "1")
    payload = json.loads(out)
    assert payload["config"]["descriptor"]["backend"] == "truncated-series-quadratic"
    assert len(payload["samples"][0]["entries"][0][0]["coeffs"]) == 2

    _, out = run(capsys, "sample", "--n", "1", "--seed", "1", "--backend", "ff")
    assert json.loads(out)["config"]["descriptor"] == {"backend": "finite-field-quadratic", "p": 3, "d": None, "N": None}


def test_campaign(capsys):
    status, out = run(capsys, "campaign", "--p", "5", "--n", "3", "--campaign", "round-trip", "--count", "10", "--workers", "2")
    assert status == 0
    payload = json.loads(out)
    assert (payload["passes"], payload["failures"]) == (10, 0)


def test_exhaustive_negative_control(capsys):
    status, out = run(capsys, "campaign", "--p", "3", "--n", "2", "--campaign", "negative-control", "--exhaustive")
    assert status == 0
    assert json.loads(out)["passes"] == 9


def test_negative_control_at_n_one(capsys):
    status, out = run(capsys, "campaign", "--p", "3", "--n", "1", "--campaign", "negative-control")
    assert status == 1
    assert json.loads(out)["error"] == "dimension-mismatch"


def test_oracle(capsys):
    status, out = run(capsys, "oracle", "--n", "2")
    assert status == 0
    payload = json.loads(out)
    assert [c["expression"] for c in payload["coefficients"]][0] == "2*b1"
    assert payload["alpha_independent"] is True


def test_output_file(capsys, tmp_path):
    target = tmp_path / "section.json"
    status, out = run(capsys, *WORKED_BUILD, "--output", str(target))
    assert status == 0
    assert out == ""
    assert json.loads(target.read_text()) == WORKED_SECTION


def test_failed_command_is_logged(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr(Config, "LOG_DIR", str(tmp_path))
    status, _ = run(capsys, "verify", "--p", "2", "--matrix", "[[[0,0]]]")
    assert status == 1
    log = (tmp_path / "commands" / "verify.log").read_text()
    assert "NonInvertibleTwoError" in log


def test_error_payload_shape(capsys):
    status, out = run(capsys, "build", "--a", "[[0,1]]", "--n", "2")
    assert status == 2
    assert json.loads(out)["data"] == {"n": 2}
    assert NotMonicError("Leading coefficient must be exactly 1").to_dict() == {
        "error": "not-monic",
        "message": "Leading coefficient must be exactly 1",
        "data": None,
    }


def test_log_directory_can_change(capsys, monkeypatch, tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    for log_dir in (first, second):
        monkeypatch.setattr(Config, "LOG_DIR", str(log_dir))
        assert run(capsys, "build", "--p", "3", "--a", "[[1,0]]")[0] == 1
    assert "CodomainViolationError" in (first / "commands" / "build.log").read_text()
    assert "CodomainViolationError" in (second / "commands" / "build.log").read_text()
