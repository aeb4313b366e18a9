import json

import pytest

import main as cli
from main import EXIT_BAD_INPUT, EXIT_FAILED, EXIT_INTERNAL, EXIT_OK, main
from tdpair.errors import InternalInconsistencyError


@pytest.fixture
def pair_path(tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({"A": [[0, 1], [1, 0]], "Astar": [[1, 0], [0, -1]]}))
    return path


def test_construct_krawtchouk_then_verify(tmp_path):
    system = tmp_path / "k.json"
    table = tmp_path / "k.csv"
    code = main(["construct", "krawtchouk", "--d", "3", "--p", "1/3", "--out", str(system), "--table", str(table)])
    assert code == EXIT_OK
    assert json.loads(system.read_text())["theta"] == ["3", "1", "-1", "-3"]
    assert table.read_text().splitlines()[0].split(",")[:3] == ["i", "theta", "thetastar"]

    report = tmp_path / "report.json"
    assert main(["verify", str(system), "--out", str(report)]) == EXIT_OK
    payload = json.loads(report.read_text())
    assert payload["passed"] is True
    assert len(payload["systems"]) == 1


def test_construct_leonard_over_prime_field(tmp_path, capsys):
    code = main(
        ["construct", "leonard", "--d", "2", "--field", "prime:101", "--theta", "2,0,-2", "--thetastar", "2,0,-2",
         "--phi", "-4,-4"]
    )
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["field"] == "prime:101"
    assert payload["thetastar"] == ["2", "0", "99"]


def test_verify_pair_to_stdout(pair_path, capsys):
    assert main(["verify", str(pair_path), "--checks", "master,descent", "--timings"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["systems-found"] == 4
    assert "timings" in payload


def test_verify_rejected_pair(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"A": [[1, 1], [0, 1]], "Astar": [[1, 0], [0, 2]]}))
    assert main(["verify", str(path)]) == EXIT_FAILED


def test_report_csv(pair_path, capsys):
    assert main(["report", str(pair_path), "--format", "csv", "--checks", "split_ranks"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("system,check-id,kind")
    assert len(lines) > 1


def test_bad_input_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["verify", str(path)]) == EXIT_BAD_INPUT
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["response"] is None
    assert error["error"]


def test_conflicting_beta_is_bad_input(tmp_path):
    system = tmp_path / "k.json"
    main(["construct", "krawtchouk", "--d", "3", "--p", "1/2", "--out", str(system)])
    assert main(["verify", str(system), "--beta", "5"]) == EXIT_BAD_INPUT


def test_inadmissible_krawtchouk():
    assert main(["construct", "krawtchouk", "--d", "2", "--p", "1"]) == EXIT_BAD_INPUT


def test_zero_split_sequence_is_bad_input():
    argv = ["construct", "leonard", "--d", "2", "--theta", "2,0,-2", "--thetastar", "2,0,-2", "--phi", "0,-4"]
    assert main(argv) == EXIT_BAD_INPUT


def test_small_prime_field_above_diameter(tmp_path):
    out = tmp_path / "k.json"
    assert main(["construct", "krawtchouk", "--d", "5", "--p", "2", "--field", "prime:7", "--out", str(out)]) == EXIT_OK
    assert main(["verify", str(out)]) == EXIT_OK


def test_common_eigenvector_pair_fails(tmp_path, capsys):
    path = tmp_path / "diag.json"
    path.write_text(json.dumps({"schema": 1, "field": {"kind": "rational"}, "A": [[1, 0], [0, 2]], "Astar": [[1, 0], [0, 2]]}))
    assert main(["verify", str(path)]) == EXIT_FAILED
    assert json.loads(capsys.readouterr().out)["verdict"] == "reducible"


@pytest.mark.parametrize(
    "argv",
    [
        ["report", "x.json", "--format", "xml"],
        ["verify", "x.json", "--checks", "nonsense"],
        ["construct", "krawtchouk", "--d", "2", "--p", "1/2", "--field", "prime:9"],
    ],
)
def test_argument_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_negative_values_reach_the_options(capsys):
    argv = ["construct", "leonard", "--d", "2", "--theta", "2,0,-2", "--thetastar", "2,0,-2", "--phi", "-4,-4"]
    assert main(argv) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["theta"] == ["2", "0", "-2"]
    assert payload["shape"] == [1, 1, 1]


def test_negative_probability_is_accepted(capsys):
    assert main(["construct", "krawtchouk", "--d", "2", "--p", "-1/2"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["theta"] == ["2", "0", "-2"]


def test_internal_inconsistency_has_its_own_exit_code(pair_path, monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise InternalInconsistencyError("g+_2 vanishes")

    monkeypatch.setattr(cli, "verify_document", broken)
    assert main(["verify", str(pair_path)]) == EXIT_INTERNAL
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["response"] is None
    assert error["error"] == "internal inconsistency: g+_2 vanishes"
