import json

import pytest
from pydantic import ValidationError

from dof_puzzle.constructions import corollary_G
from dof_puzzle.errors import (
    DomainError,
    InvalidArgumentError,
    ParseError,
    PreconditionError,
    RefusedError,
)
from dof_puzzle.handlers import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, error_handler
from dof_puzzle.main import run
from dof_puzzle.models import ScoreValue, SolveConfig
from dof_puzzle.solver import solve
from dof_puzzle.topology import parse_index_matrix, serialize_spec, symmetric_spec

X2_SPEC = "2\n1 1\n1 1\n\n1 1\n1 1\n"
X2_G = "2\n1 1\n2 2\n"


@pytest.fixture
def x2_files(write_file):
    return write_file("x2.txt", X2_SPEC), write_file("x2_g.txt", X2_G)


def test_construct_prints_both_scores(capsys):
    assert run(["construct", "--K", "5", "--m", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "variant: corollary (K=5, m=2)" in out
    assert "formula score: 3/1 (3.000000)" in out
    assert "recomputed score: 3/1 (3.000000)" in out
    lines = out.splitlines()
    start = lines.index("G:")
    assert lines[start + 1:start + 6] == ["1 0 0 0 1", "2 2 0 0 0", "0 1 1 0 0", "0 0 2 2 0", "0 0 0 1 0"]
    table = [line.split() for line in lines[start + 8:start + 13]]
    assert [int(row[2]) for row in table] == [1, 1, 1, 1, 2]
    assert [int(row[3]) for row in table] == [3, 3, 3, 3, 3]


def test_construct_classic_writes_G(capsys, tmp_path):
    path = tmp_path / "classic.txt"
    assert run(["construct", "--K", "5", "--m", "2", "--variant", "classic", "--out", str(path)]) == EXIT_OK
    assert "formula score: 5/2 (2.500000)" in capsys.readouterr().out
    G = parse_index_matrix(path.read_text())
    assert G.entry(5, 4) == 5


def test_construct_mismatch_fails(mocker):
    mocker.patch.dict(
        "dof_puzzle.handlers.construct.VARIANTS",
        {"corollary": (corollary_G, lambda fam: ScoreValue(numerator=1, denominator=1))},
    )
    assert run(["construct", "--K", "5", "--m", "2"]) == EXIT_FAILURE


def test_construct_rejects_m_above_K():
    assert run(["construct", "--K", "3", "--m", "4"]) == EXIT_USAGE


def test_score_command(capsys, write_file):
    spec = write_file("ic.txt", serialize_spec(symmetric_spec(3, 1)))
    G = write_file("g.txt", "3\n1 0 0\n0 1 0\n0 0 1\n")
    assert run(["score", "--spec", spec, "--g", G]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("score: 3/1 (3.000000)\n")
    assert "row_support" in out


def test_score_rejects_invalid_G(write_file):
    spec = write_file("x2.txt", X2_SPEC)
    G = write_file("bad.txt", "2\n1 0\n1 0\n")
    assert run(["score", "--spec", spec, "--g", G]) == EXIT_USAGE


def test_score_reports_parse_errors(write_file, caplog):
    spec = write_file("broken.txt", "2\n1 1\n1 x\n\n1 1\n1 1\n")
    G = write_file("g.txt", X2_G)
    assert run(["score", "--spec", spec, "--g", G]) == EXIT_USAGE
    assert "line 3, column 3" in caplog.text


def test_missing_file_is_usage_error(tmp_path):
    missing = str(tmp_path / "nope.txt")
    assert run(["score", "--spec", missing, "--g", missing]) == EXIT_USAGE


def test_solve_command(capsys, x2_files, tmp_path):
    spec, _ = x2_files
    out_path = tmp_path / "best.txt"
    assert run(["solve", "--spec", spec, "--out", str(out_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "mode: exact" in out
    assert "score: 4/3 (1.333333)" in out
    assert "optimal: true" in out
    assert "elapsed" not in out
    assert out_path.read_text() == X2_G


def test_solve_json(capsys, x2_files):
    spec, _ = x2_files
    assert run(["solve", "--spec", spec, "--mode", "brute", "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["mode"] == "brute-force"
    assert document["score"] == "4/3"
    assert document["G"] == [[1, 1], [2, 2]]
    assert "elapsed" not in document


def test_solve_timings(capsys, x2_files):
    spec, _ = x2_files
    assert run(["solve", "--spec", spec, "--json", "--timings"]) == EXIT_OK
    assert "elapsed" in json.loads(capsys.readouterr().out)


def test_solve_heuristic_is_reproducible(capsys, write_file):
    spec = write_file("k5.txt", serialize_spec(symmetric_spec(5, 2)))
    outputs = []
    for _ in range(2):
        assert run(["solve", "--spec", spec, "--mode", "heuristic", "--seed", "3"]) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    assert "optimal: false" in outputs[0]


def test_solve_passes_options(mocker, x2_files):
    spy = mocker.patch("dof_puzzle.handlers.solve.solve", wraps=solve)
    spec, _ = x2_files
    run(["solve", "--spec", spec, "--mode", "heuristic", "--seed", "4", "--jobs", "1", "--max-label", "3", "--budget", "5"])
    config = spy.call_args.args[1]
    assert config == SolveConfig(mode="heuristic", seed=4, parallelism=1, max_label=3, time_budget=5.0)


def test_solve_brute_force_refusal(write_file):
    spec = write_file("x4.txt", serialize_spec(symmetric_spec(4, 4)))
    assert run(["solve", "--spec", spec, "--mode", "brute"]) == EXIT_FAILURE


@pytest.mark.parametrize("argv", [
    [],
    ["solve"],
    ["solve", "--spec", "s.txt", "--mode", "fastest"],
    ["verify", "--spec", "s.txt", "--g", "g.txt", "--trials", "0"],
    ["construct", "--K", "-1", "--m", "1"],
])
def test_argument_errors(argv):
    assert run(argv) == EXIT_USAGE


def test_verify_command_pass(capsys, x2_files):
    spec, G = x2_files
    assert run(["verify", "--spec", spec, "--g", G, "--eta", "2", "--trials", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("overall: pass\n")
    assert "eta=2 Gamma=2 T=17 p_max=1" in out
    assert "sum dof_ratio: 16/17  limit: 4/3" in out


def test_verify_command_fail(capsys, write_file):
    spec = write_file("x2.txt", X2_SPEC)
    G = write_file("g.txt", "2\n1 0\n1 0\n")
    assert run(["verify", "--spec", spec, "--g", G, "--trials", "1"]) == EXIT_FAILURE
    out = capsys.readouterr().out
    assert out.startswith("overall: fail\n")
    assert "property 1 violated at: [(1, 1), (2, 1)]" in out


def test_verify_command_json(capsys, x2_files):
    spec, G = x2_files
    assert run(["verify", "--spec", spec, "--g", G, "--trials", "1", "--backend", "float", "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["overall"] == "pass"
    assert document["backend"] == "float"
    assert [r["p"] for r in document["per_receiver"]] == [1, 2]


def test_verify_command_refusal(mocker, write_file):
    mocker.patch("dof_puzzle.alignment.alignment.VERIFY_COLUMN_CAP", 4)
    spec = write_file("x2.txt", X2_SPEC)
    G = write_file("g.txt", X2_G)
    assert run(["verify", "--spec", spec, "--g", G]) == EXIT_FAILURE


def test_sweep_csv(capsys):
    assert run(["sweep", "--K", "20"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 21
    assert lines[0] == "K,m,corollary_num,corollary_den,classic_num,classic_den"
    assert lines[1] == "20,1,20,1,20,1"


def test_sweep_dat_to_file(capsys, tmp_path):
    path = tmp_path / "sweep.dat"
    assert run(["sweep", "--K", "5", "--format", "dat", "--out", str(path)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    blocks = path.read_text().split("\n\n\n")
    assert blocks[0].splitlines()[0] == "# corollary"
    assert blocks[0].splitlines()[2] == "2 3.000000"
    assert blocks[1].splitlines()[0] == "# classic"
    assert blocks[1].splitlines()[2] == "2 2.500000"


def test_outputs_are_byte_identical(capsys, x2_files):
    spec, G = x2_files
    outputs = []
    for _ in range(2):
        run(["verify", "--spec", spec, "--g", G, "--trials", "2", "--seed", "5"])
        run(["sweep", "--K", "6"])
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_solve_output_scores_the_same(capsys, write_file, tmp_path):
    spec = write_file("k5.txt", serialize_spec(symmetric_spec(5, 2)))
    out_path = tmp_path / "best.txt"
    assert run(["solve", "--spec", spec, "--mode", "heuristic", "--out", str(out_path)]) == EXIT_OK
    solve_out = capsys.readouterr().out
    assert run(["score", "--spec", spec, "--g", str(out_path)]) == EXIT_OK
    score_line = capsys.readouterr().out.splitlines()[0]
    assert score_line in solve_out


@pytest.mark.parametrize("error, code", [
    (RefusedError("too big", 10, 5), EXIT_FAILURE),
    (ParseError("bad token", 2, 3), EXIT_USAGE),
    (DomainError("not binary", 2, 1), EXIT_USAGE),
    (InvalidArgumentError("bad m"), EXIT_USAGE),
    (PreconditionError("invalid G", [((1, 1),)]), EXIT_USAGE),
    (RuntimeError("boom"), EXIT_FAILURE),
])
def test_error_handler(error, code):
    assert error_handler(error) == code


def test_error_handler_validation_error():
    with pytest.raises(ValidationError) as excinfo:
        SolveConfig(parallelism=0)
    assert error_handler(excinfo.value) == EXIT_USAGE
