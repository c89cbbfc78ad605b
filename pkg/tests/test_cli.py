"""CLI reports, exit codes, and determinism, driven through run()."""

import io
import json

import pytest

from polyctrl.cli import build_parser, run

CUBIC_TEXT = "tensor 4 2\n1 1 1 2 1.0\nmatrix 2 1\n1 1 1.0\n"
SHARED_TEXT = "tensor 4 2\nmatrix 2 1\n1 1 1.0\n2 1 1.0\n"
PATTERN_TEXT = "tensor 4 2\n1 1 1 2\nmatrix 2 1\n1 1\n"
HYPERGRAPH_TEXT = "hypergraph 2 1\n3 -> 1,2\n"


def write(tmp_path, text, name="input.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


# --- analyze ---

def test_analyze_controllable_system(tmp_path, capsys):
    path = write(tmp_path, CUBIC_TEXT)
    code, report = run_json(capsys, ["analyze", path, "--json"])
    assert code == 0
    assert report["format_version"] == "1"
    assert report["command"] == "analyze"
    assert report["input"] == {
        "kind": "system",
        "k": 4,
        "n": 2,
        "m": 1,
        "tensor_nnz": 1,
        "control_nnz": 1,
    }
    assert report["structural"]["controllable"] is True
    assert report["structural"]["dilation_witness"] is None
    assert report["structural"]["inaccessible"] == []
    assert "numeric" not in report
    assert "timings_ms" not in report


def test_analyze_dilated_system(tmp_path, capsys):
    path = write(tmp_path, SHARED_TEXT)
    code, report = run_json(capsys, ["analyze", path, "--json"])
    assert code == 0
    assert report["structural"]["controllable"] is False
    assert report["structural"]["dilation_witness"] == [1, 2]


def test_analyze_numeric_on_explicit_system(tmp_path, capsys):
    path = write(tmp_path, CUBIC_TEXT)
    code, report = run_json(capsys, ["analyze", path, "--json", "--numeric"])
    assert code == 0
    assert report["numeric"]["rank"] == 2
    assert report["numeric"]["strongly_controllable"] is True
    assert report["numeric"]["seed"] is None


def test_analyze_numeric_on_pattern_samples_a_realization(tmp_path, capsys):
    path = write(tmp_path, PATTERN_TEXT)
    code, report = run_json(capsys, ["analyze", path, "--json", "--numeric", "--seed", "3"])
    assert code == 0
    assert report["numeric"]["seed"] == 3
    assert report["numeric"]["rank"] == 2


def test_analyze_hypergraph_input(tmp_path, capsys):
    path = write(tmp_path, HYPERGRAPH_TEXT)
    code, report = run_json(capsys, ["analyze", path, "--json"])
    assert code == 0
    assert report["input"] == {"kind": "hypergraph", "n": 2, "m": 1, "edges": 1}
    assert report["structural"]["controllable"] is False


def test_analyze_numeric_refuses_hypergraph(tmp_path, capsys):
    path = write(tmp_path, HYPERGRAPH_TEXT)
    code = run(["analyze", path, "--json", "--numeric"])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.out == ""
    envelope = json.loads(captured.err)
    assert envelope["error"]["kind"] == "input"
    assert "hypergraph" in envelope["error"]["message"]


def test_analyze_timings_flag(tmp_path, capsys):
    path = write(tmp_path, CUBIC_TEXT)
    code, report = run_json(capsys, ["analyze", path, "--json", "--timings"])
    assert code == 0
    assert "structural" in report["timings_ms"]
    assert report["timings_ms"]["structural"] >= 0.0


def test_human_output_skips_format_version(tmp_path, capsys):
    path = write(tmp_path, CUBIC_TEXT)
    assert run(["analyze", path]) == 0
    out = capsys.readouterr().out
    assert "format_version" not in out
    assert "controllable: True" in out
    assert "structural:" in out


# --- other commands ---

def test_dilation_command(tmp_path, capsys):
    path = write(tmp_path, HYPERGRAPH_TEXT)
    code, report = run_json(capsys, ["dilation", path, "--json"])
    assert code == 0
    assert report["command"] == "dilation"
    assert report["dilated"] is True
    assert report["witness"] == [1, 2]
    assert report["matching"] == [[0, 1]]


def test_access_command(tmp_path, capsys):
    path = write(tmp_path, "hypergraph 3 1\n4 -> 1\n1 -> 2\n")
    code, report = run_json(capsys, ["access", path, "--json"])
    assert code == 0
    assert report["accessible"] == [1, 2, 4]
    assert report["inaccessible"] == [3]


def test_rank_command(tmp_path, capsys):
    path = write(tmp_path, CUBIC_TEXT)
    code, report = run_json(capsys, ["rank", path, "--json"])
    assert code == 0
    assert report["rank"] == 2
    assert report["n"] == 2
    assert report["strongly_controllable"] is True
    assert report["seed"] is None


def test_lie_rank_command(tmp_path, capsys):
    path = write(tmp_path, CUBIC_TEXT)
    code, report = run_json(capsys, ["lie-rank", path, "--json"])
    assert code == 0
    assert report["rank"] == 2
    assert report["full_rank"] is True
    assert report["saturated"] is True


def test_validate_command(tmp_path, capsys):
    code, report = run_json(
        capsys, ["validate", "--json", "--trials", "3", "--n", "2", "--seed", "1"]
    )
    assert code == 0
    assert report["trials"] == 3
    assert len(report["detail"]) == 3
    assert report["agreements"] + len(report["disagreements"]) == 3
    assert report["all_agree"] is (report["disagreements"] == [])


def test_gen_round_trips_through_the_parser(tmp_path, capsys):
    from polyctrl.formats import parse_system
    from polyctrl.system import SparsityPattern

    code = run(["gen", "--n", "3", "--k", "4", "--m", "2", "--seed", "5"])
    out = capsys.readouterr().out
    assert code == 0
    pattern = parse_system(out)
    assert isinstance(pattern, SparsityPattern)
    assert (pattern.order, pattern.dim, pattern.inputs) == (4, 3, 2)
    # default support sizes are n tensor entries and m control entries
    assert len(pattern.tensor_support) == 3
    assert len(pattern.control_support) == 2


def test_gen_respects_support_overrides(capsys):
    code = run(["gen", "--n", "3", "--k", "4", "--m", "1", "--tensor-nnz", "5"])
    out = capsys.readouterr().out
    assert code == 0
    assert sum(1 for line in out.splitlines() if len(line.split()) == 4) == 5


def test_stdin_input(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(CUBIC_TEXT))
    code, report = run_json(capsys, ["analyze", "-", "--json"])
    assert code == 0
    assert report["structural"]["controllable"] is True


# --- determinism ---

def test_reports_are_byte_identical(tmp_path, capsys):
    path = write(tmp_path, CUBIC_TEXT)
    outputs = []
    for _ in range(2):
        assert run(["analyze", path, "--json", "--numeric"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_validate_is_byte_identical(capsys):
    outputs = []
    for _ in range(2):
        assert run(["validate", "--json", "--trials", "2", "--n", "2"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_gen_is_byte_identical(capsys):
    outputs = []
    for _ in range(2):
        assert run(["gen", "--n", "4", "--k", "4", "--m", "2", "--seed", "9"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


# --- failure paths ---

def test_parse_error_exit_code(tmp_path, capsys):
    path = write(tmp_path, "tensor 3 2\nmatrix 2 1\n")
    code = run(["analyze", path])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.err.startswith("error: line 1")


def test_missing_file_exit_code(capsys):
    code = run(["analyze", "/nonexistent/input.txt", "--json"])
    captured = capsys.readouterr()
    assert code == 2
    assert json.loads(captured.err)["error"]["kind"] == "input"


def test_bad_tolerance_exit_code(tmp_path, capsys):
    path = write(tmp_path, CUBIC_TEXT)
    code = run(["rank", path, "--json", "--tol", "-1"])
    assert code == 2
    assert json.loads(capsys.readouterr().err)["error"]["kind"] == "input"


def test_capacity_exit_code(tmp_path, capsys):
    path = write(tmp_path, CUBIC_TEXT)
    code = run(["rank", path, "--json", "--cap", "4"])
    captured = capsys.readouterr()
    assert code == 3
    assert json.loads(captured.err)["error"]["kind"] == "capacity"


def test_rank_refuses_hypergraph(tmp_path, capsys):
    path = write(tmp_path, HYPERGRAPH_TEXT)
    code = run(["rank", path])
    captured = capsys.readouterr()
    assert code == 2
    assert "tensor/matrix input" in captured.err


def test_parser_rejects_unknown_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["frobnicate"])
