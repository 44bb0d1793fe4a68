"""Command-line interface contract: outputs, exit codes, error bodies."""

import json

import pytest
from click.testing import CliRunner

from ptgraph import fixtures
from ptgraph.cli import main
from ptgraph.dsl import parse, serialize


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def fig_file(tmp_path):
    def write(name):
        p = tmp_path / f"{name}.dag"
        p.write_text(fixtures.load(name), encoding="utf-8")
        return str(p)

    return write


def test_analyze_json(runner, fig_file):
    result = runner.invoke(main, ["analyze", fig_file("fig2")])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["overall"] == "Rejected"
    assert payload["schema"] == "ptgraph/v1"


def test_analyze_text(runner, fig_file):
    result = runner.invoke(main, ["analyze", fig_file("fig4"), "--text"])
    assert result.exit_code == 0
    assert "verdict: NotRejected" in result.output
    assert "{U1}" in result.output


def test_analyze_is_deterministic(runner, fig_file):
    path = fig_file("fig1")
    first = runner.invoke(main, ["analyze", path]).output
    second = runner.invoke(main, ["analyze", path]).output
    assert first == second


def test_minsets(runner, fig_file):
    result = runner.invoke(main, ["minsets", fig_file("fig2"), "--outcome", "Y1"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["outcome"] == "Y1"
    assert payload["per_completion"][0]["sets"] == [["U1", "U4"]]
    assert payload["in_every_completion"] == [["U1", "U4"]]


def test_completions(runner, fig_file):
    result = runner.invoke(main, ["completions", fig_file("fig4")])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["count"] == 3
    assert payload["undirected_edges"] == [["U1", "U2"]]
    texts = [e["text"] for e in payload["completions"]]
    assert any("U1 -> U2" in t for t in texts)
    assert any("L_U1_U2" in t for t in texts)


def test_simulate(runner, fig_file):
    result = runner.invoke(
        main, ["simulate", fig_file("fig2"), "--seeds", "5", "--range", "0.3,1.0"]
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["seeds"] == 5
    assert len(payload["records"]) == 5
    assert payload["records"][0]["seed"] == 0
    assert all(abs(r["gap"]) > 0 for r in payload["records"])


def test_simulate_partially_directed_notes_completion(runner, fig_file):
    result = runner.invoke(main, ["simulate", fig_file("fig4"), "--seeds", "2"])
    payload = json.loads(result.output)
    assert payload["completion"] == ["forward"]
    assert "first completion" in payload["note"]


def test_swig_output_reparses(runner, fig_file):
    result = runner.invoke(main, ["swig", fig_file("fig2")])
    assert result.exit_code == 0
    assert '"|a=0" -> "Y1^0"' in result.output
    g = parse(result.output)
    assert g.metadata["swig"] == "1"


def test_fmt_is_canonical(runner, fig_file):
    path = fig_file("medicaid")
    result = runner.invoke(main, ["fmt", path])
    assert result.exit_code == 0
    assert result.output == serialize(parse(fixtures.load("medicaid")))


def test_parse_error_exit_code_and_json_body(runner, tmp_path):
    bad = tmp_path / "bad.dag"
    bad.write_text("pdag { A -> }", encoding="utf-8")
    result = runner.invoke(main, ["analyze", str(bad)])
    assert result.exit_code == 2
    payload = json.loads(result.output)
    assert payload["error"]["type"] == "ParseError"
    assert len(payload["error"]["span"]) == 2


def test_validation_error_reports_violations(runner, tmp_path):
    bad = tmp_path / "bad.dag"
    bad.write_text("pdag { A [exposure] A -> Y0 A -> Y1 }", encoding="utf-8")
    result = runner.invoke(main, ["analyze", str(bad)])
    assert result.exit_code == 2
    payload = json.loads(result.output)
    assert payload["error"]["type"] == "ValidationError"
    assert any(
        v["code"] == "TimeOrderViolation" for v in payload["error"]["violations"]
    )


def test_cap_exceeded_exit_code(runner, tmp_path):
    body = " ".join(f"V{i} -- W{i}" for i in range(3))
    p = tmp_path / "wide.dag"
    p.write_text(
        f"pdag {{ A [exposure] A -> Y1 U1 -> Y0 U1 -> Y1 {body} }}",
        encoding="utf-8",
    )
    result = runner.invoke(main, ["analyze", str(p), "--cap", "2"])
    assert result.exit_code == 2
    assert json.loads(result.output)["error"]["type"] == "TooManyUndirectedEdges"


def test_text_mode_errors_go_to_stderr(tmp_path):
    bad = tmp_path / "bad.dag"
    bad.write_text("pdag { A -> }", encoding="utf-8")
    result = CliRunner().invoke(main, ["analyze", str(bad), "--text"])
    assert result.exit_code == 2
    assert result.stdout == ""
    assert "error:" in result.stderr


def test_missing_file_is_usage_error(runner):
    result = runner.invoke(main, ["analyze", "no-such-file.dag"])
    assert result.exit_code == 2
