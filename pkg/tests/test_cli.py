import json

from qord.cli import main
from qord.report import (
    EXIT_FAIL,
    EXIT_HARD,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_USAGE,
    HARD,
    CheckResult,
    Report,
)


def test_run_session_file(tmp_path, capsys):
    f = tmp_path / "session.qord"
    f.write_text("let v = padic(2) on Q\ncheck val_axioms(v) samples(count=100, seed=1)\n")
    assert main(["run", str(f)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "all 7 checks passed" in out


def test_run_json_format(tmp_path, capsys):
    f = tmp_path / "session.qord"
    f.write_text("let v = padic(2) on Q\ncheck val_axioms(v)\n")
    assert main(["run", str(f), "--format", "json", "--samples", "100"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["version"] == 1 and doc["seed"] == 42
    assert all(c["elapsed_ms"] == 0 for c in doc["checks"])


def test_run_failing_session_exits_1(tmp_path, capsys):
    f = tmp_path / "s.qord"
    f.write_text(
        'let u = trivial() on Z\n'
        "let v = gauss(u, -1) on poly(Z, X)\n"
        "let q = const_term_order() on poly(Z, X)\n"
        "check compat(v, q)\n"
    )
    assert main(["run", str(f)]) == EXIT_FAIL


def test_parse_error_exits_2(tmp_path, capsys):
    f = tmp_path / "bad.qord"
    f.write_text("let = !!\n")
    assert main(["run", str(f)]) == EXIT_USAGE
    assert main(["run", str(tmp_path / "missing.qord")]) == EXIT_USAGE


def test_precondition_halt_exits_3(tmp_path, capsys):
    f = tmp_path / "halt.qord"
    f.write_text(
        "let u = padic(2) on Q\n"
        "let v = gauss(u, 1) on poly(Q, X)\n"
        "let w = gauss(u, 0) on poly(Q, X)\n"
        "let bad = quotient_val(w, v)\n"
    )
    assert main(["run", str(f)]) == EXIT_PRECONDITION


def test_corpus_list(capsys):
    assert main(["corpus", "list"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "nomanis-1" in out and "archimedean-demo" in out


def test_corpus_run_single(capsys):
    assert main(["corpus", "run", "special-star-1"]) == EXIT_OK
    assert main(["corpus", "run", "no-such-instance"]) == EXIT_USAGE


def test_table_command(capsys):
    assert main(["table", "--samples", "300"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "implication matrix" in out and "MISSING" not in out


def test_exit_code_mapping():
    r = Report(seed=1)
    assert r.exit_code() == EXIT_OK
    r.checks.append(CheckResult(name="x", status="fail", seed=1))
    assert r.exit_code() == EXIT_FAIL
    r.checks.append(CheckResult(name="y", status=HARD, seed=1))
    assert r.exit_code() == EXIT_HARD
    r2 = Report(seed=1, halted=True)
    assert r2.exit_code() == EXIT_PRECONDITION
