import json
from pathlib import Path

import pytest

from projdual.cli import (
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERDICT,
    SEED_ENV,
    VarietyFileError,
    parse_variety_file,
    run_case,
    run_command,
)

CORPUS = Path(__file__).parent / "corpus"
CONIC = str(CORPUS / "conic.var")
CUBIC = str(CORPUS / "twisted_cubic.var")
SCROLL = str(CORPUS / "scroll.var")


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


# --- file format ----------------------------------------------------------


def test_parse_conic_file():
    vf = parse_variety_file(CONIC)
    assert vf.variety.degree == 2
    assert set(vf.points) == {"p", "tline", "off"}
    assert vf.spaces["ext"].dim == 0


def test_parse_cut_space_and_prime_field():
    text = "field F 101\nvars a b c\ngen a*c - b^2\nspace H cut a - c\n"
    vf = parse_variety_file("mem.var", text)
    assert vf.field.characteristic == 101
    assert vf.spaces["H"].dim == 1


@pytest.mark.parametrize(
    "text, line",
    [
        ("field Q\nvars x y\ngen x*y +\n", 3),
        ("field Q\nvars x y\ngen x*y\nspace A span (1:0) (2:0)\n", 4),
        ("field Q\nvars x y\ngen x*y\nspace A cut x^2\n", 4),
        ("field Q\nvars x y\ngen x*y\npoint q = (1:1) on X\n", 4),
        ("field Q\nvars x y\ngen x*y\npoint q = (1:1:1)\n", 4),
        ("field R\n", 1),
        ("field Q\nvars x y\nfrobnicate\n", 3),
        ("field Q\nvars x y\ngen z\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(VarietyFileError) as err:
        parse_variety_file("bad.var", text)
    assert err.value.lineno == line
    assert str(err.value).startswith(f"bad.var:{line}:")


def test_comments_and_blank_lines():
    text = "# header\n\nfield Q  # rationals\nvars x y z\ngen x*z - y^2\n"
    assert parse_variety_file("c.var", text).variety.dim == 1


# --- exit codes -----------------------------------------------------------


def test_exit_ok(capsys):
    code, out = run(capsys, "dual", CONIC, "--seed", "1")
    assert code == EXIT_OK and out["degree"] == 2 and out["seed"] == 1


def test_exit_usage(capsys):
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "dual", "/nonexistent.var")[0] == EXIT_USAGE
    assert run(capsys, "tangent-cone", CONIC, "--point", "nope")[0] == EXIT_USAGE
    assert run(capsys, "dual", CONIC, "--field", "Fp:12")[0] == EXIT_USAGE


def test_exit_point_off_variety(capsys):
    code, out = run(capsys, "mult", CONIC, "--point", "off")
    assert code == EXIT_OK and out["on_variety"] is False and out["multiplicity"] == 0
    code, out = run(capsys, "tangent-cone", CONIC, "--point", "off")
    assert code == EXIT_USAGE and out["error"] == "PointNotOnVariety"


def test_exit_verdict(capsys):
    code, out = run(capsys, "verify", "main-theorem", SCROLL, "--space", "L")
    assert code == EXIT_VERDICT and out["verdict"] == "hypotheses_violated"


def test_exit_budget(capsys):
    code, out = run(capsys, "dual", CUBIC, "--gb-pairs", "1", "--seed", "4242")
    assert code == EXIT_BUDGET and out["error"] == "budget exhausted"


def test_help_exits_zero(capsys):
    assert run_command(["--help"]) == EXIT_OK


# --- determinism and fields -----------------------------------------------


def test_same_seed_same_output(capsys):
    a = run(capsys, "shadow", CONIC, "--space", "ext", "--seed", "5")
    b = run(capsys, "shadow", CONIC, "--space", "ext", "--seed", "5")
    assert a == b


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(SEED_ENV, "13")
    code, out = run(capsys, "shadow", CONIC, "--space", "ext")
    assert code == EXIT_OK and out["seed"] == 13
    assert out == run(capsys, "shadow", CONIC, "--space", "ext", "--seed", "13")[1]


def test_prime_field_run(capsys):
    code, out = run(capsys, "dual", CONIC, "--field", "Fp:32003")
    assert code == EXIT_OK and out["degree"] == 2


def test_screen_mode_agrees(capsys):
    code, out = run(capsys, "dual", CUBIC, "--field", "screen", "--seed", "2")
    assert code == EXIT_OK
    assert out["screen"]["agrees"] is True and out["degree"] == 4


def test_flat_limit(capsys, tmp_path):
    f = tmp_path / "fam.var"
    f.write_text("field Q\nvars t x0 x1\ngen x1^2 - t^2*x0^2\n")
    code, out = run(capsys, "flat-limit", str(f), "--param", "t")
    assert code == EXIT_OK and out["generators"] == ["x1^2"]


# --- corpus ---------------------------------------------------------------


@pytest.mark.parametrize("case", sorted(p.name for p in CORPUS.glob("*.json")))
def test_corpus_case(case):
    res = run_case(str(CORPUS / case))
    assert res["ok"], res


def test_corpus_run_reports_failures(capsys, tmp_path):
    (tmp_path / "c.var").write_text(Path(CONIC).read_text())
    (tmp_path / "c.json").write_text(json.dumps({"args": ["dual", "{file}"], "expect": {"degree": 7}}))
    code, out = run(capsys, "corpus", "run", str(tmp_path))
    assert code == EXIT_VERDICT and out["passed"] == 0


def test_corpus_run_empty_dir(capsys, tmp_path):
    assert run(capsys, "corpus", "run", str(tmp_path))[0] == EXIT_USAGE
