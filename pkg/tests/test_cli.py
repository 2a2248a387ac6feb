import hashlib
import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from germlab.cli import corpus_dir, corpus_run, main, resolve_settings, run, to_json
from germlab.problem import parse_problem

CORPUS = corpus_dir()


def _walk_numbers(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _walk_numbers(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _walk_numbers(v)
    elif isinstance(obj, (int, float)) and not isinstance(obj, bool):
        yield obj


def test_mond_final_json(capsys):
    code = main(["mond", str(CORPUS / "final.germ"), "--json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["result"]["codim_Ae_Xf"] == 6
    assert rep["result"]["mu_I"] == 6
    assert rep["result"]["verdict"] == "equality"


def test_mu_legreuel(capsys):
    assert main(["mu", str(CORPUS / "legreuel.germ")]) == 0
    assert "mu: 5" in capsys.readouterr().out


def test_kcodim_squares():
    code, rep, _ = run("kcodim", CORPUS / "squares.germ")
    assert code == 0
    # the full normal space includes the constant vectors
    assert rep["result"]["kcodim"] == 4
    assert rep["result"]["kcodim_in_m_theta"] == 2


def test_exit_code_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.germ"
    bad.write_text("ring x, y;\nicis: x^2 - y^3 + 1;\n")
    assert main(["mu", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "constant term" in err and "error" in err


def test_exit_code_not_applicable(tmp_path):
    f = tmp_path / "nci.germ"
    f.write_text("ring x, y, z, w;\nicis: x*z - y^2, y*w - z^2, x*w - y*z;\n")
    code, rep, text = run("mu", f)
    assert code == 2
    assert rep["status"] == "not-applicable"
    assert "complete intersection" in text


def test_exit_code_usage(tmp_path, capsys):
    f = tmp_path / "nomap.germ"
    f.write_text("ring x, y;\nicis: x^2 + y^3;\n")
    assert main(["kcodim", str(f)]) == 1
    assert "no 'map'" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        main(["frobnicate", str(f)])
    assert info.value.code == 1


def test_missing_file():
    code, rep, _ = run("mu", "/nonexistent/file.germ")
    assert code == 1 and rep["status"] == "error"


def test_seed_precedence():
    pf = parse_problem("ring x;\nicis: x^2;\noption seed = 7;\n")
    assert resolve_settings(pf, {}, {"GERMLAB_SEED": "3"}).seed == 7
    assert resolve_settings(pf, {"seed": 11}, {"GERMLAB_SEED": "3"}).seed == 11
    plain = parse_problem("ring x;\nicis: x^2;\n")
    assert resolve_settings(plain, {}, {"GERMLAB_SEED": "3"}).seed == 3
    assert resolve_settings(plain, {}, {}).seed == 0


def test_seed_env_reaches_report(tmp_path, monkeypatch):
    f = tmp_path / "lg.germ"
    f.write_text("ring x, y, z;\nicis: x^2 + y^2 + z^2, x*y;\n")
    monkeypatch.setenv("GERMLAB_SEED", "4")
    code, rep, _ = run("mu", f)
    assert code == 0 and rep["settings"]["seed"] == 4 and rep["result"]["mu"] == 5


def test_bad_env_seed(tmp_path):
    f = tmp_path / "lg.germ"
    f.write_text("ring x;\nicis: x^2;\n")
    code, rep, _ = run("mu", f, env={"GERMLAB_SEED": "abc"})
    assert code == 1 and "GERMLAB_SEED" in rep["error"]


@pytest.mark.parametrize("cmd,name", [("mond", "final"), ("mu", "legreuel"), ("image", "s1"), ("hilbert", "final")])
def test_report_is_deterministic(cmd, name):
    digests = set()
    for _ in range(2):
        _, rep, _ = run(cmd, CORPUS / f"{name}.germ")
        digests.add(hashlib.sha256(to_json(rep).encode()).hexdigest())
    assert len(digests) == 1


@pytest.mark.parametrize("cmd,name", [("mond", "final"), ("mu", "legreuel"), ("tau", "legreuel"), ("hilbert", "s1")])
def test_json_has_integers_only(cmd, name):
    _, rep, _ = run(cmd, CORPUS / f"{name}.germ")
    nums = list(_walk_numbers(json.loads(to_json(rep))))
    assert nums and all(isinstance(v, int) for v in nums)


def test_timing_is_opt_in():
    _, rep, _ = run("mu", CORPUS / "legreuel.germ")
    assert "elapsed_ms" not in rep
    _, rep, _ = run("mu", CORPUS / "legreuel.germ", {"timing": True})
    assert isinstance(rep["elapsed_ms"], int)


def test_nf_command(tmp_path):
    f = tmp_path / "nf.germ"
    f.write_text("ring x;\nideal: x^2;\n")
    code, rep, _ = run("nf", f, {"poly": "x^2 + x^3"})
    assert code == 0 and rep["result"]["member"] is True


def test_corpus_all_pass():
    out = io.StringIO()
    assert corpus_run(out=out, jobs=2) == 0
    last = out.getvalue().strip().splitlines()[-1]
    done, total = last.split()[0].split("/")
    assert done == total


def test_corpus_corrupted_expectation(tmp_path):
    text = (CORPUS / "legreuel.germ").read_text().replace("# expect mu=5", "# expect mu=7")
    (tmp_path / "legreuel.germ").write_text(text)
    out = io.StringIO()
    assert corpus_run(tmp_path, out=out) == 1
    assert "FAIL  expected=7  got=5" in out.getvalue()


def test_corpus_empty_dir(tmp_path):
    out = io.StringIO()
    assert corpus_run(tmp_path, out=out) == 1
    assert "no .germ files" in out.getvalue()
    assert corpus_run(tmp_path / "missing", out=io.StringIO()) == 1


def test_corpus_unparsable_file(tmp_path):
    (tmp_path / "broken.germ").write_text("# expect mu=1\nring x\n")
    out = io.StringIO()
    assert corpus_run(tmp_path, out=out) == 1
    assert "(parse)" in out.getvalue()


def test_console_script():
    res = subprocess.run(
        [sys.executable, "-m", "germlab.cli", "mu", str(CORPUS / "smooth_icis.germ"), "--json"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["result"]["mu"] == 0


SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report.schema.json").read_text())


@pytest.mark.parametrize(
    "cmd,name",
    [
        ("mond", "final"), ("mu", "legreuel"), ("tau", "legreuel"), ("kcodim", "squares"), ("image", "s1"),
        ("conductor", "crosscap"), ("fitting1", "crosscap"), ("mg", "s1"), ("hilbert", "final"),
        ("oracle-ae", "s1"), ("mu", "not_ci"), ("std", "d4"), ("dim", "d4"),
    ],
)
def test_report_matches_published_schema(cmd, name):
    _, rep, _ = run(cmd, CORPUS / f"{name}.germ", {"timing": True})
    jsonschema.validate(json.loads(to_json(rep)), SCHEMA)


def test_error_report_matches_schema():
    _, rep, _ = run("mu", "/nonexistent/file.germ")
    jsonschema.validate(rep, SCHEMA)
