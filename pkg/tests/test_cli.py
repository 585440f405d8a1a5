import pytest

from teamlogic.cli import main
from teamlogic.suites import derivation_manifest


@pytest.fixture
def files(tmp_path):
    model = tmp_path / "m.txt"
    model.write_text("universe: 0 1\n")
    square = tmp_path / "square.txt"
    square.write_text("vars: x y\nrow: 0 0\nrow: 0 1\nrow: 1 0\nrow: 1 1\n")
    three = tmp_path / "three.txt"
    three.write_text("vars: x y\nrow: 0 0\nrow: 0 1\nrow: 1 0\n")
    only_x = tmp_path / "x.txt"
    only_x.write_text("vars: x\nrow: 0\n")
    return {"model": str(model), "square": str(square), "three": str(three), "x": str(only_x),
            "dir": tmp_path}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_display_teams(files, capsys):
    code, out, _ = run(capsys, "check", files["model"], files["square"], "indep(x;y;)")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "check", files["model"], files["three"], "indep(x;y;)")
    assert code == 0 and out.strip() == "false"


def test_check_trace(files, capsys):
    code, out, _ = run(capsys, "check", "--trace", files["model"], files["three"], "exists z (indep(x;z;) | y = z)")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] in ("true", "false") and len(lines) > 1


def test_check_domain_error(files, capsys):
    code, _, err = run(capsys, "check", files["model"], files["x"], "indep(x;y;)")
    assert code == 3 and "domain" in err


def test_check_parse_errors(files, capsys):
    assert run(capsys, "check", files["model"], files["square"], "indep(x;y")[0] == 2
    bad = files["dir"] / "bad.txt"
    bad.write_text("universe 0 1\n")
    assert run(capsys, "check", str(bad), files["square"], "x = y")[0] == 2
    assert run(capsys, "check", str(files["dir"] / "missing"), files["square"], "x = y")[0] == 2


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "exists y forall x R(x,y)")
    assert code == 0
    assert out.startswith("forall x exists y") and "indep(" in out


def test_nf_verify(capsys):
    code, out, _ = run(capsys, "nf", "--verify", "--max-team", "1", "exists y forall x R(x,y)")
    assert code == 0 and "equivalent" in out.lower()


def test_nf_open_formula(capsys):
    assert run(capsys, "nf", "exists y R(x,y)")[0] == 4


def test_approx_level_zero(capsys):
    code, out, _ = run(capsys, "approx", "exists y forall x R(x,y)", "0")
    assert code == 0
    assert out.strip() == "forall _vx0_0_0 exists _vy0_0_0 exists _vy0_0_1 R(_vx0_0_0,_vy0_0_0) & _vy0_0_1 = _vx0_0_0"


def test_approx_stats(capsys):
    code, out, err = run(capsys, "approx", "--stats", "exists y forall x R(x,y)", "2")
    assert code == 0
    assert "p2 = 53" in out
    assert "warning" in err


def test_approx_negative(capsys):
    assert run(capsys, "approx", "exists y forall x R(x,y)", "--", "-1")[0] == 2


def _bundled(tmp_path, name):
    text = dict((e[0], e[1]) for e in derivation_manifest())[name]
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", _bundled(tmp_path, "identity-axiom.deriv"))
    assert code == 0 and out.strip() == "accepted"
    code, out, _ = run(capsys, "verify", _bundled(tmp_path, "bad-forall-elim-indep.deriv"))
    assert code == 5 and "COND2_VIOLATION" in out
    assert run(capsys, "verify", _bundled(tmp_path, "bad-unknown-rule.deriv"))[0] == 2


def test_equiv(capsys):
    code, out, _ = run(capsys, "equiv", "--max-team", "3", "dep(x,y)", "indep(y;y;x)")
    assert code == 0 and out.startswith("equivalent")
    code, out, _ = run(capsys, "equiv", "indep(x;y;)", "dep(x,y)")
    assert code == 0 and out.startswith("counterexample")
    assert "-- model" in out and "vars: x y" in out
    code, out, _ = run(capsys, "equiv", "P(x) | Q(x)", "P(x) | Q(x)")
    assert code == 0 and out.startswith("equivalent")


def test_equiv_budget(capsys):
    code, out, _ = run(capsys, "equiv", "--budget", "5", "dep(x,y)", "indep(y;y;x)")
    assert code == 6 and "budget exceeded" in out


def test_equiv_constants(capsys):
    code, out, _ = run(capsys, "equiv", "--const", "c", "x = c", "c = x")
    assert code == 0


def test_suite(capsys):
    code, out, _ = run(capsys, "suite", "corpus")
    assert code == 0 and out.startswith("corpus:")
    code, out, _ = run(capsys, "suite", "lemmas", "--trials", "2", "--seed", "3", "--max-team", "2")
    assert code == 0 and "seed=3" in out


def test_suite_rejects_trials(capsys):
    assert run(capsys, "suite", "corpus", "--trials", "3")[0] == 2


def test_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
