import json

import pytest

from extrank.apx import read_apx
from extrank.cli import main
from extrank.corpus import DATA_DIR

F04 = str(DATA_DIR / "f04.apx")
F05 = str(DATA_DIR / "f05.apx")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_extensions(capsys):
    code, out, err = run(capsys, "extensions", F04, "--semantics", "st")
    assert code == 0
    assert out.splitlines() == ["{a,c,g}"]
    assert "1 st extension(s)" in err


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", F04, "--spec", "r-ad", "--left", "b,g", "--right", "a,f")
    assert code == 0
    assert out.strip() == "incomparable"


def test_compare_explained(capsys):
    code, out, _ = run(capsys, "compare", F04, "--spec", "r-co", "--left", "g", "--right", "d", "--explain")
    assert out.strip() == "better (dn)"


def test_max(capsys):
    code, out, _ = run(capsys, "max", F05, "--spec", "r-co")
    assert code == 0
    assert out.splitlines() == ["{h,j}"]


def test_rank_writes_reports(capsys, tmp_path):
    dot, report = tmp_path / "r.dot", tmp_path / "r.json"
    code, out, _ = run(capsys, "rank", F05, "--spec", "r-ad", "--dot", str(dot), "--json", str(report))
    assert code == 0
    assert out.startswith("* [0]")
    assert dot.read_text().startswith("digraph ranking {")
    assert json.loads(report.read_text())["spec"] == "r-ad"


def test_gradual(capsys):
    code, out, _ = run(capsys, "gradual", F04, "--method", "cat", "--semantics", "co")
    assert code == 0
    assert "ne_co" in out
    assert "1.0000" in out


@pytest.mark.parametrize("argv, expected", [
    (["compare", "missing.apx", "--spec", "r-ad", "--left", "a", "--right", "b"], 2),
    (["compare", F04, "--spec", "r-nope", "--left", "a", "--right", "b"], 2),
    (["compare", F04, "--spec", "r-ad", "--left", "z", "--right", "b"], 2),
    (["rank", F04, "--spec", "r-ad", "--cap", "3"], 3),
    (["extensions", F04, "--semantics", "st", "--log-level", "chatty"], 2),
])
def test_error_exit_codes(capsys, argv, expected):
    code, out, err = run(capsys, *argv)
    assert code == expected
    assert out == ""
    assert err.startswith("⚠")


def test_principle_violation_exits_one(capsys):
    code, out, err = run(capsys, "principles", F05, "--spec", "r-ad",
                         "--principle", "strong-reinstatement", "--principle", "weak-reinstatement")
    assert code == 1
    assert "strong-reinstatement" in out
    assert "strong-reinstatement: violated" in err


def test_fuzz_saves_the_witness(capsys, tmp_path):
    target = tmp_path / "witness.apx"
    code, out, _ = run(capsys, "fuzz", "--spec", "r-ad", "--principle", "strong-reinstatement",
                       "--trials", "50", "--save", str(target))
    assert code == 1
    assert json.loads(out)["outcome"] == "violated"
    assert read_apx(target).n >= 1


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as caught:
        main(["rank"])
    assert caught.value.code == 2
