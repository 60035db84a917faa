import pandas as pd

from extrank.lattice import materialize
from extrank.principles import Principle, check_principle
from extrank.reports import emit_dot, parse_report, principle_matrix, ranking_report, reports_frame
from extrank.specs import parse_spec

from .conftest import fresh


def test_json_report_round_trip(f05):
    ranking = materialize(f05, parse_spec("r-ad"))
    report = ranking_report(ranking)
    restored = parse_report(report.to_json())
    assert restored == report
    assert restored.classes[0] == [[], ["h"], ["h", "j"]]
    assert restored.framework_digest == f05.digest
    assert restored.balances is None


def test_copeland_report_keeps_balances(f05):
    report = ranking_report(materialize(f05, parse_spec("cope:conflicts,ud")))
    assert report.balances["{i}"] == 1
    assert report.balances["{h,i}"] == -6


def test_dot_output(f05):
    ranking = materialize(f05, parse_spec("r-co"))
    text = emit_dot(ranking)
    assert text.startswith("digraph ranking {")
    assert text.count("peripheries=2") == len(ranking.maximal)
    assert text == emit_dot(materialize(fresh("f05"), parse_spec("r-co")))


def test_dot_single_class():
    ranking = materialize(fresh("f06"), parse_spec("ld-st"))
    text = emit_dot(ranking)
    assert "c0 [" in text
    assert "->" not in text


def test_reports_frame(f05):
    reports = [
        check_principle(Principle.parse(name), f05, parse_spec("r-ad"))
        for name in ("strong-reinstatement", "weak-reinstatement")
    ]
    frame = reports_frame(reports)
    assert list(frame.columns) == ["principle", "spec", "mode", "checked", "outcome", "witness"]
    assert list(frame["outcome"]) == ["violated", "no_violation_found"]
    assert frame.loc[0, "witness"].startswith("{")
    assert frame.loc[1, "witness"] == ""


def test_principle_matrix():
    cells = pd.DataFrame([
        {"principle": "generalisation-ad", "spec": "r-ad", "observed": True, "agrees": True},
        {"principle": "strong-reinstatement", "spec": "r-ad", "observed": False, "agrees": True},
        {"principle": "generalisation-co", "spec": "r-co", "observed": True, "agrees": True},
        {"principle": "strong-reinstatement", "spec": "r-co", "observed": True, "agrees": False},
    ])
    matrix = principle_matrix(cells)
    assert list(matrix.index) == ["generalisation", "strong-reinstatement"]
    assert list(matrix.columns) == ["r-ad", "r-co"]
    assert matrix.loc["strong-reinstatement", "r-ad"] == "✗"
    assert matrix.loc["strong-reinstatement", "r-co"] == "✓!"
