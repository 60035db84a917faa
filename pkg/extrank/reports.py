"""
Serialisable views of rankings and principle results: JSON reports, DOT
graphs and pandas tables.
"""

from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd
from pydantic import BaseModel

from .corpus import ROWS
from .lattice import MaterializedRanking
from .principles import PrincipleReport

SCHEMA_VERSION = 1


class EdgeProvenance(BaseModel):
    better: int
    worse: int
    relation: str


class RankingReport(BaseModel):
    """JSON form of a materialized ranking; sets are lists of argument names"""

    schema_version: int = SCHEMA_VERSION
    framework_digest: str
    spec: str
    arguments: List[str]
    complete: bool
    classes: List[List[List[str]]]
    edges: List[Tuple[int, int]]
    maximal: List[int]
    provenance: List[EdgeProvenance] = []
    balances: Optional[Dict[str, int]] = None

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def ranking_report(ranking: MaterializedRanking) -> RankingReport:
    F = ranking.framework
    balances = None
    if ranking.balances is not None:
        balances = {F.format_set(mask): value for mask, value in ranking.balances.items()}
    return RankingReport(
        framework_digest=F.digest,
        spec=ranking.spec.describe(),
        arguments=list(F.arguments),
        complete=ranking.complete,
        classes=[[F.names_of(m) for m in members] for members in ranking.classes],
        edges=list(ranking.edges),
        maximal=ranking.maximal,
        provenance=[
            EdgeProvenance(better=b, worse=w, relation=label)
            for (b, w), label in sorted(ranking.provenance.items())
        ],
        balances=balances,
    )


def parse_report(text: str) -> RankingReport:
    return RankingReport.model_validate_json(text)


def _label(members: Sequence[Sequence[str]]) -> str:
    return "\\n".join("{" + ",".join(s) + "}" for s in members)


def emit_dot(ranking: MaterializedRanking) -> str:
    """Graphviz text: one node per class, edges point from worse to better"""
    report = ranking_report(ranking)
    top = set(report.maximal)
    lines = ["digraph ranking {", "graph [rankdir=BT];"]
    append = lines.append
    append('node [shape=box fontname=Arial];')
    for k, members in enumerate(report.classes):
        extra = " peripheries=2" if k in top else ""
        append(f'c{k} [label="{_label(members)}"{extra}];')
    for better, worse in report.edges:
        append(f"c{worse} -> c{better};")
    append("}")
    return "\n".join(lines) + "\n"


# tables ---------------------------------------------------------------------------------

def reports_frame(reports: Sequence[PrincipleReport]) -> pd.DataFrame:
    rows = []
    for report in reports:
        witness = report.witness
        sets: Tuple[str, ...] = ()
        if witness is not None:
            sets = tuple("{" + ",".join(s) + "}" for s in (witness.left, witness.right) if s is not None)
        rows.append({
            "principle": report.principle,
            "spec": report.spec,
            "mode": report.mode.value,
            "checked": report.sample_size,
            "outcome": report.outcome.value,
            "witness": " vs ".join(sets),
        })
    return pd.DataFrame(rows, columns=["principle", "spec", "mode", "checked", "outcome", "witness"])


def principle_matrix(cells: pd.DataFrame) -> pd.DataFrame:
    """Rows are principles, columns specs; ✓/✗ as observed, '!' marks a disagreement with the published cell"""
    frame = cells.copy()
    frame["mark"] = frame["observed"].map({True: "✓", False: "✗"}) + frame["agrees"].map({True: "", False: "!"})
    frame["row"] = frame["principle"].str.replace(r"^generalisation-\w+$", "generalisation", regex=True)
    matrix = frame.pivot(index="row", columns="spec", values="mark")
    order = [p for p in ROWS if p in matrix.index]
    columns = list(dict.fromkeys(frame["spec"]))
    return matrix.loc[order, columns]
