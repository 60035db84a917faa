"""
Curated frameworks, expected-verdict manifests and principle tables.

Frameworks live in extrank/data as <name>.apx. A <name>.expect manifest holds
one assertion per line:

    <spec>  <E>  <E'>  <verdict>

Principle tables pair each (principle, spec) cell with its published verdict
and, for refuted cells, a curated counterexample.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import pandas as pd
from pydantic import BaseModel

from .apx import read_apx
from .engine import compare
from .errors import ExtRankError
from .framework import Framework, Verdict, parse_set
from .fuzzing import fuzz
from .principles import Principle, PrincipleReport, Witness, check_instance, check_principle
from .specs import parse_spec

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"


def corpus_names() -> List[str]:
    return sorted(p.stem for p in DATA_DIR.glob("*.apx"))


@lru_cache(maxsize=None)
def load_framework(name: str) -> Framework:
    path = DATA_DIR / f"{name}.apx"
    if not path.exists():
        raise ExtRankError(f"no corpus framework named '{name}'")
    return read_apx(path)


# expectation manifests ---------------------------------------------------------------

class Expectation(BaseModel):
    framework: str
    spec: str
    left: str
    right: str
    verdict: Verdict
    line: int


def read_expectations(name: str) -> List[Expectation]:
    path = DATA_DIR / f"{name}.expect"
    if not path.exists():
        return []
    out = []
    for number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise ExtRankError(f"{path}:{number}: expected 'spec E E' verdict', got '{raw.strip()}'")
        spec, left, right, verdict = fields
        out.append(Expectation(framework=name, spec=spec, left=left, right=right,
                               verdict=Verdict(verdict), line=number))
    return out


def check_expectations(name: str) -> List[Tuple[Expectation, Verdict]]:
    """Every assertion of a manifest paired with the verdict actually computed"""
    F = load_framework(name)
    results = []
    for expectation in read_expectations(name):
        spec = parse_spec(expectation.spec)
        observed = compare(F, spec, parse_set(F, expectation.left), parse_set(F, expectation.right))
        results.append((expectation, observed))
    return results


# principle tables ----------------------------------------------------------------------

GEN = "generalisation"
COMP = "composition"
DECOMP = "decomposition"
WEAK = "weak-reinstatement"
STRONG = "strong-reinstatement"
ADD = "addition-robustness"
SYNTAX = "syntax-independence"

ROWS = (GEN, COMP, DECOMP, WEAK, STRONG, ADD, SYNTAX)


@dataclass(frozen=True)
class CuratedWitness:
    framework: str
    left: str = ""
    right: str = ""
    argument: Optional[str] = None
    attack: Optional[Tuple[str, str]] = None
    partition: Optional[str] = None

    def parts(self) -> Optional[List[List[str]]]:
        if self.partition is None:
            return None
        return [[a for a in part.split(",") if a] for part in self.partition.split("|")]

    def orientations(self, F: Framework) -> List[Witness]:
        """The instance as written, then with the two sets swapped"""
        left = F.names_of(parse_set(F, self.left).mask)
        right = F.names_of(parse_set(F, self.right).mask)
        base = dict(framework=str(F), argument=self.argument, attack=self.attack, partition=self.parts())
        out = [Witness(left=left, right=right, **base)]
        if self.right and self.argument is None:
            out.append(Witness(left=right, right=left, **base))
        return out


@dataclass(frozen=True)
class TableCell:
    table: str
    principle: str
    spec: str
    published: bool
    witness: Optional[CuratedWitness] = None


def _w(framework: str, left: str = "", right: str = "", argument: Optional[str] = None,
       attack: Optional[Tuple[str, str]] = None, partition: Optional[str] = None) -> CuratedWitness:
    return CuratedWitness(framework, left, right, argument, attack, partition)


F5_REINSTATE = _w("f05", "h", argument="j")
F9_ADD = _w("f09", "a", "b,c", attack=("a", "b"))
F12_ADD = _w("f12", "a", "b,c", attack=("a", "b"))
SPLIT_CHAIN = _w("split_chain", "q", "p,x,y", partition="p,q|x,y")
RANGE_SIZE = _w("range_size")


def _least_discriminating() -> Dict[Tuple[str, str], Tuple[bool, Optional[CuratedWitness]]]:
    cells = {}
    for sigma in ("cf", "ad", "co", "pr", "gr", "st", "sst"):
        spec = f"ld-{sigma}"
        cells[(f"{GEN}-{sigma}", spec)] = (sigma != "st", _w("f06") if sigma == "st" else None)
        cells[(COMP, spec)] = (True, None)
        cells[(DECOMP, spec)] = (False, _w("f07", "a,b,c", "a,c,d", partition="a,b|c,d"))
        cells[(WEAK, spec)] = (True, None)
        cells[(STRONG, spec)] = (False, _w("f08", "a", argument="b"))
        robust = sigma in ("cf", "ad", "gr", "st")
        cells[(ADD, spec)] = (robust, None if robust else F9_ADD)
        cells[(SYNTAX, spec)] = (True, None)
    return cells


def _lexicographic(prefix: str) -> Dict[Tuple[str, str], Tuple[bool, Optional[CuratedWitness]]]:
    cells = {}
    cardinal = prefix == "r-c-"
    for sigma in ("ad", "co", "gr", "pr", "sst"):
        spec = f"{prefix}{sigma}"
        if cardinal and sigma == "sst":
            # published as satisfied; range size and range inclusion disagree on range_size
            cells[(f"{GEN}-{sigma}", spec)] = (True, RANGE_SIZE)
        else:
            cells[(f"{GEN}-{sigma}", spec)] = (True, None)
        cells[(COMP, spec)] = (True, None)
        if cardinal:
            cells[(DECOMP, spec)] = (False, _w("f15", "d,e", "a,b,c", partition="a,b,c|d,e"))
        else:
            # published as satisfied; the split chain refutes it
            cells[(DECOMP, spec)] = (True, SPLIT_CHAIN)
        cells[(WEAK, spec)] = (True, None)
        cells[(STRONG, spec)] = (sigma != "ad", F5_REINSTATE if sigma == "ad" else None)
        if sigma == "ad":
            cells[(ADD, spec)] = (True, None)
        else:
            cells[(ADD, spec)] = (False, F9_ADD if sigma == "pr" else F12_ADD)
        cells[(SYNTAX, spec)] = (True, None)
    return cells


def _copeland() -> Dict[Tuple[str, str], Tuple[bool, Optional[CuratedWitness]]]:
    spec = "cope:conflicts,ud"
    cells = {
        (f"{GEN}-ad", spec): (True, None),
        (COMP, spec): (False, _w("f15_cope", "b,e,g", "a,d,e", partition="a,b,c|d,e,f,g")),
        (DECOMP, spec): (False, _w("f16", "c,d", "a,e", partition="a,b,c|d,e")),
        (WEAK, spec): (True, None),
        (STRONG, spec): (False, F5_REINSTATE),
        (ADD, spec): (False, _w("f17", "a,e,f", "a,b,c,d", attack=("a", "b"))),
        (SYNTAX, spec): (True, None),
    }
    for spec in ("cope:nonatt", "cope:strdef"):
        cells.update({
            (f"{GEN}-ad", spec): (False, _w("f05")),
            (COMP, spec): (False, _w("f18", "a,c", "b,c,d,e", partition="a,b|c,d,e")),
            (DECOMP, spec): (False, _w("f16", "a,b,e", "c,d", partition="a,b,c|d,e")),
            (WEAK, spec): (True, None),
            (STRONG, spec): (True, None),
            (ADD, spec): (False, _w("f19", "a,d,e", "a,b,e,f", attack=("a", "b"))),
            (SYNTAX, spec): (True, None),
        })
    return cells


def _copeland_ncount() -> Dict[Tuple[str, str], Tuple[bool, Optional[CuratedWitness]]]:
    spec = "cope:ncount-cat"
    return {
        (f"{GEN}-ad", spec): (False, _w("f05")),
        (COMP, spec): (False, _w("f18", "a,b,c", "a,c", partition="a,b|c,d,e")),
        (DECOMP, spec): (False, _w("f16", "c,d", "a,b,e", partition="a,b,c|d,e")),
        (WEAK, spec): (False, F5_REINSTATE),
        (STRONG, spec): (False, F5_REINSTATE),
        (ADD, spec): (False, _w("f20", "a,e", "b,c,d,f", attack=("a", "b"))),
        (SYNTAX, spec): (True, None),
    }


def _group_comparison() -> Dict[Tuple[str, str], Tuple[bool, Optional[CuratedWitness]]]:
    spec = "gc:cat"
    return {
        (f"{GEN}-ad", spec): (False, _w("f05")),
        (COMP, spec): (True, None),
        (DECOMP, spec): (False, _w("f16", "a", "b,d", partition="a,b,c|d,e")),
        (WEAK, spec): (True, None),
        (STRONG, spec): (False, F5_REINSTATE),
        (ADD, spec): (False, _w("f21", "a,d", "b,c", attack=("a", "b"))),
        (SYNTAX, spec): (True, None),
    }


AGGREGATORS = ("sum", "max", "leximax", "min", "leximin")
LEXICAL = ("sum", "leximax", "leximin")


def _ne_addition(sigma: str, agg: str) -> CuratedWitness:
    ab = ("a", "b")
    if sigma in ("co", "pr"):
        return _w("f25", "a", "b,c", attack=ab) if agg == "max" else _w("f25", "a,e", "b,g", attack=ab)
    if sigma == "gr":
        return _w("f30", "a,e,f", "b,c,d", attack=ab) if agg in LEXICAL else _w("f31", "a,d", "b,e", attack=ab)
    if agg == "min":
        return _w("f29", "a,c", "b,c", attack=ab)
    if agg == "max":
        return _w("f28", "a,e", "b,f", attack=ab) if sigma == "ad" else _w("f28", "a", "b,f", attack=ab)
    if sigma == "ad":
        return _w("f26", "a,d,e", "a,b,c", attack=ab)
    return _w("f27", "a,d,f", "b,c,e", attack=ab)


def _ordered_ne() -> Dict[Tuple[str, str], Tuple[bool, Optional[CuratedWitness]]]:
    cells = {}
    for sigma in ("ad", "co", "gr", "pr", "st", "sst"):
        for agg in AGGREGATORS:
            spec = f"obe:ne-{sigma}:{agg}"
            cells[(f"{GEN}-{sigma}", spec)] = (False, _w("f05"))
            cells[(COMP, spec)] = (True, None)
            if sigma == "gr":
                cells[(DECOMP, spec)] = (False, _w("f23", "a,c,e", "b,d,f"))
            else:
                cells[(DECOMP, spec)] = (False, _w("f22", "a,e", "c,f,g"))
            weak = agg not in ("min", "leximin") or sigma == "gr"
            cells[(WEAK, spec)] = (weak, None if weak else _w("f24", "a,e", argument="c"))
            if agg == "leximax":
                cells[(STRONG, spec)] = (True, None)
            elif agg == "max":
                cells[(STRONG, spec)] = (False, F5_REINSTATE)
            else:
                cells[(STRONG, spec)] = (False, _w("f10", "b", argument="d"))
            cells[(ADD, spec)] = (False, _ne_addition(sigma, agg))
            cells[(SYNTAX, spec)] = (True, None)
    return cells


def _ordered_cat() -> Dict[Tuple[str, str], Tuple[bool, Optional[CuratedWitness]]]:
    cells = {}
    for agg in AGGREGATORS:
        spec = f"obe:cat:{agg}"
        cells[(f"{GEN}-ad", spec)] = (False, _w("f05"))
        cells[(COMP, spec)] = (True, None)
        cells[(DECOMP, spec)] = (False, _w("f22", "a,e", "c,f,g"))
        weak = agg not in ("min", "leximin")
        cells[(WEAK, spec)] = (weak, None if weak else F5_REINSTATE)
        strong = agg == "leximax"
        cells[(STRONG, spec)] = (strong, None if strong else F5_REINSTATE)
        if agg in ("min", "leximin"):
            cells[(ADD, spec)] = (False, _w("f33", "a,e", "b,c", attack=("a", "b")))
        else:
            cells[(ADD, spec)] = (False, _w("f32", "a,d,f", "b,c,e", attack=("a", "b")))
        cells[(SYNTAX, spec)] = (True, None)
    return cells


TABLE_BUILDERS = {
    "ld": _least_discriminating,
    "r": lambda: _lexicographic("r-"),
    "r-c": lambda: _lexicographic("r-c-"),
    "cope": _copeland,
    "cope-ncount": _copeland_ncount,
    "gc": _group_comparison,
    "obe-ne": _ordered_ne,
    "obe-cat": _ordered_cat,
}

TABLE_TITLES = {
    "ld": "least-discriminating LD^σ",
    "r": "lexicographic r-σ",
    "r-c": "cardinality r-c-σ",
    "cope": "Copeland over Conflicts+UD, nonatt, strdef",
    "cope-ncount": "Copeland over ncount-cat",
    "gc": "group comparison gc-cat",
    "obe-ne": "ordered aggregation of ne_σ",
    "obe-cat": "ordered aggregation of Cat",
}


@lru_cache(maxsize=None)
def table_cells(name: str) -> Tuple[TableCell, ...]:
    if name not in TABLE_BUILDERS:
        raise ExtRankError(f"unknown table '{name}', choose from {', '.join(TABLE_BUILDERS)}")
    return tuple(
        TableCell(name, principle, spec, published, witness)
        for (principle, spec), (published, witness) in TABLE_BUILDERS[name]().items()
    )


def observe_cell(cell: TableCell, trials: Optional[int] = None, seed: Optional[int] = None) -> PrincipleReport:
    """Curated instance first, then the whole curated framework, then fuzzing"""
    spec = parse_spec(cell.spec)
    principle = Principle.parse(cell.principle)
    if cell.witness is not None:
        F = load_framework(cell.witness.framework)
        for witness in cell.witness.orientations(F):
            report = check_instance(principle, F, spec, witness)
            if report.violated:
                return report
        report = check_principle(principle, F, spec, partition=cell.witness.parts())
        if report.violated:
            return report
        logger.info("%s / %s: curated witness %s did not refute", cell.principle, cell.spec, cell.witness.framework)
    return fuzz(spec, principle, trials=trials, seed=seed)


class CellResult(BaseModel):
    table: str
    principle: str
    spec: str
    published: bool
    observed: bool
    mode: str
    report: PrincipleReport

    @property
    def agrees(self) -> bool:
        return self.published == self.observed


def reproduce_cell(cell: TableCell, trials: Optional[int] = None, seed: Optional[int] = None) -> CellResult:
    report = observe_cell(cell, trials, seed)
    return CellResult(
        table=cell.table, principle=cell.principle, spec=cell.spec, published=cell.published,
        observed=not report.violated, mode=report.mode.value, report=report,
    )


def reproduce_table(name: str, trials: Optional[int] = None, seed: Optional[int] = None) -> pd.DataFrame:
    """One row per cell: published vs observed"""
    rows = []
    for cell in table_cells(name):
        result = reproduce_cell(cell, trials, seed)
        rows.append({
            "table": name,
            "principle": result.principle,
            "spec": result.spec,
            "published": result.published,
            "observed": result.observed,
            "agrees": result.agrees,
            "mode": result.mode,
            "outcome": result.report.outcome.value,
        })
    return pd.DataFrame(rows, columns=["table", "principle", "spec", "published", "observed", "agrees", "mode", "outcome"])
