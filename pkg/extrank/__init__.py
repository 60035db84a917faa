"""Extension rankings for abstract argumentation frameworks."""

from .apx import parse_apx, read_apx
from .engine import compare, explain, obe_sequence
from .framework import ArgSet, Framework, Verdict, build_framework, parse_set
from .lattice import MaterializedRanking, materialize, most_plausible
from .principles import PrincipleReport, check_principle, replay
from .semantics import SemanticsId, enumerate_extensions
from .specs import RankingSpec, parse_spec

__version__ = "0.1.0"

__all__ = [
    "ArgSet",
    "Framework",
    "MaterializedRanking",
    "PrincipleReport",
    "RankingSpec",
    "SemanticsId",
    "Verdict",
    "build_framework",
    "check_principle",
    "compare",
    "enumerate_extensions",
    "explain",
    "materialize",
    "most_plausible",
    "obe_sequence",
    "parse_apx",
    "parse_set",
    "parse_spec",
    "read_apx",
    "replay",
]
