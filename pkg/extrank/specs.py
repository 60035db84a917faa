"""
Declarative descriptions of extension-ranking semantics and their text syntax.

    r-ad | r-co | r-gr | r-pr | r-co-pr | r-sst     lexicographic presets
    r-c-<preset suffix>                            cardinality presets, e.g. r-c-co
    ld-<sigma>                                     least-discriminating
    lex:<rel>,<rel>,...                            lexicographic combination
    cope:<rel>,<rel>,...                           Copeland combination
    gc:<cat|bbs>                                   group comparison
    obe:<ne-sigma|cat|cat-sv|bbs-sv>:<aggregator>  ordered aggregation of member values
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from .argument_ranking import GradualId
from .base_relations import CARDINALITY_OF, CONFLICTS, DN, MAXI, MINI, UD, UNATT, BaseRelation, RelationKind
from .errors import ExtRankError, SpecSyntaxError
from .semantics import SemanticsId


class Method(str, Enum):
    LD = "ld"
    LEX = "lex"
    COPE = "cope"
    GC = "gc"
    OBE = "obe"


class Aggregator(str, Enum):
    SUM = "sum"
    MAX = "max"
    MIN = "min"
    LEXIMAX = "leximax"
    LEXIMIN = "leximin"

    @property
    def sequential(self) -> bool:
        return self in (Aggregator.LEXIMAX, Aggregator.LEXIMIN)


class SourceKind(str, Enum):
    NE = "ne"
    CAT = "cat"
    CAT_SV = "cat-sv"
    BBS_SV = "bbs-sv"


@dataclass(frozen=True)
class EvaluationSource:
    """Per-argument values fed to an aggregator"""

    kind: SourceKind
    semantics: Optional[SemanticsId] = None

    @property
    def name(self) -> str:
        if self.kind is SourceKind.NE:
            return f"ne-{self.semantics.value}"
        return self.kind.value

    @classmethod
    def parse(cls, text: str) -> "EvaluationSource":
        token = text.strip().lower()
        if token.startswith("ne-"):
            return cls(SourceKind.NE, SemanticsId.parse(token[3:]))
        try:
            kind = SourceKind(token)
        except ValueError:
            raise SpecSyntaxError(f"unknown evaluation source '{text}'") from None
        if kind is SourceKind.NE:
            raise SpecSyntaxError("ne needs a semantics, e.g. ne-co")
        return cls(kind)


LEX_PRESETS: Dict[str, Tuple[BaseRelation, ...]] = {
    "ad": (CONFLICTS, UD),
    "co": (CONFLICTS, UD, DN),
    "gr": (CONFLICTS, UD, DN, MINI),
    "pr": (CONFLICTS, UD, MAXI),
    "co-pr": (CONFLICTS, UD, DN, MAXI),
    "sst": (CONFLICTS, UD, DN, UNATT),
}

_CARDINAL = {base: BaseRelation(card) for card, base in CARDINALITY_OF.items()}

# pairwise set comparisons whose at-least verdicts need not compose
_PAIRWISE_COUNTS = (RelationKind.NONATT, RelationKind.STRDEF, RelationKind.NCOUNT)


def cardinality_variant(relations: Tuple[BaseRelation, ...]) -> Tuple[BaseRelation, ...]:
    return tuple(_CARDINAL.get(r.kind, r) for r in relations)


@dataclass(frozen=True)
class RankingSpec:
    method: Method
    semantics: Optional[SemanticsId] = None
    relations: Tuple[BaseRelation, ...] = ()
    gradual: Optional[GradualId] = None
    source: Optional[EvaluationSource] = None
    aggregator: Optional[Aggregator] = None
    label: str = ""

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.method is Method.LD:
            return f"ld-{self.semantics.value}"
        if self.method in (Method.LEX, Method.COPE):
            return f"{self.method.value}:" + ",".join(r.name for r in self.relations)
        if self.method is Method.GC:
            return f"gc:{self.gradual.value}"
        return f"obe:{self.source.name}:{self.aggregator.value}"

    def __str__(self) -> str:
        return self.describe()

    @property
    def total(self) -> bool:
        """Comparator never answers incomparable"""
        if self.method in (Method.LD, Method.COPE, Method.OBE):
            return True
        if self.method is Method.LEX:
            return all(r.total for r in self.relations)
        return False

    @property
    def transitive(self) -> bool:
        """At-least verdicts compose; required before a total comparator may be sorted"""
        if self.method is Method.LEX:
            return not any(r.kind in _PAIRWISE_COUNTS for r in self.relations)
        if self.method is Method.OBE:
            # Cat values tie within a tolerance
            return self.source.kind is not SourceKind.CAT
        return True


def lex(*relations: BaseRelation, label: str = "") -> RankingSpec:
    return RankingSpec(Method.LEX, relations=tuple(relations), label=label)


def cope(*relations: BaseRelation) -> RankingSpec:
    return RankingSpec(Method.COPE, relations=tuple(relations))


def ld(sigma: SemanticsId) -> RankingSpec:
    return RankingSpec(Method.LD, semantics=sigma)


def gc(rho: GradualId) -> RankingSpec:
    return RankingSpec(Method.GC, gradual=rho)


def obe(source: EvaluationSource, aggregator: Aggregator) -> RankingSpec:
    return RankingSpec(Method.OBE, source=source, aggregator=aggregator)


def preset(name: str) -> RankingSpec:
    """r-sigma or r-c-sigma"""
    key = name.strip().lower()
    if key.startswith("r-c-") and key[4:] in LEX_PRESETS:
        return lex(*cardinality_variant(LEX_PRESETS[key[4:]]), label=key)
    if key.startswith("r-") and key[2:] in LEX_PRESETS:
        return lex(*LEX_PRESETS[key[2:]], label=key)
    raise SpecSyntaxError(f"unknown preset '{name}'")


def _relations(body: str) -> Tuple[BaseRelation, ...]:
    parts = [p for p in body.split(",") if p.strip()]
    if not parts:
        raise SpecSyntaxError("at least one base relation is required")
    return tuple(BaseRelation.parse(p) for p in parts)


def parse_spec(text: str) -> RankingSpec:
    token = text.strip().lower()
    if not token:
        raise SpecSyntaxError("empty ranking spec")
    try:
        if token.startswith("r-"):
            return preset(token)
        if token.startswith("ld-"):
            return ld(SemanticsId.parse(token[3:]))
        head, sep, rest = token.partition(":")
        if not sep:
            raise SpecSyntaxError(f"cannot parse ranking spec '{text}'")
        if head == "lex":
            return lex(*_relations(rest))
        if head == "cope":
            return cope(*_relations(rest))
        if head == "gc":
            return gc(GradualId.parse(rest))
        if head == "obe":
            source, sep, agg = rest.rpartition(":")
            if not sep:
                raise SpecSyntaxError("obe needs a source and an aggregator, e.g. obe:ne-co:sum")
            try:
                aggregator = Aggregator(agg.strip())
            except ValueError:
                raise SpecSyntaxError(f"unknown aggregator '{agg}'") from None
            return obe(EvaluationSource.parse(source), aggregator)
    except SpecSyntaxError:
        raise
    except ExtRankError as e:
        raise SpecSyntaxError(str(e)) from e
    raise SpecSyntaxError(f"unknown ranking method '{head}'")
