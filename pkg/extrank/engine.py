"""
Pairwise comparators for every extension-ranking method.

A comparator is built once per (framework, spec) and cached on the framework;
it answers verdicts on raw masks and records which base relation decided a
lexicographic comparison.
"""

import logging
import math
from functools import lru_cache, partial
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .argument_ranking import GradualId, argument_ranking, cat_scores, ne, sv_for
from .base_relations import SUBSET_KINDS, CARDINALITY_OF, BaseRelation, compare_masks, subset_value, weak_matrix
from .config import get_settings
from .errors import TooLargeForCope
from .framework import ArgSet, Framework, Verdict, bits
from .semantics import extension_masks
from .specs import Aggregator, EvaluationSource, Method, RankingSpec, SourceKind

logger = logging.getLogger(__name__)

# per-comparator memo size (masks)
VALUE_CACHE_SIZE = 1 << 16


class Comparator:
    """Verdicts for one spec on one framework"""

    def __init__(self, F: Framework, spec: RankingSpec):
        self.F = F
        self.spec = spec

    def verdict(self, left: int, right: int) -> Verdict:
        return self.decide(left, right)[0]

    def decide(self, left: int, right: int) -> Tuple[Verdict, str]:
        raise NotImplementedError


class LeastDiscriminating(Comparator):
    """Extensions above non-extensions, no other distinction"""

    def __init__(self, F: Framework, spec: RankingSpec):
        super().__init__(F, spec)
        self.members = frozenset(extension_masks(F, spec.semantics))

    def decide(self, left: int, right: int) -> Tuple[Verdict, str]:
        ours = left in self.members
        theirs = right in self.members
        return Verdict.from_weak(ours or not theirs, theirs or not ours), self.spec.semantics.value


class Lexicographic(Comparator):
    def __init__(self, F: Framework, spec: RankingSpec):
        super().__init__(F, spec)
        # comparators are shared through the framework cache
        self._subset_value = lru_cache(maxsize=VALUE_CACHE_SIZE)(partial(subset_value, F))

    def _value(self, relation: BaseRelation, mask: int) -> int:
        return self._subset_value(CARDINALITY_OF.get(relation.kind, relation.kind), mask)

    def _stage(self, relation: BaseRelation, left: int, right: int) -> Verdict:
        if relation.kind in SUBSET_KINDS:
            ours, theirs = self._value(relation, left), self._value(relation, right)
            return Verdict.from_weak(ours & ~theirs == 0, theirs & ~ours == 0)
        if relation.kind in CARDINALITY_OF:
            ours = self._value(relation, left).bit_count()
            theirs = self._value(relation, right).bit_count()
            return Verdict.from_numbers(-ours, -theirs)
        return compare_masks(self.F, relation, left, right)

    def decide(self, left: int, right: int) -> Tuple[Verdict, str]:
        if left == right:
            return Verdict.EQUIVALENT, ""
        for relation in self.spec.relations:
            stage = self._stage(relation, left, right)
            if stage is not Verdict.EQUIVALENT:
                return stage, relation.name
        return Verdict.EQUIVALENT, ""


def copeland_balances(F: Framework, relations: Sequence[BaseRelation]) -> np.ndarray:
    """Win-minus-loss balance of every subset (indexed by mask), summed over relations"""
    cap = get_settings().cope_cap
    if F.n > cap:
        raise TooLargeForCope(F.n, cap)

    def compute() -> np.ndarray:
        balance = np.zeros(1 << F.n, dtype=np.int64)
        for relation in relations:
            W = weak_matrix(F, relation)
            balance += W.sum(axis=1).astype(np.int64) - W.sum(axis=0).astype(np.int64)
        logger.debug("copeland balances for %d subsets", balance.size)
        return balance

    return F.cached(("cope", tuple(relations), get_settings().numerics), compute)


class Copeland(Comparator):
    def __init__(self, F: Framework, spec: RankingSpec):
        super().__init__(F, spec)
        self.balances = copeland_balances(F, spec.relations)

    def decide(self, left: int, right: int) -> Tuple[Verdict, str]:
        return Verdict.from_numbers(int(self.balances[left]), int(self.balances[right])), "balance"


class GroupComparison(Comparator):
    """E at least as good as E' when every member of E' is matched by some stronger-or-equal member of E"""

    def __init__(self, F: Framework, spec: RankingSpec):
        super().__init__(F, spec)
        weak = argument_ranking(F, spec.gradual).weak
        self.dominated = [sum(1 << b for b in range(F.n) if weak[a, b]) for a in range(F.n)]

    def _cover(self, mask: int) -> int:
        out = 0
        for a in bits(mask):
            out |= self.dominated[a]
        return out

    def decide(self, left: int, right: int) -> Tuple[Verdict, str]:
        ge = right & ~self._cover(left) == 0
        le = left & ~self._cover(right) == 0
        return Verdict.from_weak(ge, le), self.spec.gradual.value


def argument_values(F: Framework, source: EvaluationSource) -> np.ndarray:
    """Per-argument values where larger means stronger"""
    if source.kind is SourceKind.NE:
        return ne(F, source.semantics).values
    if source.kind is SourceKind.CAT:
        return cat_scores(F).values
    rho = GradualId.CAT if source.kind is SourceKind.CAT_SV else GradualId.BBS
    return -sv_for(F, rho).values


def aggregate(values: Sequence[float], aggregator: Aggregator):
    """Scalar for sum/max/min, sorted tuple for leximax/leximin"""
    if aggregator is Aggregator.SUM:
        return float(sum(values))
    if aggregator is Aggregator.MAX:
        return max(values, default=-math.inf)
    if aggregator is Aggregator.MIN:
        return min(values, default=math.inf)
    return tuple(sorted(values, reverse=aggregator is Aggregator.LEXIMAX))


def compare_aggregates(left, right, aggregator: Aggregator, tolerance: float) -> Verdict:
    if not aggregator.sequential:
        return Verdict.from_numbers(left, right, tolerance)
    pad = -math.inf if aggregator is Aggregator.LEXIMAX else math.inf
    width = max(len(left), len(right))
    ours = list(left) + [pad] * (width - len(left))
    theirs = list(right) + [pad] * (width - len(right))
    for x, y in zip(ours, theirs):
        step = Verdict.from_numbers(x, y, tolerance)
        if step is not Verdict.EQUIVALENT:
            return step
    return Verdict.EQUIVALENT


class OrderedAggregation(Comparator):
    def __init__(self, F: Framework, spec: RankingSpec):
        super().__init__(F, spec)
        self.values = argument_values(F, spec.source)
        self.tolerance = get_settings().tie_tolerance
        self._aggregate = lru_cache(maxsize=VALUE_CACHE_SIZE)(self._compute_aggregate)

    def sequence(self, mask: int) -> List[float]:
        return [float(self.values[i]) for i in bits(mask)]

    def _compute_aggregate(self, mask: int):
        return aggregate(self.sequence(mask), self.spec.aggregator)

    def aggregate(self, mask: int):
        return self._aggregate(mask)

    def decide(self, left: int, right: int) -> Tuple[Verdict, str]:
        verdict = compare_aggregates(
            self.aggregate(left), self.aggregate(right), self.spec.aggregator, self.tolerance
        )
        return verdict, self.spec.aggregator.value


COMPARATORS = {
    Method.LD: LeastDiscriminating,
    Method.LEX: Lexicographic,
    Method.COPE: Copeland,
    Method.GC: GroupComparison,
    Method.OBE: OrderedAggregation,
}


def comparator(F: Framework, spec: RankingSpec) -> Comparator:
    return F.cached(("comparator", spec, get_settings().numerics), lambda: COMPARATORS[spec.method](F, spec))


def compare(F: Framework, spec: RankingSpec, E: ArgSet, E2: ArgSet) -> Verdict:
    """Verdict of E against E2 under spec"""
    return comparator(F, spec).verdict(F.check(E), F.check(E2))


def explain(F: Framework, spec: RankingSpec, E: ArgSet, E2: ArgSet) -> Tuple[Verdict, str]:
    """Verdict plus the label of what decided it"""
    return comparator(F, spec).decide(F.check(E), F.check(E2))


def obe_sequence(F: Framework, source: EvaluationSource, E: ArgSet) -> List[float]:
    values = argument_values(F, source)
    return [float(values[i]) for i in bits(F.check(E))]


def balance_of(F: Framework, spec: RankingSpec, E: ArgSet) -> Optional[int]:
    """Copeland balance of E, or None for non-Copeland specs"""
    if spec.method is not Method.COPE:
        return None
    return int(copeland_balances(F, spec.relations)[F.check(E)])
