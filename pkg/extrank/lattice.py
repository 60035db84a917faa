"""
Materialized extension rankings.

All pairwise verdicts over the covered sets become a directed "at least as
plausible" graph; its strongly connected components are the equivalence
classes and the transitive reduction of the condensation gives the Hasse
edges. Total, transitive comparators skip the quadratic pass and sort
instead; every other comparator takes the graph, which never assumes
that at-least verdicts compose.
"""

import logging
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from .config import get_settings
from .engine import Comparator, comparator, copeland_balances
from .errors import TooLarge
from .framework import ArgSet, Framework, Verdict, canonical_key, sorted_masks
from .specs import Method, RankingSpec

logger = logging.getLogger(__name__)


@dataclass
class MaterializedRanking:
    framework: Framework
    spec: RankingSpec
    classes: List[List[int]]
    edges: List[Tuple[int, int]]
    maximal_sets: List[int]
    complete: bool
    provenance: Dict[Tuple[int, int], str] = field(default_factory=dict)
    balances: Optional[Dict[int, int]] = None

    @property
    def maximal(self) -> List[int]:
        """Indices of classes holding a most plausible set"""
        top = set(self.maximal_sets)
        return [k for k, members in enumerate(self.classes) if top.intersection(members)]

    def class_of(self, mask: int) -> int:
        for k, members in enumerate(self.classes):
            if mask in members:
                return k
        raise KeyError(mask)

    def most_plausible(self) -> List[ArgSet]:
        return [self.framework.wrap(m) for m in self.maximal_sets]

    def describe(self) -> List[str]:
        """One line per class, best first"""
        F = self.framework
        lines = []
        for k, members in enumerate(self.classes):
            marker = "*" if k in self.maximal else " "
            lines.append(f"{marker} [{k}] " + " ≡ ".join(F.format_set(m) for m in members))
        return lines


def _chain(comp: Comparator, masks: List[int]) -> Tuple[List[List[int]], List[Tuple[int, int]]]:
    def cmp(a: int, b: int) -> int:
        v = comp.verdict(a, b)
        return -1 if v is Verdict.BETTER else (1 if v is Verdict.WORSE else 0)

    ordered = sorted(masks, key=cmp_to_key(cmp))
    classes: List[List[int]] = []
    for mask in ordered:
        if classes and comp.verdict(classes[-1][0], mask) is Verdict.EQUIVALENT:
            classes[-1].append(mask)
        else:
            classes.append([mask])
    classes = [sorted(c, key=canonical_key) for c in classes]
    return classes, [(k, k + 1) for k in range(len(classes) - 1)]


def _lattice(comp: Comparator, masks: List[int]) -> Tuple[List[List[int]], List[Tuple[int, int]], nx.DiGraph]:
    graph = nx.DiGraph()
    graph.add_nodes_from(masks)
    for i, left in enumerate(masks):
        for right in masks[i + 1:]:
            v = comp.verdict(left, right)
            if v.at_least:
                graph.add_edge(left, right)
            if v in (Verdict.WORSE, Verdict.EQUIVALENT):
                graph.add_edge(right, left)
    dag = nx.condensation(graph)
    reduced = nx.transitive_reduction(dag)

    depth: Dict[int, int] = {}
    for node in nx.topological_sort(reduced):
        preds = list(reduced.predecessors(node))
        depth[node] = 1 + max(depth[p] for p in preds) if preds else 0

    members = {node: sorted(dag.nodes[node]["members"], key=canonical_key) for node in dag.nodes}
    order = sorted(dag.nodes, key=lambda node: (depth[node], canonical_key(members[node][0])))
    position = {node: k for k, node in enumerate(order)}
    classes = [members[node] for node in order]
    edges = sorted((position[u], position[v]) for u, v in reduced.edges)
    return classes, edges, graph


def materialize(F: Framework, spec: RankingSpec, candidates: Optional[Iterable[int]] = None) -> MaterializedRanking:
    """Ranking over all 2^|A| subsets, or over the given candidate masks"""
    complete = candidates is None
    if complete:
        cap = get_settings().cope_cap
        if F.n > cap:
            raise TooLarge(F.n, cap, what="materialization over all subsets")
        masks = list(range(1 << F.n))
    else:
        masks = list(candidates)
    masks = sorted_masks(masks)
    comp = comparator(F, spec)

    if spec.total and spec.transitive:
        classes, edges = _chain(comp, masks)
        maximal_sets = list(classes[0]) if classes else []
    else:
        classes, edges, graph = _lattice(comp, masks)
        maximal_sets = [
            m for m in masks
            if all(graph.has_edge(m, u) for u in graph.predecessors(m))
        ]
    logger.debug("%s: %d sets in %d classes", spec, len(masks), len(classes))

    provenance = {}
    for better, worse in edges:
        verdict, label = comp.decide(classes[better][0], classes[worse][0])
        if label:
            provenance[(better, worse)] = label

    balances = None
    if spec.method is Method.COPE:
        table = copeland_balances(F, spec.relations)
        balances = {m: int(table[m]) for m in masks}

    return MaterializedRanking(
        framework=F,
        spec=spec,
        classes=classes,
        edges=edges,
        maximal_sets=sorted_masks(maximal_sets),
        complete=complete,
        provenance=provenance,
        balances=balances,
    )


def most_plausible(F: Framework, spec: RankingSpec, candidates: Optional[Iterable[int]] = None) -> List[ArgSet]:
    return materialize(F, spec, candidates).most_plausible()


def maximal_masks(F: Framework, spec: RankingSpec) -> List[int]:
    return F.cached(("max", spec, get_settings().numerics), lambda: materialize(F, spec).maximal_sets)
