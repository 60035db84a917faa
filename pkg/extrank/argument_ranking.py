"""
Argument-ranking semantics: h-categoriser scores, burden-based ranking,
rank depths (sv) and extension-membership counts (ne).

Rankings over single arguments are kept as a boolean "at least as strong"
matrix so that total and partial preorders share one representation.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from functools import cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import pandas as pd
from pydantic import BaseModel

from .config import get_settings
from .errors import NoConvergence, SpecSyntaxError
from .framework import Framework, bits
from .semantics import SemanticsId, extension_masks

logger = logging.getLogger(__name__)


class GradualId(str, Enum):
    CAT = "cat"
    BBS = "bbs"

    @classmethod
    def parse(cls, text: str) -> "GradualId":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise SpecSyntaxError(f"unknown argument ranking '{text}' (expected cat or bbs)") from None


@dataclass(frozen=True, eq=False)
class ScoreMap:
    """Per-argument values; one row per argument for burden vectors"""

    arguments: Tuple[str, ...]
    values: np.ndarray

    def __getitem__(self, name: str) -> float:
        return self.values[self.arguments.index(name)]

    def to_series(self, name: str = "score") -> pd.Series:
        if self.values.ndim == 1:
            return pd.Series(self.values, index=list(self.arguments), name=name)
        return pd.Series([tuple(row) for row in self.values], index=list(self.arguments), name=name)


@dataclass(frozen=True, eq=False)
class ArgumentRanking:
    """Preorder over arguments; weak[a, b] means a is at least as strong as b"""

    arguments: Tuple[str, ...]
    weak: np.ndarray

    def at_least(self, a: int, b: int) -> bool:
        return bool(self.weak[a, b])

    def strictly(self, a: int, b: int) -> bool:
        return bool(self.weak[a, b] and not self.weak[b, a])

    def equivalent(self, a: int, b: int) -> bool:
        return bool(self.weak[a, b] and self.weak[b, a])

    def strict_matrix(self) -> np.ndarray:
        return self.weak & ~self.weak.T

    def tiers(self) -> List[List[str]]:
        """Equivalence classes ordered strongest first (by number of arguments beaten)"""
        n = len(self.arguments)
        seen = [False] * n
        groups: List[List[int]] = []
        for a in range(n):
            if seen[a]:
                continue
            group = [b for b in range(n) if self.equivalent(a, b)]
            for b in group:
                seen[b] = True
            groups.append(group)
        strict = self.strict_matrix()
        groups.sort(key=lambda g: (-int(strict[g[0]].sum()), g[0]))
        return [[self.arguments[i] for i in g] for g in groups]

    def describe(self) -> str:
        parts = []
        for tier in self.tiers():
            parts.append(" ≃ ".join(tier))
        return " ≻ ".join(parts)


# h-categoriser ----------------------------------------------------------------

def _attack_matrix(F: Framework) -> np.ndarray:
    """M[a, b] = 1 when b attacks a"""
    M = np.zeros((F.n, F.n), dtype=float)
    for a, b in F.attacks:
        M[b, a] = 1.0
    return M


def cat_scores(F: Framework) -> ScoreMap:
    """h-categoriser fixed point by iteration from all-ones, stopped on the fixed-point residual"""
    settings = get_settings()

    def solve() -> ScoreMap:
        M = _attack_matrix(F)
        scores = np.ones(F.n)
        for iteration in range(1, settings.cat_max_iter + 1):
            scores = 1.0 / (1.0 + M @ scores)
            residual = float(np.max(np.abs(scores * (1.0 + M @ scores) - 1.0))) if F.n else 0.0
            if residual <= settings.cat_tolerance:
                logger.debug("h-categoriser converged after %d iterations", iteration)
                return ScoreMap(F.arguments, scores)
        raise NoConvergence(f"h-categoriser did not converge within {settings.cat_max_iter} iterations")

    return F.cached(("cat", settings.cat_tolerance, settings.cat_max_iter), solve)


def cat_residual(F: Framework, scores: ScoreMap) -> float:
    """max |Cat(a)(1 + sum of attacker scores) - 1|"""
    if not F.n:
        return 0.0
    M = _attack_matrix(F)
    return float(np.max(np.abs(scores.values * (1.0 + M @ scores.values) - 1.0)))


def ranking_from_scores(scores: ScoreMap, tolerance: Optional[float] = None) -> ArgumentRanking:
    """Total preorder from real scores; a gap within tolerance of the previous value ties"""
    tol = get_settings().tie_tolerance if tolerance is None else tolerance
    values = scores.values
    order = sorted(range(len(values)), key=lambda i: -values[i])
    tier = [0] * len(values)
    level = 0
    for prev, cur in zip(order, order[1:]):
        if values[prev] - values[cur] > tol:
            level += 1
        tier[cur] = level
    tiers = np.array(tier)
    return ArgumentRanking(scores.arguments, tiers[:, None] <= tiers[None, :])


# burden-based -------------------------------------------------------------------

def burden_vectors(F: Framework, depth: Optional[int] = None) -> ScoreMap:
    """Rows are (bur_0(a), ..., bur_K(a)) with K = 2|A| + 4 by default"""
    K = 2 * F.n + 4 if depth is None else depth
    M = _attack_matrix(F)
    rows = [np.ones(F.n)]
    for _ in range(K):
        rows.append(1.0 + M @ (1.0 / rows[-1]))
    return ScoreMap(F.arguments, np.stack(rows, axis=1) if F.n else np.zeros((0, K + 1)))


def burden_ranking(F: Framework) -> ArgumentRanking:
    """Lexicographic comparison of burden vectors; smaller burden is stronger"""
    tol = get_settings().burden_tolerance

    def build() -> ArgumentRanking:
        vectors = burden_vectors(F).values

        def cmp(a: int, b: int) -> int:
            for x, y in zip(vectors[a], vectors[b]):
                if abs(x - y) > tol:
                    return -1 if x < y else 1
            return 0

        order = sorted(range(F.n), key=cmp_to_key(cmp))
        tier = [0] * F.n
        level = 0
        for prev, cur in zip(order, order[1:]):
            if cmp(prev, cur) != 0:
                level += 1
            tier[cur] = level
        tiers = np.array(tier, dtype=int)
        return ArgumentRanking(F.arguments, tiers[:, None] <= tiers[None, :])

    return F.cached(("bbs", get_settings().numerics), build)


def argument_ranking(F: Framework, rho: GradualId) -> ArgumentRanking:
    if rho is GradualId.CAT:
        return F.cached(("cat-ranking", get_settings().numerics), lambda: ranking_from_scores(cat_scores(F)))
    return burden_ranking(F)


# strength values ------------------------------------------------------------------

def sv(F: Framework, ranking: ArgumentRanking) -> ScoreMap:
    """Length of the longest strict chain above each argument (0 for the top)"""
    strict = ranking.strict_matrix()
    graph = nx.DiGraph()
    graph.add_nodes_from(range(F.n))
    graph.add_edges_from((int(a), int(b)) for a, b in zip(*np.nonzero(strict)))
    depth = [0] * F.n
    for node in nx.topological_sort(graph):
        for succ in graph.successors(node):
            depth[succ] = max(depth[succ], depth[node] + 1)
    return ScoreMap(F.arguments, np.array(depth, dtype=float))


def sv_for(F: Framework, rho: GradualId) -> ScoreMap:
    return F.cached(("sv", rho, get_settings().numerics), lambda: sv(F, argument_ranking(F, rho)))


def ne(F: Framework, sigma: SemanticsId) -> ScoreMap:
    """Number of sigma-extensions each argument belongs to"""

    def count() -> ScoreMap:
        counts = np.zeros(F.n)
        for mask in extension_masks(F, sigma):
            for i in bits(mask):
                counts[i] += 1
        return ScoreMap(F.arguments, counts)

    return F.cached(("ne", sigma), count)


def vsupp(F: Framework, sigma: SemanticsId, mask: int) -> List[int]:
    """Support sequence of a set: ne of each member, in index order"""
    counts = ne(F, sigma).values
    return [int(counts[i]) for i in bits(mask)]


def gradual_table(F: Framework, rho: GradualId) -> pd.DataFrame:
    """Scores (or leading burden numbers), sv and tier per argument, strongest first"""
    depth = sv_for(F, rho).values.astype(int)
    if rho is GradualId.CAT:
        columns = {"score": cat_scores(F).values}
    else:
        burdens = burden_vectors(F).values
        columns = {f"bur_{i}": burdens[:, i] for i in range(1, min(4, burdens.shape[1]))}
    frame = pd.DataFrame(columns, index=pd.Index(F.arguments, name="argument"))
    frame["sv"] = depth
    tiers = {name: k for k, tier in enumerate(argument_ranking(F, rho).tiers()) for name in tier}
    frame["tier"] = [tiers[name] for name in F.arguments]
    return frame.sort_values(["tier", "sv"], kind="stable")


# principles over argument rankings -------------------------------------------------------

class ArgumentPrincipleResult(BaseModel):
    principle: str
    holds: bool
    witness: Optional[List[str]] = None


def check_argument_ranking_principles(
    rho: GradualId,
    F: Framework,
    counterpart: Optional[Framework] = None,
    bijection: Optional[Dict[str, str]] = None,
    seed: int = 0,
) -> List[ArgumentPrincipleResult]:
    """Abstraction, Independence, Void Precedence and Non-attacked Equivalence.

    Abstraction uses counterpart/bijection when given, otherwise a seeded random
    relabelling. Independence compares against the arguments of counterpart
    when they form a union of components of F, otherwise against every component.
    """
    ranking = argument_ranking(F, rho)
    results = []

    if bijection is None or counterpart is None:
        names = list(F.arguments)
        shuffled = [f"r{i}" for i in range(F.n)]
        random.Random(seed).shuffle(shuffled)
        bijection = dict(zip(names, shuffled))
        image = F.relabel(bijection)
    else:
        image = counterpart
    image_ranking = argument_ranking(image, rho)
    results.append(_abstraction(F, ranking, image, image_ranking, bijection))

    components = F.components()
    parts = [F.restrict(m) for m in components]
    if counterpart is not None and set(counterpart.arguments) <= set(F.arguments):
        mask = F.argset(counterpart.arguments).mask
        if all(c & mask in (0, c) for c in components):
            parts = [F.restrict(mask)]
    results.append(_independence(F, ranking, parts, rho))

    unattacked = [i for i in range(F.n) if not F.attackers[i]]
    attacked = [i for i in range(F.n) if F.attackers[i]]
    vp_witness = next(
        ([F.arguments[a], F.arguments[b]] for a in unattacked for b in attacked if not ranking.strictly(a, b)),
        None,
    )
    results.append(ArgumentPrincipleResult(principle="void-precedence", holds=vp_witness is None, witness=vp_witness))
    nae_witness = next(
        ([F.arguments[a], F.arguments[b]] for a in unattacked for b in unattacked if not ranking.equivalent(a, b)),
        None,
    )
    results.append(
        ArgumentPrincipleResult(principle="non-attacked-equivalence", holds=nae_witness is None, witness=nae_witness)
    )
    return results


def _abstraction(
    F: Framework,
    ranking: ArgumentRanking,
    image: Framework,
    image_ranking: ArgumentRanking,
    bijection: Dict[str, str],
) -> ArgumentPrincipleResult:
    for a in range(F.n):
        for b in range(F.n):
            ga = image.index[bijection[F.arguments[a]]]
            gb = image.index[bijection[F.arguments[b]]]
            if ranking.at_least(a, b) != image_ranking.at_least(ga, gb):
                return ArgumentPrincipleResult(
                    principle="abstraction", holds=False, witness=[F.arguments[a], F.arguments[b]]
                )
    return ArgumentPrincipleResult(principle="abstraction", holds=True)


def _independence(
    F: Framework, ranking: ArgumentRanking, parts: Sequence[Framework], rho: GradualId
) -> ArgumentPrincipleResult:
    for part in parts:
        local = argument_ranking(part, rho)
        for a in range(part.n):
            for b in range(part.n):
                ga = F.index[part.arguments[a]]
                gb = F.index[part.arguments[b]]
                if local.at_least(a, b) != ranking.at_least(ga, gb):
                    return ArgumentPrincipleResult(
                        principle="independence", holds=False, witness=[part.arguments[a], part.arguments[b]]
                    )
    return ArgumentPrincipleResult(principle="independence", holds=True)
