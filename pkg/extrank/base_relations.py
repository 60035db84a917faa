"""
Base relations: single-aspect comparisons between argument sets.

Subset-valued relations (Conflicts, UD, DN, Unatt) prefer the set whose value
is included in the other's; their c- variants compare cardinalities. Mini and
Maxi compare the sets themselves. Nonatt, Strdef and NCount are pairwise
tallies and have no single-set value.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

import numpy as np

from .argument_ranking import GradualId, argument_ranking
from .config import get_settings
from .errors import NotUnary, SpecSyntaxError
from .framework import ArgSet, Framework, Verdict, bits

RelationValue = Union[FrozenSet[Tuple[str, str]], FrozenSet[str], int]


class RelationKind(str, Enum):
    CONFLICTS = "conflicts"
    UD = "ud"
    DN = "dn"
    UNATT = "unatt"
    C_CONFLICTS = "c-conflicts"
    C_UD = "c-ud"
    C_DN = "c-dn"
    C_UNATT = "c-unatt"
    MINI = "mini"
    MAXI = "maxi"
    NONATT = "nonatt"
    STRDEF = "strdef"
    NCOUNT = "ncount"


SUBSET_KINDS = (RelationKind.CONFLICTS, RelationKind.UD, RelationKind.DN, RelationKind.UNATT)

CARDINALITY_OF = {
    RelationKind.C_CONFLICTS: RelationKind.CONFLICTS,
    RelationKind.C_UD: RelationKind.UD,
    RelationKind.C_DN: RelationKind.DN,
    RelationKind.C_UNATT: RelationKind.UNATT,
}

PAIRWISE_KINDS = (RelationKind.MINI, RelationKind.MAXI, RelationKind.NONATT, RelationKind.STRDEF, RelationKind.NCOUNT)


@dataclass(frozen=True)
class BaseRelation:
    kind: RelationKind
    gradual: Optional[GradualId] = None

    @property
    def name(self) -> str:
        if self.kind is RelationKind.NCOUNT:
            return f"ncount-{self.gradual.value}"
        return self.kind.value

    @property
    def unary(self) -> bool:
        return self.kind not in PAIRWISE_KINDS

    @property
    def total(self) -> bool:
        """Never answers incomparable"""
        return self.kind in CARDINALITY_OF or self.kind in (
            RelationKind.NONATT, RelationKind.STRDEF, RelationKind.NCOUNT
        )

    @classmethod
    def parse(cls, text: str) -> "BaseRelation":
        token = text.strip().lower()
        if token.startswith("ncount-"):
            return cls(RelationKind.NCOUNT, GradualId.parse(token[len("ncount-"):]))
        try:
            kind = RelationKind(token)
        except ValueError:
            raise SpecSyntaxError(f"unknown base relation '{text}'") from None
        if kind is RelationKind.NCOUNT:
            raise SpecSyntaxError("ncount needs an argument ranking, e.g. ncount-cat")
        return cls(kind)


CONFLICTS = BaseRelation(RelationKind.CONFLICTS)
UD = BaseRelation(RelationKind.UD)
DN = BaseRelation(RelationKind.DN)
UNATT = BaseRelation(RelationKind.UNATT)
MINI = BaseRelation(RelationKind.MINI)
MAXI = BaseRelation(RelationKind.MAXI)


def subset_value(F: Framework, kind: RelationKind, mask: int) -> int:
    """Bitmask value of a subset-valued relation (attack positions for Conflicts)"""
    if kind is RelationKind.CONFLICTS:
        return F.conflicts(mask)
    if kind is RelationKind.UD:
        return mask & ~F.characteristic(mask)
    if kind is RelationKind.DN:
        return F.f_star(mask) & ~mask
    if kind is RelationKind.UNATT:
        return F.full & ~mask & ~F.plus(mask)
    raise NotUnary(f"{kind.value} has no set value")


def relation_value(F: Framework, relation: BaseRelation, E: ArgSet) -> RelationValue:
    mask = F.check(E)
    if not relation.unary:
        raise NotUnary(f"{relation.name} compares two sets and has no single-set value")
    if relation.kind in CARDINALITY_OF:
        return subset_value(F, CARDINALITY_OF[relation.kind], mask).bit_count()
    value = subset_value(F, relation.kind, mask)
    if relation.kind is RelationKind.CONFLICTS:
        return frozenset(
            (F.arguments[F.attacks[k][0]], F.arguments[F.attacks[k][1]]) for k in bits(value)
        )
    return frozenset(F.names_of(value))


def _subset_verdict(left: int, right: int) -> Verdict:
    return Verdict.from_weak(left & ~right == 0, right & ~left == 0)


def _below(F: Framework, rho: GradualId) -> Tuple[int, ...]:
    """For each argument, the mask of arguments it strictly beats"""

    def build() -> Tuple[int, ...]:
        strict = argument_ranking(F, rho).strict_matrix()
        return tuple(sum(1 << int(b) for b in np.nonzero(strict[a])[0]) for a in range(F.n))

    return F.cached(("below", rho, get_settings().numerics), build)


def ncount(F: Framework, rho: GradualId, left: int, right: int) -> int:
    """Pairs (a, b) with a in left, b in right and a strictly stronger than b"""
    below = _below(F, rho)
    return sum((below[a] & right).bit_count() for a in bits(left))


def nonatt_count(F: Framework, left: int, right: int) -> int:
    """Members of left not attacked by right"""
    return (left & ~F.plus(right)).bit_count()


def strdef_count(F: Framework, left: int, right: int) -> int:
    return F.strongly_defended(left, right).bit_count()


def pair_counts(F: Framework, relation: BaseRelation, left: int, right: int) -> Tuple[int, int]:
    kind = relation.kind
    if kind is RelationKind.NONATT:
        return nonatt_count(F, left, right), nonatt_count(F, right, left)
    if kind is RelationKind.STRDEF:
        return strdef_count(F, left, right), strdef_count(F, right, left)
    if kind is RelationKind.NCOUNT:
        return ncount(F, relation.gradual, left, right), ncount(F, relation.gradual, right, left)
    raise NotUnary(f"{relation.name} is not a pairwise tally")


def compare_masks(F: Framework, relation: BaseRelation, left: int, right: int) -> Verdict:
    kind = relation.kind
    if left == right:
        return Verdict.EQUIVALENT
    if kind in SUBSET_KINDS:
        return _subset_verdict(subset_value(F, kind, left), subset_value(F, kind, right))
    if kind in CARDINALITY_OF:
        base = CARDINALITY_OF[kind]
        # fewer is better
        return Verdict.from_numbers(
            -subset_value(F, base, left).bit_count(), -subset_value(F, base, right).bit_count()
        )
    if kind is RelationKind.MINI:
        return _subset_verdict(left, right)
    if kind is RelationKind.MAXI:
        return _subset_verdict(right, left)
    ours, theirs = pair_counts(F, relation, left, right)
    return Verdict.from_numbers(ours, theirs)


def compare_base(F: Framework, relation: BaseRelation, E: ArgSet, E2: ArgSet) -> Verdict:
    return compare_masks(F, relation, F.check(E), F.check(E2))


# vectorised all-subsets comparisons ----------------------------------------------------

def _bit_matrix(values: List[int], width: int) -> np.ndarray:
    out = np.zeros((len(values), width), dtype=np.float32)
    for row, value in enumerate(values):
        for k in bits(value):
            out[row, k] = 1.0
    return out


def _included(V: np.ndarray) -> np.ndarray:
    """I[i, j] is True when row i is a subset of row j"""
    return (V @ (1.0 - V).T) == 0


def membership_matrix(F: Framework) -> np.ndarray:
    masks = np.arange(1 << F.n, dtype=np.int64)
    return ((masks[:, None] >> np.arange(F.n)) & 1).astype(np.float32)


def weak_matrix(F: Framework, relation: BaseRelation) -> np.ndarray:
    """W[i, j] = (set i is at least as plausible as set j), sets indexed by mask"""
    kind = relation.kind
    total = 1 << F.n
    if kind in SUBSET_KINDS or kind in CARDINALITY_OF:
        base = CARDINALITY_OF.get(kind, kind)
        width = len(F.attacks) if base is RelationKind.CONFLICTS else F.n
        V = _bit_matrix([subset_value(F, base, m) for m in range(total)], width)
        if kind in CARDINALITY_OF:
            sizes = V.sum(axis=1)
            return sizes[:, None] <= sizes[None, :]
        return _included(V)
    M = membership_matrix(F)
    if kind is RelationKind.MINI:
        return _included(M)
    if kind is RelationKind.MAXI:
        return _included(M).T
    if kind is RelationKind.NONATT:
        P = _bit_matrix([F.plus(m) for m in range(total)], F.n)
        C = M.sum(axis=1)[:, None] - M @ P.T
    elif kind is RelationKind.NCOUNT:
        S = argument_ranking(F, relation.gradual).strict_matrix().astype(np.float32)
        C = M @ S @ M.T
    else:
        C = _strdef_matrix(F)
    return C >= C.T


def _strdef_matrix(F: Framework) -> np.ndarray:
    total = 1 << F.n
    C = np.zeros((total, total), dtype=np.float32)
    seen: Dict[Tuple[int, int], int] = {}
    for left in range(total):
        exposed = F.minus(left)
        for right in range(total):
            # only attackers of left matter
            key = (left, right & exposed)
            if key not in seen:
                seen[key] = strdef_count(F, left, key[1])
            C[left, right] = seen[key]
    return C
