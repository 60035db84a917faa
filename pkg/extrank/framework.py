"""
Argumentation framework model.

Arguments are opaque names externally and dense indices internally; every set
of arguments is an int bitmask over those indices. ArgSet wraps a mask together
with the digest of the framework it belongs to so that sets from different
frameworks are never compared by accident.
"""

import hashlib
import logging
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx

from .errors import DuplicateArgument, FrameworkMismatch, NotDisjoint, UnknownArgument

logger = logging.getLogger(__name__)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


class Verdict(str, Enum):
    """Outcome of comparing an ordered pair of argument sets"""

    BETTER = "better"
    WORSE = "worse"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"

    def flip(self) -> "Verdict":
        if self is Verdict.BETTER:
            return Verdict.WORSE
        if self is Verdict.WORSE:
            return Verdict.BETTER
        return self

    @property
    def at_least(self) -> bool:
        """True when the left set is at least as plausible as the right one"""
        return self in (Verdict.BETTER, Verdict.EQUIVALENT)

    @staticmethod
    def from_weak(ge: bool, le: bool) -> "Verdict":
        if ge and le:
            return Verdict.EQUIVALENT
        if ge:
            return Verdict.BETTER
        if le:
            return Verdict.WORSE
        return Verdict.INCOMPARABLE

    @staticmethod
    def from_numbers(left: float, right: float, tolerance: float = 0.0) -> "Verdict":
        """Larger is better; values within tolerance tie"""
        if left == right or abs(left - right) <= tolerance:
            return Verdict.EQUIVALENT
        return Verdict.BETTER if left > right else Verdict.WORSE


@dataclass(frozen=True)
class ArgSet:
    """A subset of one framework's arguments"""

    mask: int
    digest: str

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def indices(self) -> List[int]:
        return list(bits(self.mask))


class Framework:
    """An abstract argumentation framework (A, R) over named arguments"""

    def __init__(self, arguments: Sequence[str], attacks: Iterable[Tuple[int, int]]):
        self.arguments: Tuple[str, ...] = tuple(arguments)
        self.index: Dict[str, int] = {name: i for i, name in enumerate(self.arguments)}
        if len(self.index) != len(self.arguments):
            seen = set()
            for name in self.arguments:
                if name in seen:
                    raise DuplicateArgument(name)
                seen.add(name)
        self.n = len(self.arguments)
        self.full = (1 << self.n) - 1

        pairs = sorted({(int(a), int(b)) for a, b in attacks})
        for a, b in pairs:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise UnknownArgument(str(max(a, b)), "attack endpoint out of range")
        self.attacks: Tuple[Tuple[int, int], ...] = tuple(pairs)

        attackers = [0] * self.n
        targets = [0] * self.n
        for a, b in self.attacks:
            attackers[b] |= 1 << a
            targets[a] |= 1 << b
        self.attackers: Tuple[int, ...] = tuple(attackers)
        self.targets: Tuple[int, ...] = tuple(targets)

        self.digest = hashlib.sha256(str(self).encode("utf-8")).hexdigest()[:16]
        self._cache: Dict[Any, Any] = {}
        self._lock = threading.Lock()

    # identity ------------------------------------------------------------

    def __str__(self) -> str:
        """APX rendering of the framework"""
        lines = [f"arg({name})." for name in self.arguments]
        lines += [f"att({self.arguments[a]},{self.arguments[b]})." for a, b in self.attacks]
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self) -> str:
        return f"Framework(n={self.n}, attacks={len(self.attacks)}, digest={self.digest})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Framework)
            and self.arguments == other.arguments
            and self.attacks == other.attacks
        )

    def __hash__(self) -> int:
        return hash((self.arguments, self.attacks))

    def cached(self, key: Any, factory: Callable[[], Any]) -> Any:
        """Per-framework memo for derived artifacts (extension families, scores, balances)"""
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        logger.debug("cache miss %s on %s", key, self.digest)
        value = factory()
        with self._lock:
            return self._cache.setdefault(key, value)

    # sets -----------------------------------------------------------------

    def argset(self, names: Iterable[str] = ()) -> ArgSet:
        mask = 0
        for name in names:
            if name not in self.index:
                raise UnknownArgument(name)
            mask |= 1 << self.index[name]
        return ArgSet(mask, self.digest)

    def wrap(self, mask: int) -> ArgSet:
        return ArgSet(mask & self.full, self.digest)

    def check(self, E: ArgSet) -> int:
        """Mask of E after verifying it belongs to this framework"""
        if E.digest != self.digest or E.mask & ~self.full:
            raise FrameworkMismatch(f"argument set does not belong to framework {self.digest}")
        return E.mask

    def names_of(self, mask: int) -> List[str]:
        return [self.arguments[i] for i in bits(mask)]

    def format_set(self, mask: int) -> str:
        return "{" + ",".join(self.names_of(mask)) + "}"

    # neighbourhoods ---------------------------------------------------------

    def plus(self, mask: int) -> int:
        """E+: arguments attacked by some member of E"""
        out = 0
        for i in bits(mask):
            out |= self.targets[i]
        return out

    def minus(self, mask: int) -> int:
        """E-: arguments attacking some member of E"""
        out = 0
        for i in bits(mask):
            out |= self.attackers[i]
        return out

    def conflicts(self, mask: int) -> int:
        """Bitmask over attack positions with both endpoints in E"""
        out = 0
        for k, (a, b) in enumerate(self.attacks):
            if mask >> a & 1 and mask >> b & 1:
                out |= 1 << k
        return out

    def is_conflict_free(self, mask: int) -> bool:
        return all(not (self.targets[i] & mask) for i in bits(mask))

    def unattacked(self) -> int:
        return mask_of(i for i in range(self.n) if not self.attackers[i])

    # defence ----------------------------------------------------------------

    def defends(self, mask: int, a: int) -> bool:
        return not (self.attackers[a] & ~self.plus(mask))

    def characteristic(self, mask: int) -> int:
        covered = self.plus(mask)
        return mask_of(a for a in range(self.n) if not (self.attackers[a] & ~covered))

    def f_star_chain(self, mask: int) -> List[int]:
        """Iterates of F* from E; the last entry is the fixed point"""
        blocked = self.minus(mask)
        chain = [mask]
        while True:
            current = chain[-1]
            nxt = current | (self.characteristic(current) & ~blocked)
            if nxt == current:
                return chain
            chain.append(nxt)

    def f_star(self, mask: int) -> int:
        return self.f_star_chain(mask)[-1]

    def grounded(self) -> int:
        current = 0
        while True:
            nxt = self.characteristic(current)
            if nxt == current:
                return current
            current = nxt

    def strongly_defended(self, mask: int, attackers_from: int) -> int:
        """Members of E strongly defended by E against attackers drawn from attackers_from"""
        memo: Dict[Tuple[int, int], bool] = {}

        def holds(a: int, pool: int) -> bool:
            key = (a, pool)
            if key in memo:
                return memo[key]
            rest = pool & ~(1 << a)
            result = True
            for b in bits(self.attackers[a] & attackers_from):
                if not any(holds(c, rest) for c in bits(self.attackers[b] & rest)):
                    result = False
                    break
            memo[key] = result
            return result

        return mask_of(a for a in bits(mask) if holds(a, mask))

    # algebra ----------------------------------------------------------------

    def with_attack(self, attacker: str, target: str) -> "Framework":
        for name in (attacker, target):
            if name not in self.index:
                raise UnknownArgument(name)
        return Framework(self.arguments, self.attacks + ((self.index[attacker], self.index[target]),))

    def without_attack(self, position: int) -> "Framework":
        return Framework(self.arguments, self.attacks[:position] + self.attacks[position + 1:])

    def restrict(self, mask: int) -> "Framework":
        """Sub-framework induced by the arguments in mask, original order kept"""
        kept = list(bits(mask))
        remap = {old: new for new, old in enumerate(kept)}
        attacks = [(remap[a], remap[b]) for a, b in self.attacks if a in remap and b in remap]
        return Framework([self.arguments[i] for i in kept], attacks)

    def relabel(self, mapping: Dict[str, str]) -> "Framework":
        """Isomorphic copy under a name bijection, arguments re-sorted by new name"""
        renamed = [mapping[name] for name in self.arguments]
        if len(set(renamed)) != len(renamed):
            raise DuplicateArgument(next(x for x in renamed if renamed.count(x) > 1))
        order = sorted(range(self.n), key=lambda i: renamed[i])
        position = {old: new for new, old in enumerate(order)}
        attacks = [(position[a], position[b]) for a, b in self.attacks]
        return Framework([renamed[i] for i in order], attacks)

    def union(self, other: "Framework") -> "Framework":
        """Disjoint union; this framework's arguments keep the low indices"""
        shared = set(self.arguments) & set(other.arguments)
        if shared:
            raise NotDisjoint(f"frameworks share arguments: {', '.join(sorted(shared))}")
        shift = self.n
        attacks = list(self.attacks) + [(a + shift, b + shift) for a, b in other.attacks]
        return Framework(self.arguments + other.arguments, attacks)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.attacks)
        return graph

    def components(self) -> List[int]:
        """Masks of the weakly connected components, ordered by lowest index"""
        parts = [mask_of(c) for c in nx.weakly_connected_components(self.to_networkx())]
        return sorted(parts, key=lambda m: (m & -m))

    def translate(self, mask: int, other: "Framework") -> int:
        """Carry a set over to another framework by argument name"""
        return other.argset(self.names_of(mask)).mask


def build_framework(argument_names: Sequence[str], attacks: Sequence[Tuple[str, str]]) -> Framework:
    """Framework from names and name pairs; indices follow declaration order"""
    index: Dict[str, int] = {}
    for name in argument_names:
        if name in index:
            raise DuplicateArgument(name)
        index[name] = len(index)
    pairs = []
    for attacker, target in attacks:
        for name in (attacker, target):
            if name not in index:
                raise UnknownArgument(name, f"attack ({attacker},{target})")
        pairs.append((index[attacker], index[target]))
    return Framework(list(argument_names), pairs)


def _arg_index(F: Framework, a: Any) -> int:
    if isinstance(a, str):
        if a not in F.index:
            raise UnknownArgument(a)
        return F.index[a]
    if not 0 <= a < F.n:
        raise UnknownArgument(str(a))
    return int(a)


def defends(F: Framework, E: ArgSet, a: Any) -> bool:
    return F.defends(F.check(E), _arg_index(F, a))


def characteristic(F: Framework, E: ArgSet) -> ArgSet:
    return F.wrap(F.characteristic(F.check(E)))


def f_star(F: Framework, E: ArgSet) -> ArgSet:
    return F.wrap(F.f_star(F.check(E)))


def strongly_defended(F: Framework, E: ArgSet, attackers_from: ArgSet) -> ArgSet:
    return F.wrap(F.strongly_defended(F.check(E), F.check(attackers_from)))


def canonical_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    """Sort key for sets: by size, then by member indices"""
    return (mask.bit_count(), tuple(bits(mask)))


def sorted_masks(masks: Iterable[int]) -> List[int]:
    return sorted(set(masks), key=canonical_key)


def parse_set(F: Framework, text: str) -> ArgSet:
    """'a,b' or '{a,b}' or '{}' into an ArgSet of F"""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    names = [part.strip() for part in body.split(",") if part.strip()]
    return F.argset(names)


