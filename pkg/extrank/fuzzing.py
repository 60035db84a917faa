"""
Random framework generator and principle fuzzer with greedy shrinking.
"""

import logging
import random
import string
from typing import List, Optional, Sequence, Tuple

from .config import get_settings
from .framework import Framework
from .principles import Mode, Outcome, Principle, PrincipleId, PrincipleReport, check_principle
from .specs import RankingSpec

logger = logging.getLogger(__name__)

SPLIT_PRINCIPLES = (PrincipleId.COMPOSITION, PrincipleId.DECOMPOSITION)


class FrameworkGenerator:
    """Erdős–Rényi frameworks over ordered pairs, self-attacks allowed"""

    NAMES = string.ascii_lowercase

    def __init__(self, seed: int = 0, size_range: Tuple[int, int] = (3, 6),
                 density: float = 0.3, self_attacks: bool = True):
        low, high = size_range
        if not 0 < low <= high:
            raise ValueError(f"bad size range {size_range}")
        if not 0.0 <= density <= 1.0:
            raise ValueError(f"density must lie in [0, 1], got {density}")
        self.rng = random.Random(seed)
        self.size_range = size_range
        self.density = density
        self.self_attacks = self_attacks

    @classmethod
    def _names(cls, count: int, offset: int = 0) -> List[str]:
        out = []
        for k in range(offset, offset + count):
            name = cls.NAMES[k % 26]
            out.append(name if k < 26 else f"{name}{k // 26}")
        return out

    def _generate_attacks(self, n: int) -> List[Tuple[int, int]]:
        return [
            (a, b)
            for a in range(n)
            for b in range(n)
            if (a != b or self.self_attacks) and self.rng.random() < self.density
        ]

    def generate(self, n: Optional[int] = None, offset: int = 0) -> Framework:
        """One random framework with n arguments (drawn from size_range when omitted)"""
        if n is None:
            n = self.rng.randint(*self.size_range)
        return Framework(self._names(n, offset), self._generate_attacks(n))

    def generate_split(self) -> Tuple[Framework, List[List[str]]]:
        """Disjoint union of two random frameworks and its two-part partition"""
        n = max(2, self.rng.randint(*self.size_range))
        left = self.rng.randint(1, n - 1)
        first = self.generate(left)
        second = self.generate(n - left, offset=left)
        return first.union(second), [list(first.arguments), list(second.arguments)]


def _still_fails(principle: Principle, F: Framework, spec: RankingSpec,
                 partition: Optional[List[List[str]]], outcome: Outcome) -> Optional[PrincipleReport]:
    report = check_principle(principle, F, spec, partition=partition, rng=random.Random(0))
    return report if report.outcome is outcome else None


def _drop_argument(F: Framework, i: int,
                   partition: Optional[List[List[str]]]) -> Tuple[Framework, Optional[List[List[str]]]]:
    smaller = F.restrict(F.full & ~(1 << i))
    if partition is None:
        return smaller, None
    gone = F.arguments[i]
    parts = [[a for a in part if a != gone] for part in partition]
    return smaller, [part for part in parts if part]


def shrink(principle: Principle, F: Framework, spec: RankingSpec, report: PrincipleReport,
           partition: Optional[List[List[str]]] = None) -> Tuple[Framework, PrincipleReport]:
    """Remove arguments, then attacks, while the same outcome persists"""
    outcome = report.outcome
    progress = True
    while progress:
        progress = False
        for i in range(F.n):
            candidate, parts = _drop_argument(F, i, partition)
            found = _still_fails(principle, candidate, spec, parts, outcome)
            if found is not None:
                logger.debug("shrink: dropped argument %s", F.arguments[i])
                F, partition, report, progress = candidate, parts, found, True
                break
        if progress:
            continue
        for position in range(len(F.attacks)):
            candidate = F.without_attack(position)
            found = _still_fails(principle, candidate, spec, partition, outcome)
            if found is not None:
                logger.debug("shrink: dropped attack #%d", position)
                F, report, progress = candidate, found, True
                break
    return F, report


def fuzz(spec: RankingSpec, principle: Principle, trials: Optional[int] = None,
         size_range: Tuple[int, int] = (3, 6), density: float = 0.3,
         seed: Optional[int] = None) -> PrincipleReport:
    """Hunt for a violation on random frameworks; the first one found is shrunk and returned"""
    settings = get_settings()
    trials = settings.fuzz_trials if trials is None else trials
    seed = settings.seed if seed is None else seed
    generator = FrameworkGenerator(seed, size_range, density)
    split = principle.id in SPLIT_PRINCIPLES

    for trial in range(trials):
        if split:
            F, partition = generator.generate_split()
        else:
            F, partition = generator.generate(), None
        report = check_principle(principle, F, spec, partition=partition, rng=random.Random(seed + trial))
        if report.outcome is Outcome.NO_VIOLATION:
            continue
        logger.info("trial %d: %s on %d arguments, shrinking", trial, report.outcome.value, F.n)
        F, report = shrink(principle, F, spec, report, partition)
        return report.model_copy(update={"mode": Mode.FUZZ, "sample_size": trial + 1})

    return PrincipleReport(
        principle=principle.name, spec=spec.describe(), mode=Mode.FUZZ,
        sample_size=trials, outcome=Outcome.NO_VIOLATION,
    )


def random_frameworks(count: int, size_range: Tuple[int, int] = (1, 7), density: float = 0.3,
                      seed: int = 0) -> Sequence[Framework]:
    generator = FrameworkGenerator(seed, size_range, density)
    return [generator.generate() for _ in range(count)]


