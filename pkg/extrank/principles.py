"""
Executable checkers for the extension-ranking principles.

Every checker runs exhaustively over the framework's subsets when it is small
(EXTRANK_EXHAUSTIVE_CAP) and over seeded random samples otherwise. Passing
explicit pairs/cases replays a single instance, which is how stored witnesses
are re-verified.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from .apx import parse_apx
from .config import get_settings
from .engine import comparator
from .errors import NotAPartition, SpecSyntaxError
from .framework import Framework, Verdict, bits
from .lattice import maximal_masks
from .semantics import SemanticsId, extension_masks
from .specs import RankingSpec, parse_spec

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class PrincipleId(str, Enum):
    GENERALISATION = "generalisation"
    SOUNDNESS = "soundness"
    COMPLETENESS = "completeness"
    COMPOSITION = "composition"
    DECOMPOSITION = "decomposition"
    WEAK_REINSTATEMENT = "weak-reinstatement"
    STRONG_REINSTATEMENT = "strong-reinstatement"
    ADDITION_ROBUSTNESS = "addition-robustness"
    SYNTAX_INDEPENDENCE = "syntax-independence"


SIGMA_PRINCIPLES = (PrincipleId.GENERALISATION, PrincipleId.SOUNDNESS, PrincipleId.COMPLETENESS)


@dataclass(frozen=True)
class Principle:
    id: PrincipleId
    semantics: Optional[SemanticsId] = None

    @property
    def name(self) -> str:
        if self.semantics is not None:
            return f"{self.id.value}-{self.semantics.value}"
        return self.id.value

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "Principle":
        token = text.strip().lower()
        for pid in SIGMA_PRINCIPLES:
            if token.startswith(pid.value + "-"):
                return cls(pid, SemanticsId.parse(token[len(pid.value) + 1:]))
        try:
            pid = PrincipleId(token)
        except ValueError:
            raise SpecSyntaxError(f"unknown principle '{text}'") from None
        if pid in SIGMA_PRINCIPLES:
            raise SpecSyntaxError(f"{pid.value} needs a semantics, e.g. {pid.value}-co")
        return cls(pid)


class Outcome(str, Enum):
    NO_VIOLATION = "no_violation_found"
    VIOLATED = "violated"
    STRUCTURAL = "structurally_unsatisfiable"


class Mode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"
    FUZZ = "fuzz"
    WITNESS = "witness"


class Witness(BaseModel):
    """Everything needed to replay one violation"""

    framework: str
    left: Optional[List[str]] = None
    right: Optional[List[str]] = None
    argument: Optional[str] = None
    attack: Optional[Tuple[str, str]] = None
    partition: Optional[List[List[str]]] = None
    mapping: Optional[Dict[str, str]] = None
    verdicts: Dict[str, str] = {}
    note: str = ""


class PrincipleReport(BaseModel):
    principle: str
    spec: str
    mode: Mode
    sample_size: int
    outcome: Outcome
    witness: Optional[Witness] = None

    @property
    def violated(self) -> bool:
        return self.outcome is not Outcome.NO_VIOLATION


def _report(principle: Principle, spec: RankingSpec, mode: Mode, size: int,
            witness: Optional[Witness] = None, outcome: Optional[Outcome] = None) -> PrincipleReport:
    if outcome is None:
        outcome = Outcome.VIOLATED if witness is not None else Outcome.NO_VIOLATION
    return PrincipleReport(
        principle=principle.name, spec=spec.describe(), mode=mode,
        sample_size=size, outcome=outcome, witness=witness,
    )


def _all_pairs(F: Framework, rng: Optional[random.Random]) -> Tuple[List[Pair], Mode]:
    settings = get_settings()
    total = 1 << F.n
    if F.n <= settings.exhaustive_cap:
        return [(l, r) for l in range(total) for r in range(total) if l != r], Mode.EXHAUSTIVE
    rng = rng or random.Random(settings.seed)
    return [(rng.randrange(total), rng.randrange(total)) for _ in range(settings.sample_pairs)], Mode.SAMPLED


def _all_sets(F: Framework, rng: Optional[random.Random]) -> Tuple[List[int], Mode]:
    settings = get_settings()
    if F.n <= settings.exhaustive_cap:
        return list(range(1 << F.n)), Mode.EXHAUSTIVE
    rng = rng or random.Random(settings.seed)
    return [rng.randrange(1 << F.n) for _ in range(settings.sample_pairs)], Mode.SAMPLED


# generalisation ------------------------------------------------------------------

def check_generalisation(F: Framework, spec: RankingSpec, sigma: SemanticsId,
                         part: PrincipleId = PrincipleId.GENERALISATION) -> PrincipleReport:
    """Compare the most plausible sets with sigma(F)"""
    principle = Principle(part, sigma)
    extensions = set(extension_masks(F, sigma))
    top = maximal_masks(F, spec)
    size = 1 << F.n
    check_sound = part in (PrincipleId.GENERALISATION, PrincipleId.SOUNDNESS)
    check_complete = part in (PrincipleId.GENERALISATION, PrincipleId.COMPLETENESS)

    if check_sound and not extensions:
        witness = Witness(framework=str(F), note=f"{sigma.value}(F) is empty, so no ranking can be sound")
        return _report(principle, spec, Mode.EXHAUSTIVE, size, witness, Outcome.STRUCTURAL)
    if check_sound:
        for mask in top:
            if mask not in extensions:
                witness = Witness(
                    framework=str(F), left=F.names_of(mask),
                    note=f"most plausible but not a {sigma.value} extension",
                )
                return _report(principle, spec, Mode.EXHAUSTIVE, size, witness)
    if check_complete:
        maximal = set(top)
        for mask in sorted(extensions):
            if mask not in maximal:
                witness = Witness(
                    framework=str(F), left=F.names_of(mask),
                    note=f"{sigma.value} extension that is not most plausible",
                )
                return _report(principle, spec, Mode.EXHAUSTIVE, size, witness)
    return _report(principle, spec, Mode.EXHAUSTIVE, size)


# composition / decomposition -----------------------------------------------------------

def _project(mask: int, part: int) -> int:
    """Mask of mask & part, re-indexed densely inside part"""
    out = 0
    for k, i in enumerate(bits(part)):
        if mask >> i & 1:
            out |= 1 << k
    return out


def _validate_partition(F: Framework, parts: Sequence[int]) -> None:
    covered = 0
    for part in parts:
        if covered & part:
            raise NotAPartition("parts overlap")
        covered |= part
    if covered != F.full:
        raise NotAPartition(f"parts miss arguments {F.format_set(F.full & ~covered)}")
    for a, b in F.attacks:
        owner = next(k for k, p in enumerate(parts) if p >> a & 1)
        if not parts[owner] >> b & 1:
            raise NotAPartition(
                f"attack ({F.arguments[a]},{F.arguments[b]}) crosses parts"
            )


def partition_masks(F: Framework, partition: Optional[Sequence[Iterable[str]]]) -> List[int]:
    if partition is None:
        return F.components()
    return [F.argset(names).mask for names in partition]


def _check_split(F: Framework, parts: List[int], spec: RankingSpec, principle: Principle,
                 pairs: Optional[Sequence[Pair]], rng: Optional[random.Random]) -> PrincipleReport:
    _validate_partition(F, parts)
    subs = [F.restrict(p) for p in parts]
    local = [comparator(sub, spec) for sub in subs]
    whole = comparator(F, spec)
    if pairs is None:
        pairs, mode = _all_pairs(F, rng)
    else:
        mode = Mode.WITNESS
    composing = principle.id is PrincipleId.COMPOSITION

    for left, right in pairs:
        verdict = whole.verdict(left, right)
        pieces = [
            cmp.verdict(_project(left, p), _project(right, p)) for cmp, p in zip(local, parts)
        ]
        locally = all(v.at_least for v in pieces)
        broken = (locally and not verdict.at_least) if composing else (verdict.at_least and not locally)
        if broken:
            verdicts = {"whole": verdict.value}
            verdicts.update({f"part-{k + 1}": v.value for k, v in enumerate(pieces)})
            witness = Witness(
                framework=str(F), left=F.names_of(left), right=F.names_of(right),
                partition=[F.names_of(p) for p in parts], verdicts=verdicts,
            )
            return _report(principle, spec, mode, len(pairs), witness)
    return _report(principle, spec, mode, len(pairs))


def check_composition(F1: Framework, F2: Framework, spec: RankingSpec,
                      pairs: Optional[Sequence[Pair]] = None,
                      rng: Optional[random.Random] = None) -> PrincipleReport:
    """Local 'at least as plausible' in both parts must carry over to the union"""
    F = F1.union(F2)
    parts = [(1 << F1.n) - 1, ((1 << F2.n) - 1) << F1.n]
    return _check_split(F, parts, spec, Principle(PrincipleId.COMPOSITION), pairs, rng)


def check_decomposition(F: Framework, partition: Optional[Sequence[Iterable[str]]], spec: RankingSpec,
                        pairs: Optional[Sequence[Pair]] = None,
                        rng: Optional[random.Random] = None) -> PrincipleReport:
    """A global 'at least as plausible' must hold in every unconnected part"""
    parts = partition_masks(F, partition)
    return _check_split(F, parts, spec, Principle(PrincipleId.DECOMPOSITION), pairs, rng)


def check_composition_parts(F: Framework, partition: Optional[Sequence[Iterable[str]]], spec: RankingSpec,
                            pairs: Optional[Sequence[Pair]] = None,
                            rng: Optional[random.Random] = None) -> PrincipleReport:
    """Composition over an already combined framework and its parts"""
    parts = partition_masks(F, partition)
    return _check_split(F, parts, spec, Principle(PrincipleId.COMPOSITION), pairs, rng)


# reinstatement ---------------------------------------------------------------------------

def reinstatable(F: Framework, mask: int) -> int:
    """Arguments defended by E, outside E and outside E- and E+"""
    return F.characteristic(mask) & ~mask & ~(F.minus(mask) | F.plus(mask))


def check_reinstatement(F: Framework, spec: RankingSpec, strong: bool,
                        cases: Optional[Sequence[Tuple[int, int]]] = None,
                        rng: Optional[random.Random] = None) -> PrincipleReport:
    principle = Principle(PrincipleId.STRONG_REINSTATEMENT if strong else PrincipleId.WEAK_REINSTATEMENT)
    comp = comparator(F, spec)
    if cases is None:
        sets, mode = _all_sets(F, rng)
        cases = [(m, a) for m in sets for a in bits(reinstatable(F, m))]
    else:
        mode = Mode.WITNESS
        cases = [(m, a) for m, a in cases if reinstatable(F, m) >> a & 1]

    for mask, a in cases:
        verdict = comp.verdict(mask | 1 << a, mask)
        ok = verdict is Verdict.BETTER if strong else verdict.at_least
        if not ok:
            witness = Witness(
                framework=str(F), left=F.names_of(mask), argument=F.arguments[a],
                verdicts={"extended": verdict.value},
            )
            return _report(principle, spec, mode, len(cases), witness)
    return _report(principle, spec, mode, len(cases))


# addition robustness ----------------------------------------------------------------------

def check_addition_robustness(F: Framework, spec: RankingSpec,
                              pairs: Optional[Sequence[Pair]] = None,
                              attack: Optional[Tuple[str, str]] = None,
                              rng: Optional[random.Random] = None) -> PrincipleReport:
    """Adding an attack from E onto E' minus E never drops E below E'"""
    principle = Principle(PrincipleId.ADDITION_ROBUSTNESS)
    comp = comparator(F, spec)
    if pairs is None:
        pairs, mode = _all_pairs(F, rng)
    else:
        mode = Mode.WITNESS
    existing = set(F.attacks)
    extended: Dict[Pair, Framework] = {}
    forced = None if attack is None else (F.index[attack[0]], F.index[attack[1]])
    checked = 0

    for left, right in pairs:
        before = comp.verdict(left, right)
        if not before.at_least:
            continue
        for a in bits(left):
            for b in bits(right & ~left):
                if (a, b) in existing or (forced is not None and (a, b) != forced):
                    continue
                if (a, b) not in extended:
                    extended[(a, b)] = F.with_attack(F.arguments[a], F.arguments[b])
                G = extended[(a, b)]
                after = comparator(G, spec).verdict(left, right)
                checked += 1
                if not after.at_least:
                    witness = Witness(
                        framework=str(F), left=F.names_of(left), right=F.names_of(right),
                        attack=(F.arguments[a], F.arguments[b]),
                        verdicts={"before": before.value, "after": after.value},
                    )
                    return _report(principle, spec, mode, checked, witness)
    return _report(principle, spec, mode, checked)


# syntax independence -----------------------------------------------------------------------

def random_mapping(F: Framework, rng: random.Random) -> Dict[str, str]:
    names = list(F.arguments)
    shuffled = names[:]
    rng.shuffle(shuffled)
    return {old: f"{new}_" for old, new in zip(names, shuffled)}


def check_syntax_independence(F: Framework, spec: RankingSpec,
                              permutation: Optional[Dict[str, str]] = None,
                              pairs: Optional[Sequence[Pair]] = None,
                              rng: Optional[random.Random] = None) -> PrincipleReport:
    """Verdicts survive renaming the arguments by a bijection"""
    principle = Principle(PrincipleId.SYNTAX_INDEPENDENCE)
    rng = rng or random.Random(get_settings().seed)
    mapping = permutation or random_mapping(F, rng)
    G = F.relabel(mapping)
    position = [G.index[mapping[name]] for name in F.arguments]

    def image(mask: int) -> int:
        return sum(1 << position[i] for i in bits(mask))

    ours = comparator(F, spec)
    theirs = comparator(G, spec)
    if pairs is None:
        pairs, mode = _all_pairs(F, rng)
    else:
        mode = Mode.WITNESS
    for left, right in pairs:
        before = ours.verdict(left, right)
        after = theirs.verdict(image(left), image(right))
        if before is not after:
            witness = Witness(
                framework=str(F), left=F.names_of(left), right=F.names_of(right), mapping=mapping,
                verdicts={"original": before.value, "renamed": after.value},
            )
            return _report(principle, spec, mode, len(pairs), witness)
    return _report(principle, spec, mode, len(pairs))


# dispatch and replay ----------------------------------------------------------------------------

def check_principle(principle: Principle, F: Framework, spec: RankingSpec,
                    partition: Optional[Sequence[Iterable[str]]] = None,
                    rng: Optional[random.Random] = None) -> PrincipleReport:
    """Run one principle's checker over a framework (components as default partition)"""
    pid = principle.id
    if pid in SIGMA_PRINCIPLES:
        return check_generalisation(F, spec, principle.semantics, pid)
    if pid is PrincipleId.COMPOSITION:
        return check_composition_parts(F, partition, spec, rng=rng)
    if pid is PrincipleId.DECOMPOSITION:
        return check_decomposition(F, partition, spec, rng=rng)
    if pid in (PrincipleId.WEAK_REINSTATEMENT, PrincipleId.STRONG_REINSTATEMENT):
        return check_reinstatement(F, spec, pid is PrincipleId.STRONG_REINSTATEMENT, rng=rng)
    if pid is PrincipleId.ADDITION_ROBUSTNESS:
        return check_addition_robustness(F, spec, rng=rng)
    return check_syntax_independence(F, spec, rng=rng)


def check_instance(principle: Principle, F: Framework, spec: RankingSpec, witness: Witness) -> PrincipleReport:
    """Check exactly the instance a witness describes"""
    pid = principle.id
    left = F.argset(witness.left or []).mask
    right = F.argset(witness.right or []).mask
    if pid in SIGMA_PRINCIPLES:
        report = check_generalisation(F, spec, principle.semantics, pid)
    elif pid in (PrincipleId.COMPOSITION, PrincipleId.DECOMPOSITION):
        parts = partition_masks(F, witness.partition)
        report = _check_split(F, parts, spec, principle, [(left, right)], None)
    elif pid in (PrincipleId.WEAK_REINSTATEMENT, PrincipleId.STRONG_REINSTATEMENT):
        argument = F.index[witness.argument]
        report = check_reinstatement(F, spec, pid is PrincipleId.STRONG_REINSTATEMENT, cases=[(left, argument)])
    elif pid is PrincipleId.ADDITION_ROBUSTNESS:
        report = check_addition_robustness(F, spec, pairs=[(left, right)], attack=witness.attack)
    else:
        report = check_syntax_independence(F, spec, permutation=witness.mapping, pairs=[(left, right)])
    return report.model_copy(update={"mode": Mode.WITNESS})


def replay(report: PrincipleReport) -> PrincipleReport:
    """Re-run the checker on a report's witness"""
    if report.witness is None:
        return report
    F = parse_apx(report.witness.framework)
    return check_instance(Principle.parse(report.principle), F, parse_spec(report.spec), report.witness)
