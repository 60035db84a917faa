"""
Classical extension semantics: conflict-free, admissible, complete, grounded,
preferred, stable and semi-stable sets.

Conflict-free sets are enumerated by backtracking with conflict pruning; every
other family is filtered or maximised from there. Families are cached on the
framework, so repeated lookups during ranking and principle checks are free.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, List, Optional, Tuple

from .config import get_settings
from .errors import SpecSyntaxError, TooLarge
from .framework import ArgSet, Framework, sorted_masks

logger = logging.getLogger(__name__)


class SemanticsId(str, Enum):
    CF = "cf"
    AD = "ad"
    CO = "co"
    GR = "gr"
    PR = "pr"
    ST = "st"
    SST = "sst"

    @classmethod
    def parse(cls, text: str) -> "SemanticsId":
        try:
            return cls(text.strip().lower())
        except ValueError:
            known = ", ".join(s.value for s in cls)
            raise SpecSyntaxError(f"unknown semantics '{text}' (expected one of {known})") from None


@dataclass(frozen=True)
class ExtensionFamily:
    """sigma(F): deduplicated, canonically sorted extensions"""

    semantics: SemanticsId
    masks: Tuple[int, ...]
    digest: str

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.masks)

    def __contains__(self, mask: int) -> bool:
        return mask in self.masks

    @property
    def extensions(self) -> List[ArgSet]:
        return [ArgSet(m, self.digest) for m in self.masks]


def _conflict_free(F: Framework) -> List[int]:
    found: List[int] = []

    def grow(i: int, mask: int) -> None:
        if i == F.n:
            found.append(mask)
            return
        grow(i + 1, mask)
        bit = 1 << i
        if not (F.attackers[i] & (mask | bit)) and not (F.targets[i] & mask):
            grow(i + 1, mask | bit)

    grow(0, 0)
    return found


def _maximal(masks: List[int], key: Callable[[int], int] = lambda m: m) -> List[int]:
    """Members whose key is not strictly included in another member's key"""
    keyed = [(key(m), m) for m in masks]
    return [
        m for k, m in keyed
        if not any(k != other and k & ~other == 0 for other, _ in keyed)
    ]


def _is_admissible(F: Framework, mask: int) -> bool:
    return F.is_conflict_free(mask) and not (mask & ~F.characteristic(mask))


def _compute(F: Framework, sigma: SemanticsId) -> List[int]:
    if sigma is SemanticsId.GR:
        return [F.grounded()]
    cf = _conflict_free(F)
    if sigma is SemanticsId.CF:
        return cf
    if sigma is SemanticsId.ST:
        return [m for m in cf if m | F.plus(m) == F.full]
    ad = [m for m in cf if not (m & ~F.characteristic(m))]
    if sigma is SemanticsId.AD:
        return ad
    if sigma is SemanticsId.PR:
        return _maximal(ad)
    co = [m for m in ad if F.characteristic(m) == m]
    if sigma is SemanticsId.CO:
        return co
    return _maximal(co, key=lambda m: m | F.plus(m))


def extension_masks(F: Framework, sigma: SemanticsId, cap: Optional[int] = None) -> Tuple[int, ...]:
    limit = get_settings().enumeration_cap if cap is None else cap
    if F.n > limit:
        raise TooLarge(F.n, limit)

    def build() -> Tuple[int, ...]:
        masks = tuple(sorted_masks(_compute(F, sigma)))
        logger.debug("%s(F) has %d extensions on %s", sigma.value, len(masks), F.digest)
        return masks

    return F.cached(("extensions", sigma), build)


def enumerate_extensions(F: Framework, sigma: SemanticsId, cap: Optional[int] = None) -> ExtensionFamily:
    """sigma(F) for |A| up to the enumeration cap"""
    return ExtensionFamily(sigma, extension_masks(F, sigma, cap), F.digest)


def holds(F: Framework, sigma: SemanticsId, mask: int) -> bool:
    if sigma is SemanticsId.CF:
        return F.is_conflict_free(mask)
    if sigma is SemanticsId.AD:
        return _is_admissible(F, mask)
    if sigma is SemanticsId.CO:
        return _is_admissible(F, mask) and F.characteristic(mask) == mask
    if sigma is SemanticsId.ST:
        return F.is_conflict_free(mask) and mask | F.plus(mask) == F.full
    if sigma is SemanticsId.GR:
        return mask == F.grounded()
    # maximality probes go through the cached family
    return mask in extension_masks(F, sigma)


def is_extension(F: Framework, sigma: SemanticsId, E: ArgSet) -> bool:
    return holds(F, sigma, F.check(E))
