import pytest

from extrank.errors import SpecSyntaxError, TooLarge
from extrank.framework import Framework
from extrank.semantics import SemanticsId, enumerate_extensions, extension_masks, is_extension

from .conftest import fresh, sets

F4_FAMILIES = {
    SemanticsId.CO: ["a", "a,g", "a,c,g", "a,d,g"],
    SemanticsId.PR: ["a,c,g", "a,d,g"],
    SemanticsId.GR: ["a"],
    SemanticsId.ST: ["a,c,g"],
    SemanticsId.SST: ["a,c,g"],
}


@pytest.mark.parametrize("sigma", list(F4_FAMILIES))
def test_f04_families(f04, sigma):
    family = enumerate_extensions(f04, sigma)
    assert list(family) == sets(f04, *F4_FAMILIES[sigma])


def test_admissible_sets_include_complete_ones(f04):
    admissible = set(enumerate_extensions(f04, SemanticsId.AD))
    assert set(enumerate_extensions(f04, SemanticsId.CO)) <= admissible
    assert 0 in admissible


def test_odd_cycle_has_no_stable_extension():
    F6 = fresh("f06")
    assert len(enumerate_extensions(F6, SemanticsId.ST)) == 0
    assert list(enumerate_extensions(F6, SemanticsId.PR)) == [0]


def test_membership(f04):
    d = f04.argset(["d"])
    assert is_extension(f04, SemanticsId.AD, d)
    assert not is_extension(f04, SemanticsId.CO, d)
    F8 = fresh("f08")
    assert not is_extension(F8, SemanticsId.CF, F8.argset(["a"]))


def test_semi_stable_keeps_incomparable_ranges():
    F = fresh("range_size")
    assert list(enumerate_extensions(F, SemanticsId.SST)) == sets(F, "a", "b")


def test_empty_framework():
    F = Framework([], [])
    for sigma in SemanticsId:
        assert list(enumerate_extensions(F, sigma)) == [0]


def test_extensions_are_wrapped_for_their_framework(f04):
    family = enumerate_extensions(f04, SemanticsId.ST)
    assert [E.digest for E in family.extensions] == [f04.digest]


def test_enumeration_cap(f04):
    with pytest.raises(TooLarge) as caught:
        extension_masks(f04, SemanticsId.CO, cap=3)
    assert caught.value.exit_code == 3


def test_unknown_semantics():
    with pytest.raises(SpecSyntaxError):
        SemanticsId.parse("ideal")
