import pytest

from extrank.base_relations import (
    BaseRelation,
    compare_base,
    compare_masks,
    ncount,
    relation_value,
    weak_matrix,
)
from extrank.argument_ranking import GradualId
from extrank.errors import NotUnary, SpecSyntaxError
from extrank.framework import Verdict

from .conftest import fresh


def rel(name: str) -> BaseRelation:
    return BaseRelation.parse(name)


class TestSetValues:
    def test_conflicts_are_ordered_pairs(self, f04):
        value = relation_value(f04, rel("conflicts"), f04.argset(["b", "c", "d"]))
        assert value == {("b", "c"), ("c", "d"), ("d", "c")}

    def test_defended_not_included(self, f04):
        assert relation_value(f04, rel("dn"), f04.argset(["b"])) == {"d", "g"}

    def test_unattacked_outsiders(self, f04):
        assert relation_value(f04, rel("unatt"), f04.argset(["a", "d"])) == {"e", "g"}

    def test_cardinality_value(self, f04):
        assert relation_value(f04, rel("c-conflicts"), f04.argset(["b", "c", "d"])) == 3

    @pytest.mark.parametrize("name", ["nonatt", "strdef", "mini", "ncount-cat"])
    def test_pairwise_relations_have_no_value(self, f04, name):
        with pytest.raises(NotUnary):
            relation_value(f04, rel(name), f04.argset(["a"]))


class TestComparisons:
    def test_undefended(self, f04):
        assert compare_base(f04, rel("ud"), f04.argset(["b"]), f04.argset(["b", "f"])) is Verdict.BETTER

    def test_nonatt(self, f04):
        verdict = compare_base(f04, rel("nonatt"), f04.argset(["a", "c", "g"]), f04.argset(["a", "d"]))
        assert verdict is Verdict.BETTER

    def test_strdef(self, f04):
        verdict = compare_base(f04, rel("strdef"), f04.argset(["a", "b", "f"]), f04.argset(["g"]))
        assert verdict is Verdict.BETTER

    def test_ncount_counts_shared_members(self, f04):
        left, right = f04.argset(["a", "b", "g"]), f04.argset(["a", "c", "g"])
        assert ncount(f04, GradualId.CAT, left.mask, right.mask) == 4
        assert ncount(f04, GradualId.CAT, right.mask, left.mask) == 3
        assert compare_base(f04, rel("ncount-cat"), left, right) is Verdict.BETTER

    def test_nonatt_is_not_transitive(self):
        F6 = fresh("f06")
        a, b, c = (F6.argset([x]) for x in "abc")
        nonatt = rel("nonatt")
        assert compare_base(F6, nonatt, a, b) is Verdict.BETTER
        assert compare_base(F6, nonatt, b, c) is Verdict.BETTER
        assert compare_base(F6, nonatt, c, a) is Verdict.BETTER

    def test_mini_and_maxi(self, f05):
        h, hj = f05.argset(["h"]), f05.argset(["h", "j"])
        assert compare_base(f05, rel("mini"), h, hj) is Verdict.BETTER
        assert compare_base(f05, rel("maxi"), h, hj) is Verdict.WORSE
        assert compare_base(f05, rel("maxi"), h, f05.argset(["j"])) is Verdict.INCOMPARABLE


@pytest.mark.parametrize("name", [
    "conflicts", "ud", "dn", "unatt", "c-conflicts", "c-ud", "c-dn", "c-unatt",
    "mini", "maxi", "nonatt", "strdef", "ncount-cat", "ncount-bbs",
])
def test_weak_matrix_matches_pairwise_verdicts(name):
    F = fresh("f13")
    relation = rel(name)
    W = weak_matrix(F, relation)
    total = 1 << F.n
    for left in range(total):
        for right in range(total):
            assert bool(W[left, right]) == compare_masks(F, relation, left, right).at_least, (left, right)


@pytest.mark.parametrize("text", ["ncount", "ncount-foo", "conflict", ""])
def test_parse_rejects(text):
    with pytest.raises(SpecSyntaxError):
        rel(text)
