import networkx as nx
import pytest

from extrank.engine import comparator
from extrank.errors import TooLarge
from extrank.framework import Verdict, sorted_masks
from extrank.lattice import materialize, maximal_masks, most_plausible
from extrank.semantics import SemanticsId, extension_masks
from extrank.specs import parse_spec

from .conftest import fresh, sets


def names(F, ranking):
    return [[F.format_set(m) for m in members] for members in ranking.classes]


class TestF05:
    def test_r_ad_lattice(self, f05):
        ranking = materialize(f05, parse_spec("r-ad"))
        classes = names(f05, ranking)
        assert classes[0] == ["{}", "{h}", "{h,j}"]
        assert classes[-1] == ["{h,i,j}"]
        assert ranking.maximal == [0]

    def test_r_co_top(self, f05):
        assert [E.mask for E in most_plausible(f05, parse_spec("r-co"))] == sets(f05, "h,j")

    def test_copeland_is_a_chain_with_balances(self, f05):
        ranking = materialize(f05, parse_spec("cope:conflicts,ud"))
        assert ranking.edges == [(k, k + 1) for k in range(len(ranking.classes) - 1)]
        assert ranking.balances[f05.argset(["i"]).mask] == 1
        assert ranking.balances[f05.argset(["h", "i"]).mask] == -6
        balances = [ranking.balances[members[0]] for members in ranking.classes]
        assert balances == sorted(balances, reverse=True)


class TestF04:
    def test_r_sst_top_is_semi_stable(self, f04):
        assert maximal_masks(f04, parse_spec("r-sst")) == list(extension_masks(f04, SemanticsId.SST))

    def test_r_co_top_is_complete(self, f04):
        assert maximal_masks(f04, parse_spec("r-co")) == sets(f04, "a", "a,g", "a,c,g", "a,d,g")

    def test_ld_pr_top(self, f04):
        assert maximal_masks(f04, parse_spec("ld-pr")) == sets(f04, "a,c,g", "a,d,g")

    def test_obe_ne_co_chain(self, f04):
        ranking = materialize(f04, parse_spec("obe:ne-co:sum"))
        assert f04.full in ranking.classes[0]
        assert ranking.maximal == [0]
        assert ranking.class_of(f04.argset(["a", "c", "g"]).mask) == ranking.class_of(
            f04.argset(["a", "d", "g"]).mask
        )


@pytest.mark.parametrize("spec", ["r-co", "r-gr", "r-pr", "r-sst"])
def test_f13_rankings_are_well_formed(spec):
    F13 = fresh("f13")
    ranking = materialize(F13, parse_spec(spec))
    covered = [m for members in ranking.classes for m in members]
    assert sorted(covered) == list(range(1 << F13.n))
    graph = nx.DiGraph(ranking.edges)
    assert nx.is_directed_acyclic_graph(graph)
    assert all(better < worse for better, worse in ranking.edges)


def test_f13_r_sst_top_region():
    F13 = fresh("f13")
    ranking = materialize(F13, parse_spec("r-sst"))
    empty, h, i = (ranking.class_of(m) for m in sets(F13, "", "h", "i"))
    assert (i, h) in ranking.edges
    assert (h, empty) in ranking.edges
    assert ranking.maximal == [i]


def test_provenance_names_deciding_relation(f05):
    ranking = materialize(f05, parse_spec("r-co"))
    assert set(ranking.provenance.values()) <= {"conflicts", "ud", "dn"}
    assert ranking.provenance


def test_candidates_restrict_coverage(f04):
    candidates = sets(f04, "a", "a,g", "b")
    ranking = materialize(f04, parse_spec("r-co"), candidates=candidates)
    assert not ranking.complete
    assert sorted(m for members in ranking.classes for m in members) == sorted(candidates)


def test_single_class():
    F6 = fresh("f06")
    ranking = materialize(F6, parse_spec("ld-st"))
    assert len(ranking.classes) == 1
    assert ranking.edges == []


def test_materialization_cap(override):
    override(cope_cap=4)
    with pytest.raises(TooLarge):
        materialize(fresh("f04"), parse_spec("r-ad"))


def test_describe_marks_the_top(f05):
    lines = materialize(f05, parse_spec("r-co")).describe()
    assert lines[0].startswith("* [0] {h,j}")
    assert not lines[-1].startswith("*")


def undominated(F, spec):
    comp = comparator(F, spec)
    masks = range(1 << F.n)
    return [m for m in masks if not any(comp.verdict(other, m) is Verdict.BETTER for other in masks)]


@pytest.mark.parametrize("spec", [
    "lex:ncount-cat", "lex:strdef", "lex:nonatt", "lex:c-ud,nonatt", "lex:conflicts,strdef",
    "r-co", "r-c-sst", "cope:conflicts,ud", "obe:cat:sum", "obe:ne-co:sum", "ld-pr", "gc:cat",
])
@pytest.mark.parametrize("name", ["f04", "f05"])
def test_maximal_sets_have_nothing_strictly_above(name, spec):
    F = fresh(name)
    assert materialize(F, parse_spec(spec)).maximal_sets == sorted_masks(undominated(F, parse_spec(spec)))


def test_non_transitive_total_spec_keeps_every_undominated_set():
    F5 = fresh("f05")
    assert maximal_masks(F5, parse_spec("lex:ncount-cat")) == sets(F5, "", "h")
