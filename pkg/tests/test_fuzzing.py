import random

import pytest

from extrank.framework import Framework
from extrank.fuzzing import FrameworkGenerator, fuzz, random_frameworks, shrink
from extrank.principles import Mode, Outcome, Principle, check_principle, replay
from extrank.specs import parse_spec

STRONG = Principle.parse("strong-reinstatement")


class TestGenerator:
    def test_seeded(self):
        first = [str(F) for F in random_frameworks(5, seed=7)]
        second = [str(F) for F in random_frameworks(5, seed=7)]
        assert first == second

    def test_sizes(self):
        for F in random_frameworks(30, size_range=(2, 4), seed=1):
            assert 2 <= F.n <= 4

    def test_no_self_attacks_when_disabled(self):
        generator = FrameworkGenerator(seed=3, density=1.0, self_attacks=False)
        F = generator.generate(4)
        assert len(F.attacks) == 12
        assert all(a != b for a, b in F.attacks)

    def test_names_past_the_alphabet(self):
        assert FrameworkGenerator._names(2, offset=25) == ["z", "a1"]

    def test_split_is_a_partition_without_crossing_attacks(self):
        generator = FrameworkGenerator(seed=5, size_range=(3, 6))
        for _ in range(10):
            F, (left, right) = generator.generate_split()
            assert sorted(left + right) == sorted(F.arguments)
            lhs = F.argset(left).mask
            assert all((lhs >> a & 1) == (lhs >> b & 1) for a, b in F.attacks)

    @pytest.mark.parametrize("kwargs", [{"size_range": (0, 3)}, {"size_range": (4, 2)}, {"density": 1.5}])
    def test_bad_parameters(self, kwargs):
        with pytest.raises(ValueError):
            FrameworkGenerator(**kwargs)


class TestFuzz:
    def test_finds_r_ad_strong_reinstatement_violation(self):
        report = fuzz(parse_spec("r-ad"), STRONG, trials=200, size_range=(3, 6), seed=0)
        assert report.outcome is Outcome.VIOLATED
        assert report.mode is Mode.FUZZ
        assert replay(report).violated

    def test_deterministic(self):
        spec = parse_spec("r-ad")
        assert fuzz(spec, STRONG, trials=50, seed=11) == fuzz(spec, STRONG, trials=50, seed=11)

    def test_r_co_generalises_complete(self):
        report = fuzz(parse_spec("r-co"), Principle.parse("generalisation-co"), trials=60, seed=2)
        assert report.outcome is Outcome.NO_VIOLATION
        assert report.sample_size == 60


def test_shrink_to_a_single_argument(f05):
    F = f05.union(Framework(["x", "y"], [(0, 1)]))
    spec = parse_spec("r-ad")
    report = check_principle(STRONG, F, spec, rng=random.Random(0))
    assert report.violated
    smaller, shrunk = shrink(STRONG, F, spec, report)
    assert smaller.n == 1
    assert smaller.attacks == ()
    assert shrunk.violated
