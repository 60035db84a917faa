import pytest
from hypothesis import strategies as st

from extrank.apx import parse_apx
from extrank.config import Settings, use_settings
from extrank.corpus import load_framework
from extrank.framework import Framework

NAMES = "abcdefg"


@pytest.fixture(autouse=True)
def _reset_settings():
    yield
    use_settings(None)


@pytest.fixture
def override():
    """Install settings for one test: override(cope_cap=3, ...)"""

    def install(**changes) -> Settings:
        settings = Settings().with_overrides(**changes)
        use_settings(settings)
        return settings

    return install


@pytest.fixture
def f04() -> Framework:
    return load_framework("f04")


@pytest.fixture
def f05() -> Framework:
    return load_framework("f05")


def fresh(name: str) -> Framework:
    """Uncached copy of a corpus framework (no memoized comparators or families)"""
    return parse_apx(str(load_framework(name)))


def sets(F: Framework, *groups: str):
    """Masks for comma-separated name groups, '' is the empty set"""
    return [F.argset([n for n in g.split(",") if n]).mask for g in groups]


@st.composite
def frameworks(draw, min_size: int = 0, max_size: int = 5) -> Framework:
    n = draw(st.integers(min_size, max_size))
    pairs = [(a, b) for a in range(n) for b in range(n)]
    attacks = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Framework(list(NAMES[:n]), attacks)
