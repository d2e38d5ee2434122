import itertools
import random
import sys

import pytest
from hypothesis import HealthCheck, settings

from setpair_lab.verifiers import PairFamilyInstance

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def star_pairs(a, b, center=1):
    """The star-plus-complements family on [a+b]: every a-set through ``center``."""
    ground = list(range(1, a + b + 1))
    others = [x for x in ground if x != center]
    pairs = []
    for rest in itertools.combinations(others, a - 1):
        A = {center, *rest}
        pairs.append((sorted(A), sorted(set(ground) - A)))
    return pairs


@pytest.fixture
def star_instance():
    return PairFamilyInstance.from_sets(5, star_pairs(2, 3), 0)


@pytest.fixture
def t1_instance():
    # a=b=3, t=1, N=6 in a 7-element ground set: element 5 is common to every set
    pairs = [([1, 2, 5], [3, 4, 5]), ([1, 3, 5], [2, 4, 5]), ([2, 3, 5], [1, 4, 5])]
    return PairFamilyInstance.from_sets(7, pairs, 1)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
