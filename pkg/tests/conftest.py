import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from regcomplex.permgroup import Permutation

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def perms(draw, degree):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    img = list(range(degree))
    random.Random(seed).shuffle(img)
    return Permutation(img)


@st.composite
def gen_sets(draw, min_degree=1, max_degree=7, max_gens=3):
    degree = draw(st.integers(min_degree, max_degree))
    gens = draw(st.lists(perms(degree), min_size=0, max_size=max_gens))
    return degree, gens


@pytest.fixture(scope="session")
def catalog_entries():
    from regcomplex.catalog import catalog
    return catalog()


@pytest.fixture(scope="session")
def positive_entries(catalog_entries):
    return [e for e in catalog_entries if not e.negative]


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
