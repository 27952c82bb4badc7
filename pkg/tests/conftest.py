import numpy as np
import pytest

from cohom1.algebra import AlgebraElement, AlgebraTag


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_element(tag, rng, imaginary=False):
    c = rng.standard_normal(tag.dim)
    if imaginary:
        c[0] = 0.0
    return AlgebraElement(tag, c)


ALL_TAGS = list(AlgebraTag)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
