import numpy as np
import pytest

from greedylab.spaces import DifferenceL1, Lp, MixNorm, SchreierMod, SummingC0


@pytest.fixture(params=["summing", "difference", "schreier", "mixnorm", "lp2"])
def space(request):
    return {"summing": SummingC0(), "difference": DifferenceL1(), "schreier": SchreierMod(),
            "mixnorm": MixNorm(), "lp2": Lp(2.0)}[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(LINES):
            terminalreporter.write_line(line)
