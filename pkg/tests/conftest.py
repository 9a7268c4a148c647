import os

import numpy as np
import pytest

# Reference N=4, t=2 run, rounded to 4 decimals: spiral start and final tetrahedron.
SPIRAL4_PRINTED = np.array([
    [0.0, 0.0, 1.0],
    [0.9872, 0.0, -0.1595],
    [-0.3977, 0.6727, -0.6239],
    [-0.6533, -0.7455, -0.1318],
])
TETRA4_PRINTED = np.array([
    [0.0, 0.0, 1.0],
    [0.9428, 0.0, -0.3333],
    [-0.4714, 0.8165, -0.3333],
    [-0.4714, -0.8165, -0.3333],
])


def exact_tetrahedron():
    s = np.sqrt
    return np.array([
        [0.0, 0.0, 1.0],
        [s(8.0 / 9.0), 0.0, -1.0 / 3.0],
        [-s(2.0 / 9.0), s(2.0 / 3.0), -1.0 / 3.0],
        [-s(2.0 / 9.0), -s(2.0 / 3.0), -1.0 / 3.0],
    ])


@pytest.fixture
def tetrahedron():
    return exact_tetrahedron()


@pytest.fixture
def rng():
    return np.random.default_rng(20191)


def pytest_collection_modifyitems(config, items):
    if os.environ.get("SPHDESIGN_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow; set SPHDESIGN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
