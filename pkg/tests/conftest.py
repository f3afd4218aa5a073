import itertools

import numpy as np
import pytest

from kleinprym.config_p1 import INF, NormalizedConfiguration, chordal_distance


def random_mobius(rng):
    while True:
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        if abs(np.linalg.det(g)) > 0.1:
            return g


def sample_b(rng, sep=0.05, rmin=0.2, rmax=3.0):
    """Three free points in an annulus, kept 'sep' apart (chordally) from
    each other and from 0, 1, INF."""
    refs = [0j, 1 + 0j, INF]
    while True:
        r = rng.uniform(rmin, rmax, 3)
        th = rng.uniform(0, 2 * np.pi, 3)
        b = [complex(x) for x in r * np.exp(1j * th)]
        pts = refs + b
        if all(chordal_distance(p, q) >= sep for p, q in itertools.combinations(pts, 2)):
            return tuple(b)


def sample_normalized(rng, kind):
    return NormalizedConfiguration(sample_b(rng), kind)


def sample_z(rng, lo=0.1, hi=10.0):
    return tuple(complex(rng.uniform(-2, 2), rng.uniform(lo, hi)) for _ in range(3))


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
