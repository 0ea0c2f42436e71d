import cmath
import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from holospec.enumeration import GroupPresentation  # noqa: E402


def diag(z):
    return np.diag([cmath.exp(z / 2), cmath.exp(-z / 2)])


def random_sl2(rng, spread=1.0):
    m = rng.normal(size=(2, 2)) * spread + 1j * rng.normal(size=(2, 2)) * spread
    return m / cmath.sqrt(np.linalg.det(m))


def random_loxodromic(rng, lmin=0.3, lmax=3.0):
    z = complex(rng.uniform(lmin, lmax), rng.uniform(-math.pi, math.pi))
    g = random_sl2(rng)
    return g @ diag(z) @ np.linalg.inv(g), z


def schottky():
    # two loxodromics with far-apart fixed points: a free (ping-pong) group
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    r = np.array([[c, -s], [s, c]])
    a = diag(complex(3.0, 0.7))
    b = r @ diag(complex(3.2, -1.1)) @ r.T
    return GroupPresentation([a, b], name="schottky")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def pres():
    return schottky()
