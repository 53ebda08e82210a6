"""
Shared fixtures: the two-parameter linear example and a seeded corpus of small systems
"""
import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.poly_core import CoefficientField, system_ring  # noqa: E402
from algebra.solve import SystemInput, triangularize  # noqa: E402

EXAMPLE5 = "params m=2 n=2\npoly X1 + 1 + Y1*X2\npoly X2 + Y2*X1\n"


def make_system(m, n, build):
    ring = system_ring(m, n)
    ys, xs = ring.gens[:m], ring.gens[m:]
    return SystemInput(m, n, tuple(build(ys, xs)), ring)


def coupled_system(rng):
    """X1 + a + b*Y1*X2, X2 + c*Y2*X1 + e: always a single point over QQ(Y1, Y2)"""
    a, e = rng.randint(-3, 3), rng.randint(-3, 3)
    b, c = rng.choice([-2, -1, 1, 2]), rng.choice([-2, -1, 1, 2])
    return make_system(2, 2, lambda ys, xs: [
        xs[0] + a + b * ys[0] * xs[1],
        xs[1] + c * ys[1] * xs[0] + e,
    ])


def stacked_system(rng, m, n):
    """Monic in X_l with degree <= 2, lower variables of degree <= 1; radical by construction"""
    def build(ys, xs):
        gens = []
        for level, x in enumerate(xs):
            lower = list(ys) + list(xs[:level]) if level else list(ys[1:])
            tail = rng.randint(-3, 3) + sum(rng.randint(-2, 2) * v for v in lower)
            if level == 0:
                tail = tail + rng.choice([-3, -2, -1, 1, 2, 3]) * ys[0]
                gens.append(x ** 2 + tail if rng.random() < 0.6 else x + tail)
            else:
                mixed = rng.randint(-2, 2) * ys[rng.randrange(m)] * xs[rng.randrange(level)]
                gens.append(x + tail + mixed)
        return gens
    return make_system(m, n, build)


@pytest.fixture
def example5():
    ring = system_ring(2, 2)
    y1, y2, x1, x2 = ring.gens
    return SystemInput(2, 2, (x1 + 1 + y1 * x2, x2 + y2 * x1), ring)


@pytest.fixture
def example5_set(example5):
    return triangularize(example5)


@pytest.fixture
def field2():
    return CoefficientField(2)


@pytest.fixture
def example5_file(tmp_path):
    path = tmp_path / 'example5.sys'
    path.write_text(EXAMPLE5)
    return str(path)


@pytest.fixture(scope='session')
def corpus():
    rng = random.Random(20240)
    systems = []
    for _ in range(5):
        systems.append(coupled_system(rng))
    for m, n in ((1, 2), (2, 2), (1, 3), (2, 3), (1, 1), (2, 1)):
        systems.append(stacked_system(rng, m, n))
    ring = system_ring(2, 2)
    y1, y2, x1, x2 = ring.gens
    systems.append(SystemInput(2, 2, (x1 + 1 + y1 * x2, x2 + y2 * x1), ring))
    return systems
