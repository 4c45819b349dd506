import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from stackval.arena import Arena
from stackval.gallery import fig1, fig2

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_arena(rng, n, wmin=-2, wmax=2, max_out=2):
    """Random arena on ``n`` vertices, each with 1..max_out successors."""
    names = [f"u{i}" for i in range(n)]
    owner = [rng.randint(0, 1) for _ in range(n)]
    edges = []
    for i in range(n):
        k = rng.randint(1, min(max_out, n))
        for j in sorted(rng.sample(range(n), k)):
            edges.append((names[i], names[j], rng.randint(wmin, wmax), rng.randint(wmin, wmax)))
    return Arena(names, owner, edges, init=names[0])


def seeded_arenas(count, n, seed, **kw):
    rng = random.Random(seed)
    return [random_arena(rng, rng.randint(1, n) if kw.pop("vary", False) else n, **kw)
            for _ in range(count)]


@st.composite
def arenas(draw, max_n=4, wmin=-2, wmax=2, max_out=2):
    n = draw(st.integers(1, max_n))
    names = [f"u{i}" for i in range(n)]
    owner = [draw(st.integers(0, 1)) for _ in range(n)]
    edges = []
    for i in range(n):
        targets = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=min(max_out, n)))
        for j in sorted(targets):
            edges.append((names[i], names[j], draw(st.integers(wmin, wmax)),
                          draw(st.integers(wmin, wmax))))
    return Arena(names, owner, edges, init=names[0])


def rationals(lo=-3, hi=3, den=4):
    return st.builds(lambda n, d: Fraction(n, d), st.integers(lo * den, hi * den), st.integers(1, den))


@pytest.fixture
def g1():
    return fig1()


@pytest.fixture
def g2():
    return fig2()
