import random

from hypothesis import HealthCheck, settings, strategies as st

from ncsym.graphs import Graph
from ncsym.lattice import Perm, SetPartition

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def rgs(draw, min_d=1, max_d=6):
    d = draw(st.integers(min_d, max_d))
    out, top = [0], 0
    for _ in range(d - 1):
        x = draw(st.integers(0, top + 1))
        out.append(x)
        top = max(top, x)
    return out


def partitions(min_d=1, max_d=6):
    return rgs(min_d, max_d).map(SetPartition.from_rgs)


@st.composite
def partition_pairs(draw, min_d=1, max_d=6):
    a = draw(partitions(min_d, max_d))
    b = draw(partitions(a.degree, a.degree))
    return a, b


def perms(d):
    return st.permutations(range(1, d + 1)).map(Perm)


@st.composite
def multigraphs(draw, min_d=1, max_d=5, max_edges=7, loops=True):
    d = draw(st.integers(min_d, max_d))
    lo = 1 if loops else 0
    pairs = st.tuples(st.integers(1, d), st.integers(1, d)).filter(lambda e: lo or e[0] != e[1])
    edges = draw(st.lists(pairs, max_size=max_edges if d > 1 or loops else 0))
    return Graph(d, edges)


def seeded(seed=0):
    return random.Random(seed)
