from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stackval.arena import Arena, Lasso
from stackval.errors import BudgetExceeded
from stackval.gallery import cycle_graph, fig1, fig2, self_loop
from stackval.graphs import (enumerate_simple_cycles, max_mean_cycle, payoff_of_lasso,
                             scc_decompose, tarjan)

from conftest import arenas


def names(a, comps):
    return [sorted(a.names[u] for u in c) for c in comps]


def test_scc_fig2():
    a = fig2()
    assert names(a, scc_decompose(a).components) == [["v0", "v1"], ["v2"]]


def test_scc_small():
    assert len(scc_decompose(self_loop()).components) == 1
    chain = Arena(["a", "b", "c"], [0, 0, 0],
                  [("a", "b", 0, 0), ("b", "c", 0, 0), ("c", "c", 0, 0)])
    d = scc_decompose(chain)
    assert names(chain, d.components) == [["a"], ["b"], ["c"]]
    assert len(d.nontrivial(chain)) == 1


@given(arenas(max_n=7))
def test_scc_partition_and_acyclic_condensation(a):
    d = scc_decompose(a)
    members = sorted(u for c in d.components for u in c)
    assert members == list(range(a.n))
    # the condensation is a DAG: its own SCCs are singletons
    cond = {i: [j for (s, j) in d.condensation if s == i] for i in range(len(d.components))}
    assert all(len(c) == 1 for c in tarjan(cond))
    assert all((i, i) not in d.condensation for i in cond)


def test_cycles_fig2():
    a = fig2()
    cl = enumerate_simple_cycles(a, ["v0", "v1"])
    got = dict(zip(cl.cycles, cl.mean_points))
    assert got == {("v0", "v1"): (1, 1), ("v1",): (0, 2)}
    cl = enumerate_simple_cycles(a, ["v2"])
    assert list(zip(cl.cycles, cl.mean_points)) == [(("v2",), (0, 1))]


def test_triangle_cycle():
    cl = enumerate_simple_cycles(cycle_graph(3), ["u0", "u1", "u2"])
    assert cl.cycles == (("u0", "u1", "u2"),)
    assert cl.mean_points == ((0, 0),)


def test_cycle_cap():
    k3 = Arena(list("abc"), [0] * 3, [(x, y, 0, 0) for x in "abc" for y in "abc"])
    with pytest.raises(BudgetExceeded):
        enumerate_simple_cycles(k3, "abc", cap=3)


@given(arenas(max_n=7))
def test_cycles_are_simple_canonical_closed(a):
    cl = enumerate_simple_cycles(a, a.names)
    assert len(set(cl.cycles)) == len(cl.cycles)
    for cyc, ids in zip(cl.cycles, cl.ids):
        assert len(set(cyc)) == len(cyc)
        assert ids[0] == min(ids)
        Lasso((), cyc).validate(a)


def test_max_mean_examples():
    value, lasso = max_mean_cycle(fig1(), 1, ["2", "3"])
    assert value == 2 and lasso.cycle == ("3",)
    assert max_mean_cycle(self_loop(), 0)[0] == 2
    two = Arena(["a", "b", "c", "d", "e"], [0] * 5,
                [("a", "b", 1, 0), ("b", "a", 0, 0), ("c", "d", 1, 0), ("d", "e", 0, 0),
                 ("e", "c", 0, 0)])
    assert max_mean_cycle(two, 0)[0] == Fraction(1, 2)
    assert max_mean_cycle(two, 0, minimize=True)[0] == Fraction(1, 3)


@given(arenas(max_n=7, wmin=-5, wmax=5, max_out=3), st.integers(0, 1))
def test_karp_matches_enumeration(a, dim):
    means = [m[dim] for m in enumerate_simple_cycles(a, a.names).mean_points]
    value, lasso = max_mean_cycle(a, dim)
    assert value == max(means)
    assert payoff_of_lasso(a, lasso)[dim] == value
    assert max_mean_cycle(a, dim, minimize=True)[0] == min(means)


def test_lasso_payoffs():
    a = fig2()
    assert payoff_of_lasso(a, Lasso((), ("v0", "v1"))) == (1, 1)
    assert payoff_of_lasso(a, Lasso(("v0",), ("v2",))) == (0, 1)
    assert payoff_of_lasso(self_loop(), Lasso((), ("v",)), "ds", Fraction(1, 2)) == (4, 6)


def _random_lasso(a, data):
    u, seq = 0, []
    while u not in seq:
        seq.append(u)
        u = data.draw(st.sampled_from(a.succ[u]))
    k = seq.index(u)
    return [a.names[x] for x in seq[:k]], [a.names[x] for x in seq[k:]]


@given(arenas(max_n=6), st.data(), st.integers(0, 5), st.integers(1, 3))
def test_mp_rotation_and_pumping(a, data, r, pump):
    prefix, cycle = _random_lasso(a, data)
    base = payoff_of_lasso(a, Lasso(prefix, cycle))
    r %= len(cycle)
    rotated = Lasso(prefix + cycle[:r], cycle[r:] + cycle[:r])
    pumped = Lasso(prefix + cycle * pump, cycle)
    assert payoff_of_lasso(a, rotated) == base
    assert payoff_of_lasso(a, pumped) == base


@given(arenas(max_n=6), st.data(), st.fractions(min_value=Fraction(1, 10), max_value=Fraction(9, 10),
                                                 max_denominator=10))
def test_ds_split_identity(a, data, lam):
    prefix, cycle = _random_lasso(a, data)
    seq = prefix + cycle
    k = data.draw(st.integers(0, len(prefix)))
    whole = payoff_of_lasso(a, Lasso(prefix, cycle), "ds", lam)
    tail = payoff_of_lasso(a, Lasso(prefix[k:], cycle), "ds", lam)
    head_edges = list(zip(seq[:k], seq[1:k + 1]))
    for dim in (0, 1):
        head = sum((lam ** i * a.weight(a.index[u], a.index[x], dim)
                    for i, (u, x) in enumerate(head_edges)), Fraction(0))
        assert whole[dim] == head + lam ** k * tail[dim]
