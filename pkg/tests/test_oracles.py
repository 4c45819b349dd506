from fractions import Fraction

import pytest

from stackval.asv_mp import asv_threshold, asv_value
from stackval.gallery import fig1, fig2, self_loop
from stackval.oracles import (OracleBudget, brute_asv_mp, brute_ds_value, fig1_no_br_probe,
                              grid_bisect, memoryless_choice)
from stackval.reductions import (PartitionInstance, TdsInstance, build_partition_reduction,
                                 build_tds_reduction)

from conftest import seeded_arenas

F = Fraction


@pytest.mark.parametrize("k, want", [(0, (1, F(3, 2))), (1, (F(3, 2), F(5, 3))),
                                     (10, (F(21, 11), F(23, 12)))])
def test_probe_examples(k, want):
    assert fig1_no_br_probe(k) == want


def test_probe_increasing_below_two():
    prev = None
    for k in range(40):
        cur, nxt = fig1_no_br_probe(k)
        assert cur < nxt < 2
        assert prev is None or prev < cur
        prev = cur
    with pytest.raises(ValueError):
        fig1_no_br_probe(-1)


def test_budget_validation():
    with pytest.raises(ValueError):
        OracleBudget(memory=0)


def test_mp_brackets_examples():
    b = brute_asv_mp(fig2(), "v0", OracleBudget(memory=2, horizon=6))
    assert b.lower >= F(2, 3) and b.contains(1)
    b = brute_asv_mp(self_loop(), "v")
    assert (b.lower, b.upper) == (2, 2)
    lows = [brute_asv_mp(fig1(), "1", OracleBudget(memory=m)).lower for m in (1, 2, 3)]
    assert lows == sorted(lows)


def test_mp_brackets_grow_with_memory_on_fig2():
    lows = [brute_asv_mp(fig2(), "v0", OracleBudget(memory=m, horizon=8)).lower for m in (1, 2, 3)]
    assert lows == [0, F(2, 3), F(4, 5)]


@pytest.mark.parametrize("a", seeded_arenas(8, 4, 3, max_out=2), ids=lambda a: repr(a))
def test_mp_bracket_contains_solver(a):
    b = brute_asv_mp(a, 0, OracleBudget(memory=2, horizon=8))
    value = asv_value(a, 0)
    assert b.contains(value)
    # a finite-memory value above c certifies ASV > c
    if b.lower > -a.W:
        assert asv_threshold(a, 0, b.lower - F(1, 100))[0]


def test_ds_brackets_examples():
    lam = F(1, 2)
    b = brute_ds_value(self_loop(), lam, 0, OracleBudget(memory=1, horizon=10))
    assert b.contains(4)
    # ten-step truncation 4 - 2^-8 minus the tail bound 2^-8
    assert b.lower == 4 - F(1, 2 ** 7) and b.upper == 4
    tds, _ = build_tds_reduction(TdsInstance(0, 1, F(3, 2), F(2, 3)))
    b = brute_ds_value(tds, F(2, 3), 0, OracleBudget(memory=2, horizon=8), "csv")
    assert b.lower >= 0


def test_ds_bracket_partition_closed_form():
    p = PartitionInstance((1, 1))
    a, lam, _, _ = build_partition_reduction(p)
    only = [memoryless_choice(a, {"v1": "v1", "1": "1.L", "1.L": "2.R", "1.R": "2.R",
                                  "2.L": "v2", "2.R": "v2", "v2": "v2"})]
    b = brute_ds_value(a, lam, 0, OracleBudget(memory=1, horizon=8), "csv", only)
    assert b.contains(lam)
    lo, hi = b.extra["follower"]
    assert lo <= lam ** 2 <= hi


def test_grid_bisect():
    lo, hi = grid_bisect(lambda c: F(1, 3) > c, 0, 1, F(1, 64))
    assert lo <= F(1, 3) <= hi and hi - lo <= F(1, 64)
