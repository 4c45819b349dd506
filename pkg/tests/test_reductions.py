from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stackval.arena import load_arena
from stackval.ds_stackelberg import ds_best_response, evaluate_asv, evaluate_csv, gap_decide
from stackval.reductions import (PartitionInstance, TdsInstance, build_partition_reduction,
                                 build_tds_reduction, check_separation, partition_parameters,
                                 partition_strategy, read_sidecar, sequence_strategy, sidecar,
                                 write_generated)

F = Fraction


def word_sum(inst, prefix, cycle):
    """Discounted sum of ``prefix · cycle^ω`` over letters a/b, in closed form."""
    val = {"a": inst.a, "b": inst.b}
    lam = inst.lam
    head = sum((val[x] * lam ** i for i, x in enumerate(prefix)), F(0))
    loop = sum((val[x] * lam ** i for i, x in enumerate(cycle)), F(0))
    return head + lam ** len(prefix) * loop / (1 - lam ** len(cycle))


def test_tds_arena_shape():
    a, v = build_tds_reduction(TdsInstance(0, 1, F(3, 2), F(2, 3)))
    assert v == "v" and a.n == 5
    assert (a.weight(a.index["v"], a.index["z"], 0), a.weight(a.index["v"], a.index["z"], 1)) == (0, -1)
    assert a.owner[a.index["v"]] == 1
    with pytest.raises(ValueError):
        TdsInstance(0, 1, 1, 1)


def test_tds_trivial_instances():
    inst = TdsInstance(0, 0, 0, F(1, 2))
    a, v = build_tds_reduction(inst)
    assert evaluate_csv(a, inst.lam, sequence_strategy((), ("a",)), v) >= 0
    # target 1 is out of reach with all-zero letters: the follower prefers the
    # zero-cost branch through s, so the leader gets 0 < lam * t
    inst = TdsInstance(0, 0, 1, F(1, 2))
    a, v = build_tds_reduction(inst)
    csv = evaluate_csv(a, inst.lam, sequence_strategy((), ("a",)), v)
    assert csv == 0 and csv < inst.lam * inst.t


words = st.lists(st.sampled_from("ab"), max_size=3)


@given(st.integers(-2, 2), st.integers(-2, 2),
       st.fractions(min_value=F(1, 5), max_value=F(4, 5), max_denominator=5),
       words, words.filter(bool))
def test_lasso_target_gives_csv_lam_t(x, y, lam, prefix, cycle):
    base = TdsInstance(x, y, 0, lam)
    t = word_sum(base, prefix, cycle)
    inst = TdsInstance(x, y, t, lam)
    a, v = build_tds_reduction(inst)
    s = sequence_strategy(prefix, cycle)
    assert evaluate_csv(a, lam, s, v) == lam * t
    assert evaluate_asv(a, lam, s, v) <= lam * t


def test_sequence_strategy_rejects_bad_words():
    with pytest.raises(ValueError):
        sequence_strategy(("a",), ())
    with pytest.raises(ValueError):
        sequence_strategy(("c",), ("a",))


def test_partition_instance():
    with pytest.raises(ValueError):
        PartitionInstance((1, 1, 1))
    with pytest.raises(ValueError):
        PartitionInstance((0, 2))
    p = PartitionInstance((1, 1, 2))
    assert (p.T, p.n, p.solvable()) == (2, 3, True)
    assert not PartitionInstance((2, 2, 2)).solvable()


def test_partition_parameters_small():
    lam, eps, c = partition_parameters(1, 2)
    assert (lam, c) == (F(4, 5), F(1, 2))
    assert check_separation(1, 2, lam, eps)
    assert check_separation(1, 2, F(9, 10), F(1, 5))
    assert not check_separation(1, 2, F(1, 2), F(1, 5))


@pytest.mark.parametrize("weights", [w for n in range(1, 5) for w in product(range(1, 4), repeat=n)
                                     if sum(w) % 2 == 0])
def test_separation_holds_for_generated(weights):
    p = PartitionInstance(weights)
    _, lam, eps, c = build_partition_reduction(p)
    assert check_separation(p.T, p.n, lam, eps)
    assert eps > 0 and c == p.T - F(1, 2)


def test_partition_arena_shape():
    p = PartitionInstance((1, 1, 2))
    a, _, _, _ = build_partition_reduction(p)
    assert a.n == 2 * p.n + 4
    assert a.owner[a.index["v0"]] == 1
    assert a.weight(a.index["v0"], a.index["v1"], 1) == p.T - F(2, 3)
    assert a.weight(a.index["1.L"], a.index["2.L"], 0) == 1
    assert a.weight(a.index["1.L"], a.index["2.R"], 1) == 1


def test_partition_closed_form():
    # w = (1, 1), leader keeps item 1, paid on edge 1; item 2 goes to the
    # follower on edge 2, and lam^2 = 16/25 beats bailing out for 1/3
    p = PartitionInstance((1, 1))
    a, lam, _, _ = build_partition_reduction(p)
    s = partition_strategy(a, p, {1})
    assert ds_best_response(a, lam, s, "v0")[0] == lam ** 2
    assert evaluate_csv(a, lam, s, "v0") == lam
    assert evaluate_asv(a, lam, s, "v0") == lam


def test_partition_end_to_end_four_ones():
    p = PartitionInstance((1, 1, 1, 1))
    a, lam, eps, c = build_partition_reduction(p)
    for mode in ("csv", "asv"):
        assert gap_decide(a, lam, "v0", c, eps, mode).answer


def test_sidecar_round_trip(tmp_path):
    p = PartitionInstance((1, 1))
    a, lam, eps, c = build_partition_reduction(p)
    path = tmp_path / "part.game"
    write_generated(path, a, sidecar("partition", weights=list(p.weights), lam=lam, eps=eps, c=c,
                                     vertex="v0"))
    assert load_arena(path) == a
    meta = read_sidecar(path)
    assert (meta["lam"], meta["eps"], meta["c"], meta["vertex"]) == (lam, eps, c, "v0")
    assert read_sidecar(tmp_path / "missing.game") is None
