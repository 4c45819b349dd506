"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion."""

import random
import time
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from stackval.arena import Arena, MealyStrategy
from stackval.asv_mp import (asv_threshold, asv_value, asv_value_details, best_response_mp,
                             check_witness, lambda_region, synthesize_leader_strategy,
                             witness_lasso)
from stackval.checker import verify_certificate
from stackval.ds_stackelberg import evaluate_asv, evaluate_csv, gap_decide
from stackval.gallery import fig1, fig2
from stackval.graphs import max_mean_cycle
from stackval.oracles import OracleBudget, brute_asv_mp, fig1_no_br_probe
from stackval.reductions import (PartitionInstance, TdsInstance, build_partition_reduction,
                                 build_tds_reduction, check_separation)
from stackval.zerosum import conj_player1_wins, ds_game_value

from conftest import seeded_arenas

F = Fraction


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail, started, limit=None):
        elapsed = time.perf_counter() - started
        within = limit is None or elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        budget = f" (limit {limit} s)" if limit else ""
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {detail}; {elapsed:.2f} s{budget}")
        assert ok, detail
        assert within, f"criterion {number} took {elapsed:.2f} s"
    return emit


def witness_suite():
    """Random arenas and thresholds shared by criterion 3 and the verifier check."""
    arenas = seeded_arenas(60, 5, 99, wmin=-2, wmax=2, max_out=2, vary=True)
    out = []
    for a in arenas:
        for c in (F(-3, 2), F(-1, 2), F(0), F(1, 3), F(1)):
            ok, cert = asv_threshold(a, 0, c)
            if ok:
                out.append((a, c, cert))
    return out


def test_criterion_1_fig2_regression(report):
    t = time.perf_counter()
    a = fig2()
    d = asv_value_details(a, "v0")
    yes = all(asv_threshold(a, "v0", c)[0] for c in (F(0), F(1, 2), F(3, 4), F(15, 16)))
    no = not any(asv_threshold(a, "v0", c)[0] for c in (F(1), F(2)))
    ok = d.value == 1 and not d.attained and yes and no
    report(1, ok, f"ASV(v0)={d.value}, attained={d.attained}, Yes-set ok={yes}, No-set ok={no}", t, 5)


def test_criterion_2_lambda_region(report):
    t = time.perf_counter()
    arenas = [fig2()] + seeded_arenas(50, 4, 2024, wmin=-2, wmax=2, max_out=2)
    checked = disagree = 0
    for a in arenas:
        W, v = a.W, a.names[0]
        region = lambda_region(a, v)
        for i in range(21):
            for j in range(21):
                c, d = -W + F(2 * W * i, 20), -W + F(2 * W * j, 20)
                checked += 1
                if region.contains(c, d) != conj_player1_wins(a, v, c, d).verdict:
                    disagree += 1
    report(2, disagree == 0, f"{checked} grid points on {len(arenas)} arenas, {disagree} disagreements",
           t, 60)


def _running_mean_above(a, hist, start, c):
    total = F(0)
    for i, (u, x) in enumerate(zip(hist, hist[1:]), 1):
        total += a.weight(a.index[u], a.index[x], 0)
        if i >= start and total <= c * i:
            return False
    return True


def test_criterion_3_witness_soundness(report):
    t = time.perf_counter()
    suite = witness_suite()
    failures = 0
    for a, c, cert in suite:
        _, lasso, _ = witness_lasso(a, cert)
        lasso_ok = check_witness(a, cert.vertex, lasso, c)[0]
        s = synthesize_leader_strategy(a, cert)
        burn = s.burn_in()
        sim_ok = burn < 10 ** 4 and _running_mean_above(a, s.simulate(10 ** 4), burn, c)
        if not (lasso_ok and sim_ok):
            failures += 1
    ok = failures == 0 and len(suite) > 0
    report(3, ok, f"{len(suite)} certificates, {failures} failed re-check or simulation", t)


def test_criterion_4_mp_oracle_bracketing(report):
    t = time.perf_counter()
    arenas = seeded_arenas(30, 5, 7, wmin=-2, wmax=2, max_out=2, vary=True)
    misses = 0
    for a in arenas:
        bracket = brute_asv_mp(a, 0, OracleBudget(memory=2, horizon=8))
        if not bracket.contains(asv_value(a, 0)):
            misses += 1
    report(4, misses == 0, f"{len(arenas)} arenas, {misses} solver values outside the oracle bracket",
           t, 600)


def test_criterion_5_fig1_no_best_response(report):
    t = time.perf_counter()
    probe_ok = True
    prev = None
    for k in range(101):
        cur, nxt = fig1_no_br_probe(k)
        probe_ok &= cur == F(2 * k + 1, k + 1) and nxt == F(2 * k + 3, k + 2) and cur < nxt
        probe_ok &= prev is None or prev < cur
        prev = cur
    a = fig1()
    br_ok = True
    for at2 in ("2", "3"):
        for at3 in ("2", "3"):
            s = MealyStrategy.memoryless(0, {"2": at2, "3": at3})
            r = best_response_mp(a, s, "1")
            keep = {"2": at2, "3": at3}
            g = Arena(a.names, a.owner, [(a.names[x], a.names[y], a.w0[k], a.w1[k])
                                         for k, (x, y) in enumerate(a.edges)
                                         if a.names[x] not in keep or keep[a.names[x]] == a.names[y]])
            reach = [g.names[u] for u in g.reachable(g.index["1"])]
            br_ok &= r.response is not None and max_mean_cycle(g, 1, reach)[0] == r.value
    report(5, probe_ok and br_ok, f"probe k<=100 exact and increasing={probe_ok}; "
                                  f"4 best responses match Karp={br_ok}", t)


def test_criterion_6_ds_gap_tds(report):
    t = time.perf_counter()
    inst = TdsInstance(0, 1, F(3, 2), F(2, 3))
    a, v = build_tds_reduction(inst)
    yes = gap_decide(a, inst.lam, v, F(4, 5), F(1, 10), "csv")
    no = gap_decide(a, inst.lam, v, F(3, 2), F(1, 10), "csv")
    yes_value = evaluate_csv(a, inst.lam, yes.witness, v) if yes.answer else None
    no_value = evaluate_csv(a, inst.lam, no.strategy, v)
    ok = yes.answer and yes_value > F(4, 5) and not no.answer and no_value <= F(3, 2)
    report(6, ok, f"c=4/5 -> {'Yes' if yes.answer else 'No'} (witness {yes_value}), "
                  f"c=3/2 -> {'Yes' if no.answer else 'No'} (best {no_value})", t, 120)


def partition_instances():
    out = []
    for n in range(1, 5):
        for w in combinations_with_replacement(range(1, 4), n):
            if sum(w) % 2 == 0:
                out.append(PartitionInstance(w))
    return out


def test_criterion_7_partition_reduction(report):
    t = time.perf_counter()
    wrong = []
    sep_ok = True
    insts = partition_instances()
    for p in insts:
        a, lam, eps, c = build_partition_reduction(p)
        sep_ok &= check_separation(p.T, p.n, lam, eps)
        for mode in ("csv", "asv"):
            if gap_decide(a, lam, "v0", c, eps, mode).answer != p.solvable():
                wrong.append((p.weights, mode))
    solvable = sum(p.solvable() for p in insts)
    report(7, not wrong and sep_ok, f"{len(insts)} instances ({solvable} solvable), both modes, "
                                 f"wrong answers {wrong}, separation holds={sep_ok}", t, 600)


def _truncated(a, lam, dim, k):
    val = [F(0)] * a.n
    w = a.weights(dim)
    for _ in range(k):
        val = [(max if a.owner[u] == 0 else min)(w[e] + lam * val[x]
                                                 for e, x in zip(a.out_edges[u], a.succ[u]))
               for u in range(a.n)]
    return val


def test_criterion_8_ds_numeric_contracts(report):
    t = time.perf_counter()
    rng = random.Random(8)
    bound_ok = True
    for a in seeded_arenas(20, 5, 81, wmin=-3, wmax=3, max_out=3, vary=True):
        lam = F(rng.randint(1, 9), 10)
        for dim in (0, 1):
            value = ds_game_value(a, lam, dim, 0, 0).value
            for k in range(1, 21):
                bound_ok &= abs(value - _truncated(a, lam, dim, k)[0]) <= lam ** k * a.W / (1 - lam)
    order_ok = True
    for a in seeded_arenas(100, 4, 82, max_out=2, vary=True):
        lam = F(rng.randint(1, 9), 10)
        states = list(range(rng.randint(1, 3)))
        update = {(m, x): rng.choice(states) for m in states for x in a.names}
        output = {(m, x): a.names[rng.choice(a.succ[a.index[x]])]
                  for m in states for x in a.names if a.owner[a.index[x]] == 0}
        s = MealyStrategy(0, states, 0, update, output)
        order_ok &= evaluate_asv(a, lam, s, 0) <= evaluate_csv(a, lam, s, 0)
    report(8, bound_ok and order_ok, f"truncation bound K=1..20 on 20 arenas={bound_ok}; "
                                     f"asv<=csv on 100 pairs={order_ok}", t)


def test_verifier_cost_linear_in_certificate_size(report):
    t = time.perf_counter()
    rows = []
    for a, c, cert in witness_suite():
        r = verify_certificate(a, cert)
        rows.append((r.ok, r.cost, r.size))
    ratio = max(cost / size for _, cost, size in rows)
    ok = all(r[0] for r in rows) and ratio <= 2
    sizes = sorted({size for _, _, size in rows})
    report("NP-cert", ok, f"{len(rows)} certificates, sizes {sizes[0]}..{sizes[-1]}, "
                          f"max verifier cost/size {float(ratio):.3f} (bound 2)", t)
