"""Zero-sum primitives: discounted and mean-payoff game values and the
two-dimensional conjunction game behind (c, d)-badness.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import budget
from .arena import MealyStrategy
from .errors import ArenaError, BudgetExceeded
from .geometry import best_y_left_of, dominated_from_above_cell, hull_edges, hull_vertices, Region2D
from .graphs import cycle_mean, is_nontrivial, sub_max_mean_cycle, sub_simple_cycles, tarjan


@dataclass
class ZeroSumResult:
    """Value from one vertex plus memoryless optimal strategies.

    ``values`` maps every vertex to its value when the solver computes
    them all (discounted games); it is empty otherwise.
    """

    value: Fraction
    optimal_strategy_max: MealyStrategy
    optimal_strategy_min: MealyStrategy
    values: dict = field(default_factory=dict)


# -- discounted sum --------------------------------------------------------------

def evaluate_profile(choice, w, lam):
    """Discounted values of the functional graph ``u → choice[u]``.

    ``w[u]`` is the weight of the edge ``u → choice[u]``.  Each cycle is
    solved in closed form, then tree vertices are filled backwards.
    """
    n = len(choice)
    val = [None] * n
    state = [0] * n
    for s in range(n):
        if state[s]:
            continue
        path, pos = [], {}
        u = s
        while state[u] == 0 and u not in pos:
            pos[u] = len(path)
            path.append(u)
            u = choice[u]
        if state[u] == 0:
            cyc = path[pos[u]:]
            k = len(cyc)
            total, f = Fraction(0), Fraction(1)
            for x in cyc:
                total += f * w[x]
                f *= lam
            val[cyc[0]] = total / (1 - f)
            for x in reversed(cyc[1:]):
                val[x] = w[x] + lam * val[choice[x]]
            path = path[:pos[u]]
            for x in cyc:
                state[x] = 1
        for x in reversed(path):
            val[x] = w[x] + lam * val[choice[x]]
            state[x] = 1
    return val


def _options(a, weights):
    return [[(x, weights[k]) for x, k in zip(a.succ[u], a.out_edges[u])] for u in range(a.n)]


def _improve(choice, val, opts, lam, vertices, sense):
    """Greedy switch at ``vertices``; returns True if anything changed."""
    changed = False
    for u in vertices:
        cur = None
        best, best_x = None, None
        for x, wx in opts[u]:
            q = wx + lam * val[x]
            if x == choice[u]:
                cur = q
            if best is None or (q > best if sense > 0 else q < best):
                best, best_x = q, x
        if (best > cur) if sense > 0 else (best < cur):
            choice[u] = best_x
            changed = True
    return changed


def policy_iteration(opts, lam, maximizing):
    """Hoffman–Karp policy iteration on option lists.

    ``opts[u]`` lists ``(successor, weight)`` pairs; ``maximizing[u]``
    tells whether the controller of ``u`` maximizes.  The minimizer's
    policy is re-optimized to a best response after every switch of the
    maximizer.  Returns (values, choice).
    """
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise ValueError("discount factor must lie strictly between 0 and 1")
    n = len(opts)
    choice = [o[0][0] for o in opts]
    wsel = [dict(o) for o in opts]
    maxers = [u for u in range(n) if maximizing[u] and len(opts[u]) > 1]
    miners = [u for u in range(n) if not maximizing[u] and len(opts[u]) > 1]
    while True:
        while True:
            val = evaluate_profile(choice, [wsel[u][choice[u]] for u in range(n)], lam)
            if not _improve(choice, val, opts, lam, miners, -1):
                break
        if not _improve(choice, val, opts, lam, maxers, +1):
            return val, choice


def solve_discounted(a, lam, weights, maximizing):
    """Policy iteration for the discounted game on ``a`` with edge ``weights``."""
    return policy_iteration(_options(a, weights), lam, maximizing)


def _memoryless(a, choice, player):
    return MealyStrategy.memoryless(
        player, {a.names[u]: a.names[choice[u]] for u in range(a.n) if a.owner[u] == player})


def ds_game_value(a, lam, dim, maximizer, v):
    """Exact discounted-sum game value of ``w_dim`` from ``v``."""
    vi = a.vid(v)
    val, choice = solve_discounted(a, lam, a.weights(dim),
                                   [a.owner[u] == maximizer for u in range(a.n)])
    return ZeroSumResult(val[vi], _memoryless(a, choice, maximizer),
                         _memoryless(a, choice, 1 - maximizer),
                         {a.names[u]: val[u] for u in range(a.n)})


def one_player_optimum(a, lam, weights, sense=+1):
    """Best discounted sum per vertex when one agent controls everything."""
    return solve_discounted(a, lam, weights, [sense > 0] * a.n)


# -- mean payoff ---------------------------------------------------------------------

def _fixed_succ(a, choice, player, vertices=None):
    """Successor map of ``a`` with ``player``'s moves fixed by ``choice``."""
    vs = range(a.n) if vertices is None else vertices
    return {u: ([choice[u]] if a.owner[u] == player else list(a.succ[u])) for u in vs}


def _reach(succ, v):
    seen, stack = {v}, [v]
    while stack:
        u = stack.pop()
        for x in succ[u]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return seen


def _guaranteed_mean(a, choice, player, weights, v, sense):
    """Best mean the opponent of ``player`` reaches from ``v`` against ``choice``.

    ``sense=+1`` returns the maximum reachable cycle mean, ``-1`` the minimum.
    """
    succ = _fixed_succ(a, choice, player)
    reach = _reach(succ, v)
    sub = {u: [x for x in succ[u] if x in reach] for u in reach}

    def w(u, x):
        return sense * weights[a.edge_id[(u, x)]]

    value, _ = sub_max_mean_cycle(sub, w)
    return sense * value


def mp_game_value(a, dim, maximizer, v):
    """Mean-payoff game value of ``w_dim`` from ``v``.

    The discounted game with a discount factor close enough to 1 has
    memoryless optimal strategies that are also optimal for the mean
    payoff; the pair is accepted only after both are certified by exact
    optimal-cycle computations on the graphs they induce.
    """
    vi = a.vid(v)
    weights = a.weights(dim)
    big = 4 * a.n ** 3 * max(a.W, 1)
    maximizing = [a.owner[u] == maximizer for u in range(a.n)]
    for _ in range(8):
        lam = 1 - Fraction(1, 1) / big
        _, choice = solve_discounted(a, lam, weights, maximizing)
        lo = _guaranteed_mean(a, choice, maximizer, weights, vi, -1)
        hi = _guaranteed_mean(a, choice, 1 - maximizer, weights, vi, +1)
        if lo == hi:
            values = {}
            return ZeroSumResult(lo, _memoryless(a, choice, maximizer),
                                 _memoryless(a, choice, 1 - maximizer), values)
        big *= 16
    raise ArenaError("mean-payoff strategies could not be certified")


# -- conjunction game ------------------------------------------------------------------

def enumerate_reachable_strategies(a, v, player=0, cap=None):
    """Memoryless strategies of ``player`` restricted to what they let reach.

    Each yielded dict assigns a successor to every ``player`` vertex
    reachable from ``v`` under that very assignment, so no two yielded
    strategies induce the same play graph from ``v``.
    """
    limit = budget.cap(budget.STRATEGY_CAP) if cap is None else cap
    count = [0]

    def pending(assign):
        seen, order = {v}, [v]
        i = 0
        while i < len(order):
            u = order[i]
            i += 1
            if a.owner[u] == player:
                if u not in assign:
                    return u
                nxt = [assign[u]]
            else:
                nxt = a.succ[u]
            for x in nxt:
                if x not in seen:
                    seen.add(x)
                    order.append(x)
        return None

    def rec(assign):
        u = pending(assign)
        if u is None:
            count[0] += 1
            if count[0] > limit:
                raise BudgetExceeded("memoryless strategies", limit, count[0])
            yield dict(assign)
            return
        for x in a.succ[u]:
            assign[u] = x
            yield from rec(assign)
            del assign[u]

    yield from rec({})


@dataclass(frozen=True)
class SccHull:
    """Cycle data of one strongly connected piece of a strategy graph."""

    component: tuple
    hull: tuple
    cycles: tuple
    means: tuple


@dataclass(frozen=True)
class StrategyGraph:
    choice: dict
    pieces: tuple


def strategy_graphs(a, v, cap=None):
    """For each Player-0 memoryless strategy, the hulls of the reachable SCCs.

    Cached on the arena per start vertex.
    """
    vi = a.vid(v)
    key = ("strategy_graphs", vi)
    if key in a._cache:
        return a._cache[key]
    hull_cache = a._cache.setdefault("scc_hulls", {})
    out = []
    for choice in enumerate_reachable_strategies(a, vi, 0, cap):
        succ = {}
        stack = [vi]
        while stack:
            u = stack.pop()
            if u in succ:
                continue
            succ[u] = [choice[u]] if a.owner[u] == 0 else list(a.succ[u])
            stack.extend(succ[u])
        pieces = []
        for comp in tarjan(succ):
            if not is_nontrivial(comp, succ):
                continue
            members = set(comp)
            edges = frozenset((u, x) for u in comp for x in succ[u] if x in members)
            piece = hull_cache.get(edges)
            if piece is None:
                sub = {u: [x for x in succ[u] if x in members] for u in comp}
                cycles = tuple(sub_simple_cycles(sub))
                means = tuple(cycle_mean(a, c) for c in cycles)
                piece = SccHull(comp, tuple(hull_vertices(means)), cycles, means)
                hull_cache[edges] = piece
            pieces.append(piece)
        out.append(StrategyGraph(choice, tuple(pieces)))
    a._cache[key] = out
    return out


@dataclass
class BadnessCertificate:
    """Outcome of the conjunction game at one vertex.

    If ``verdict`` is True, ``evidence`` lists for every Player-0
    memoryless strategy a reachable SCC and a convex combination of cycle
    means lying in ``{x ≤ c, y ≥ d}``.  Otherwise ``refutation`` is a
    memoryless Player-0 strategy (vertex name → successor name) under
    which no reachable SCC has such a combination.
    """

    verdict: bool
    evidence: list = field(default_factory=list)
    refutation: dict = None


def _combination(piece, c, d):
    """Cycles and weights whose mean mixture lies in ``{x ≤ c, y ≥ d}``."""
    by_point = {}
    for cyc, m in zip(piece.cycles, piece.means):
        by_point.setdefault(m, cyc)
    for p in piece.hull:
        if p[0] <= c and p[1] >= d:
            return [(by_point[p], Fraction(1))]
    for p, q, _ in hull_edges(list(piece.hull)):
        lo, hi = (p, q) if p[0] <= q[0] else (q, p)
        if lo[0] < c < hi[0]:
            t = (c - lo[0]) / (hi[0] - lo[0])
            if lo[1] + (hi[1] - lo[1]) * t >= d:
                return [(by_point[lo], 1 - t), (by_point[hi], t)]
    return None


def conj_player1_wins(a, v, c, d):
    """Can Player 1 force ``MP_0 ≤ c`` and ``MP_1 ≥ d`` from ``v``?"""
    c, d = Fraction(c), Fraction(d)
    evidence = []
    for g in strategy_graphs(a, v):
        hit = None
        for piece in g.pieces:
            if best_y_left_of(piece.hull, c) >= d:
                hit = piece
                break
        if hit is None:
            return BadnessCertificate(False, refutation={
                a.names[u]: a.names[x] for u, x in sorted(g.choice.items())})
        combo = _combination(hit, c, d)
        evidence.append({
            "strategy": {a.names[u]: a.names[x] for u, x in sorted(g.choice.items())},
            "scc": [a.names[u] for u in hit.component],
            "combination": [([a.names[u] for u in cyc], w) for cyc, w in combo],
        })
    return BadnessCertificate(True, evidence=evidence)


def bad_threshold(a, v, c):
    """Largest ``d`` with ``(c, d)`` bad at ``v``, or -inf if there is none."""
    c = Fraction(c)
    worst = None
    for g in strategy_graphs(a, v):
        best = max(best_y_left_of(p.hull, c) for p in g.pieces)
        if worst is None or best < worst:
            worst = best
    return worst


def lambda_cells(a, v):
    """One union of cells per distinct Player-0 strategy graph from ``v``."""
    seen, out = set(), []
    for g in strategy_graphs(a, v):
        key = frozenset(p.hull for p in g.pieces)
        if key in seen:
            continue
        seen.add(key)
        out.append(Region2D([dominated_from_above_cell(list(p.hull)) for p in g.pieces]).simplified())
    return out


def bad_region(a, v):
    """Exact set of thresholds ``(c, d)`` that make ``v`` bad."""
    vi = a.vid(v)
    key = ("bad_region", vi)
    if key not in a._cache:
        parts = lambda_cells(a, vi)
        region = parts[0]
        for part in parts[1:]:
            region = region.intersect(part).simplified()
        a._cache[key] = region
    return a._cache[key]
