"""Brute-force baselines for the solvers.

Everything here is deliberately naive and shares no code with the
solvers beyond the arena model: strategies are enumerated explicitly,
cycles by plain depth-first search and discounted plays by unfolding.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .arena import MealyStrategy
from .errors import BudgetExceeded

INF = float("inf")


@dataclass(frozen=True)
class OracleBudget:
    memory: int = 2
    horizon: int = 8
    strategies: int = 20000
    grid: Fraction = Fraction(1, 4)

    def __post_init__(self):
        if self.memory < 1 or self.horizon < 1 or self.strategies < 1 or self.grid <= 0:
            raise ValueError("oracle budgets must be positive")


@dataclass
class Bracket:
    """``lower ≤ true value ≤ upper``; ``exhausted`` means the strategy
    enumeration hit its cap, so ``lower`` may be weaker than the bound
    the budget could otherwise reach."""

    lower: Fraction
    upper: Fraction
    exhausted: bool = False
    strategies: int = 0
    skipped: int = 0
    extra: dict = field(default_factory=dict)

    def contains(self, x):
        return self.lower <= x <= self.upper


# -- strategies --------------------------------------------------------------------------

def _explore(a, v, update, output):
    """First undefined entry met while exploring from ``v``, or the product.

    Memory starts at 0 and is updated on every vertex, the start included.
    Returns ``("update", key)``, ``("output", key)`` or ``("done", (states, edges))``.
    """
    vi = a.index[v] if isinstance(v, str) else v
    key = (0, vi)
    if key not in update:
        return "update", key
    start = (vi, update[key])
    seen, order, edges = {start}, [start], []
    i = 0
    while i < len(order):
        u, m = order[i]
        i += 1
        if a.owner[u] == 0:
            if (m, u) not in output:
                return "output", (m, u)
            targets = [output[(m, u)]]
        else:
            targets = a.succ[u]
        for x in targets:
            if (m, x) not in update:
                return "update", (m, x)
            nxt = (x, update[(m, x)])
            edges.append(((u, m), nxt, a.edge_id[(u, x)]))
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
    return "done", (order, edges)


def leader_strategies(a, v, memory, cap):
    """Yield ``(update, output, product)`` for every leader strategy with at
    most ``memory`` states, defined only where the play can reach.

    Memory states are numbered in order of first use, so relabelled
    copies of a strategy are produced once.  Stops after ``cap`` strategies.
    """
    count = 0
    stack = [({}, {}, 1)]
    while stack:
        update, output, used = stack.pop()
        kind, info = _explore(a, v, update, output)
        if kind == "done":
            yield update, output, info
            count += 1
            if count >= cap:
                return
            continue
        if kind == "update":
            choices = list(range(min(used + 1, memory)))
            for m in reversed(choices):
                u2 = dict(update)
                u2[info] = m
                stack.append((u2, output, max(used, m + 1)))
        else:
            for x in reversed(a.succ[info[1]]):
                o2 = dict(output)
                o2[info] = x
                stack.append((update, o2, used))


def to_mealy(a, update, output):
    """The enumerated strategy as a :class:`MealyStrategy` over vertex names."""
    mems = sorted({m for m in update.values()} | {k[0] for k in update} | {k[0] for k in output})
    return MealyStrategy(0, mems, 0,
                         {(m, a.names[x]): t for (m, x), t in update.items()},
                         {(m, a.names[u]): a.names[x] for (m, u), x in output.items()})


# -- mean payoff -----------------------------------------------------------------------------

def _cycles(nodes, succ, limit):
    """Simple cycles of length ≤ ``limit`` by depth-first search from each
    node through larger nodes only."""
    pos = {x: i for i, x in enumerate(nodes)}
    out = []
    for s in nodes:
        stack = [(s, [s])]
        while stack:
            u, path = stack.pop()
            for x in succ.get(u, ()):
                if x == s:
                    out.append(path)
                elif pos[x] > pos[s] and x not in path and len(path) < limit:
                    stack.append((x, path + [x]))
    return out


def _cycle_mean(cyc, weight):
    k = len(cyc)
    s0 = sum(weight[(cyc[i], cyc[(i + 1) % k])][0] for i in range(k))
    s1 = sum(weight[(cyc[i], cyc[(i + 1) % k])][1] for i in range(k))
    return Fraction(s0, k), Fraction(s1, k)


def mp_strategy_value(a, states, edges, limit):
    """Adversarial mean-payoff value of a finite-memory leader strategy from
    its product, or ``None`` when a cycle may exceed ``limit``."""
    if len(states) > limit:
        return None
    succ, weight = {}, {}
    for s, t, e in edges:
        succ.setdefault(s, []).append(t)
        weight[(s, t)] = (a.w0[e], a.w1[e])
    means = [_cycle_mean(c, weight) for c in _cycles(states, succ, limit)]
    best = max(y for _, y in means)
    return min(x for x, y in means if y == best)


def _play_mean(a, start, s0, s1):
    """Mean payoffs of the play of two memoryless strategies from ``start``."""
    seen, path, u = {}, [], start
    while u not in seen:
        seen[u] = len(path)
        path.append(u)
        u = s0[u] if a.owner[u] == 0 else s1[u]
    cyc = path[seen[u]:]
    k = len(cyc)
    t0 = t1 = 0
    for i in range(k):
        x = cyc[i]
        e = a.edge_id[(x, cyc[(i + 1) % k])]
        t0 += a.w0[e]
        t1 += a.w1[e]
    return Fraction(t0, k), Fraction(t1, k)


def follower_guarantee(a, cap=10 ** 6):
    """Mean payoff the follower can force from each vertex, by trying every
    pair of memoryless strategies."""
    choices = [a.succ[u] if a.owner[u] == 1 else (None,) for u in range(a.n)]
    leader = [a.succ[u] if a.owner[u] == 0 else (None,) for u in range(a.n)]
    size = 1
    for u in range(a.n):
        size *= len(a.succ[u])
    if size > cap:
        raise BudgetExceeded("memoryless strategy pairs", cap, size)
    l_profiles = list(product(*leader))
    val = [None] * a.n
    for f in product(*choices):
        for u in range(a.n):
            worst = min(_play_mean(a, u, p, f)[1] for p in l_profiles)
            if val[u] is None or worst > val[u]:
                val[u] = worst
    return val


def _reach(a, sources, allowed):
    seen = {s for s in sources if s in allowed}
    stack = list(seen)
    while stack:
        u = stack.pop()
        for x in a.succ[u]:
            if x in allowed and x not in seen:
                seen.add(x)
                stack.append(x)
    return seen


def _segment_max(p, q, d):
    """Largest first coordinate on segment ``pq`` with second coordinate ≥ ``d``."""
    best = None
    for t in (Fraction(0), Fraction(1)):
        pt = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
        if pt[1] >= d:
            best = pt[0] if best is None else max(best, pt[0])
    if p[1] != q[1]:
        t = (d - p[1]) / (q[1] - p[1])
        if 0 <= t <= 1:
            x = p[0] + t * (q[0] - p[0])
            best = x if best is None else max(best, x)
    return best


def mp_upper_bound(a, v, cap=10 ** 6):
    """Upper bound on the adversarial value from ``v``.

    Any best response visits its vertices only if it earns at least what
    the follower can force from each of them, and its payoff lies between
    two cycle means of one strongly connected part.  The bound maximizes
    the leader's coordinate over such segments, charging only the
    cheapest path from ``v`` and the two cycles.
    """
    vi = a.index[v] if isinstance(v, str) else v
    guard = follower_guarantee(a, cap)
    nodes = list(range(a.n))
    succ = {u: list(a.succ[u]) for u in nodes}
    cycles = _cycles(nodes, succ, a.n)
    if len(cycles) > cap:
        raise BudgetExceeded("simple cycles", cap, len(cycles))
    weight = {(a.edges[e][0], a.edges[e][1]): (a.w0[e], a.w1[e]) for e in range(len(a.edges))}
    means = [_cycle_mean(c, weight) for c in cycles]
    reach_from = {u: _reach(a, [u], set(nodes)) for u in nodes}
    levels = sorted(set(guard))
    entry = {}
    for lvl in levels:
        if guard[vi] > lvl:
            continue
        inside = _reach(a, [vi], {u for u in nodes if guard[u] <= lvl})
        for u in inside:
            entry.setdefault(u, lvl)
    best = -INF
    for i, c1 in enumerate(cycles):
        for j in range(i, len(cycles)):
            c2 = cycles[j]
            if c2[0] not in reach_from[c1[0]] or c1[0] not in reach_from[c2[0]]:
                continue
            costs = [entry[u] for u in c1 + c2 if u in entry]
            if not costs:
                continue
            d = max([min(costs)] + [guard[u] for u in c1 + c2])
            x = _segment_max(means[i], means[j], d)
            if x is not None and x > best:
                best = x
    return best


def brute_asv_mp(a, v, budget=OracleBudget()):
    """Bracket for the adversarial mean-payoff value from ``v``.

    The lower end is the best value over leader strategies with at most
    ``budget.memory`` states whose product has at most ``budget.horizon``
    vertices (larger products are skipped and counted).  The upper end
    is :func:`mp_upper_bound`.
    """
    lower, count, skipped = -INF, 0, 0
    for update, output, (states, edges) in leader_strategies(a, v, budget.memory, budget.strategies):
        count += 1
        val = mp_strategy_value(a, states, edges, budget.horizon)
        if val is None:
            skipped += 1
        elif val > lower:
            lower = val
    upper = mp_upper_bound(a, v)
    return Bracket(lower, upper, count >= budget.strategies, count, skipped)


# -- discounted sum ------------------------------------------------------------------------

def _tail_weights(a, states, edges):
    """Largest absolute weight per dimension reachable from each product state."""
    succ, out = {}, {}
    for s, t, e in edges:
        succ.setdefault(s, []).append((t, e))
    for s in states:
        seen, stack, m0, m1 = {s}, [s], 0, 0
        while stack:
            u = stack.pop()
            for t, e in succ.get(u, ()):
                m0 = max(m0, abs(a.w0[e]))
                m1 = max(m1, abs(a.w1[e]))
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        out[s] = (m0, m1)
    return succ, out


def ds_strategy_bracket(a, lam, states, edges, K, mode):
    """Brackets of the leader's and the follower's values for one strategy.

    Unfolds all product paths of ``K`` edges.  A path is a possible best
    response unless its best completion is beaten by some other path's
    worst completion.
    """
    lam = Fraction(lam)
    succ, tails = _tail_weights(a, states, edges)
    layer = [(states[0], Fraction(0), Fraction(0))]
    f = Fraction(1)
    for _ in range(K):
        nxt = []
        for u, p0, p1 in layer:
            for t, e in succ[u]:
                nxt.append((t, p0 + f * a.w0[e], p1 + f * a.w1[e]))
        layer = nxt
        f *= lam
    scale = f / (1 - lam)
    rows = [(p0, p1, scale * tails[u][0], scale * tails[u][1]) for u, p0, p1 in layer]
    floor = max(p1 - b1 for _, p1, _, b1 in rows)
    cands = [(p0, b0) for p0, p1, b0, b1 in rows if p1 + b1 >= floor]
    lo = min(p0 - b0 for p0, b0 in cands)
    hi = max(p0 + b0 for p0, b0 in cands)
    follower = (floor, max(p1 + b1 for _, p1, _, b1 in rows))
    return (lo, hi), follower


def brute_ds_value(a, lam, v, budget=OracleBudget(), mode="csv", strategies=None):
    """Bracket for the best cooperative or adversarial discounted value over
    leader strategies with at most ``budget.memory`` states, unfolded to
    ``budget.horizon`` steps.

    ``strategies`` may restrict the search to given ``(update, output)``
    pairs.  ``extra["follower"]`` brackets the follower's optimum under the
    best strategy found.
    """
    if mode not in ("csv", "asv"):
        raise ValueError("mode must be 'csv' or 'asv'")
    lower, upper, count = -INF, -INF, 0
    follower = None
    source = strategies if strategies is not None else (
        (u, o) for u, o, _ in leader_strategies(a, v, budget.memory, budget.strategies))
    for update, output in source:
        kind, info = _explore(a, v, update, output)
        if kind != "done":
            raise ValueError("strategy is undefined on a reachable history")
        count += 1
        (lo, hi), fol = ds_strategy_bracket(a, lam, info[0], info[1], budget.horizon, mode)
        if lo > lower:
            lower, follower = lo, fol
        upper = max(upper, hi)
    return Bracket(lower, upper, strategies is None and count >= budget.strategies, count,
                   extra={"follower": follower})


def memoryless_choice(a, choice):
    """``(update, output)`` of a memoryless strategy given by vertex names."""
    update = {(0, x): 0 for x in range(a.n)}
    output = {(0, a.index[u]): a.index[x] for u, x in choice.items()}
    return update, output


# -- bisection -----------------------------------------------------------------------------

def grid_bisect(above, lo, hi, pitch=OracleBudget().grid):
    """Shrink ``[lo, hi]`` around the value ``x`` of a monotone test.

    ``above(c)`` must answer ``x > c``; the returned pair keeps
    ``lo ≤ x ≤ hi`` (given it held initially) and ``hi - lo ≤ pitch``.
    """
    lo, hi, pitch = Fraction(lo), Fraction(hi), Fraction(pitch)
    while hi - lo > pitch:
        mid = (lo + hi) / 2
        if above(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


# -- the no-best-response family --------------------------------------------------------------

def fig1_no_br_probe(k):
    """Follower payoffs of looping ``k`` and ``k + 1`` times at vertex 1 of
    the three-vertex gadget, against the leader who answers ``j`` loops with
    ``c^j d`` repeated forever.

    Plays are simulated step by step until the (vertex, phase) state
    repeats; the payoff is the mean weight of the repeating part.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    # vertex 2: c -> 3 pays 2, d -> 2 pays 1; vertex 3: c -> 3 pays 2, d -> 2 pays 1
    move = {("2", "c"): ("3", 2), ("2", "d"): ("2", 1), ("3", "c"): ("3", 2), ("3", "d"): ("2", 1)}

    def run(j):
        vertex, phase, seen, trace = "2", 0, {}, []
        while (vertex, phase) not in seen:
            seen[(vertex, phase)] = len(trace)
            action = "c" if phase < j else "d"
            vertex, w = move[(vertex, action)]
            trace.append(w)
            phase = (phase + 1) % (j + 1)
        loop = trace[seen[(vertex, phase)]:]
        return Fraction(sum(loop), len(loop))

    return run(k), run(k + 1)
