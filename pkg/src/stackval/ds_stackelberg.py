"""Stackelberg values of discounted-sum games.

Leader strategies are finite Mealy machines.  Against such a strategy the
follower faces a one-player discounted problem on the product arena; its
optimal plays are exactly the plays using only value-consistent edges,
so cooperative and adversarial values are one more one-player
optimization on the pruned product.
"""

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import budget
from .arena import MealyStrategy, product_with_strategy, start_in_product
from .errors import BudgetExceeded
from .rationals import format_rational
from .zerosum import ds_game_value, policy_iteration


def _check_discount(lam):
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise ValueError("discount factor must lie strictly between 0 and 1")
    return lam


def follower_values(g, lam):
    """Optimal discounted ``w_1`` per vertex of ``g`` and an optimal choice,
    all choices being the follower's (leader moves are forced in ``g``)."""
    opts = [[(x, g.w1[k]) for x, k in zip(g.succ[u], g.out_edges[u])] for u in range(g.n)]
    return policy_iteration(opts, lam, [True] * g.n)


def optimal_edges(g, lam, val1):
    """Successor lists keeping only edges consistent with ``val1``."""
    return [[x for x, k in zip(g.succ[u], g.out_edges[u]) if val1[u] == g.w1[k] + lam * val1[x]]
            for u in range(g.n)]


def leader_values(g, lam, kept, mode):
    """Best (csv) or worst (asv) discounted ``w_0`` over the kept edges."""
    opts = [[(x, g.w0[g.edge_id[(u, x)]]) for x in kept[u]] for u in range(g.n)]
    return policy_iteration(opts, lam, [mode == "csv"] * g.n)


def ds_best_response(a, lam, s, v):
    """Follower's optimal discounted payoff against ``s`` and a response.

    The response tracks the leader's memory and is memoryless on the
    product, so it is returned as a Player-1 Mealy machine.
    """
    lam = _check_discount(lam)
    prod = product_with_strategy(a, s, 0)
    start = start_in_product(prod, s, a.names[a.vid(v)])
    val1, choice = follower_values(prod, lam)
    output = {}
    for u in range(prod.n):
        name, m = prod.origin[u]
        if a.owner[a.index[name]] == 1:
            output[(m, name)] = prod.origin[choice[u]][0]
    response = MealyStrategy(1, s.memory, s.initial, s.update, output)
    return val1[start], response


def _evaluate(a, lam, s, v, mode):
    lam = _check_discount(lam)
    prod = product_with_strategy(a, s, 0)
    start = start_in_product(prod, s, a.names[a.vid(v)])
    val1, _ = follower_values(prod, lam)
    kept = optimal_edges(prod, lam, val1)
    val0, _ = leader_values(prod, lam, kept, mode)
    return val0[start]


def evaluate_csv(a, lam, s, v):
    """Leader payoff when the follower picks the best optimal response for her."""
    return _evaluate(a, lam, s, v, "csv")


def evaluate_asv(a, lam, s, v):
    """Leader payoff when the follower picks the worst optimal response for her."""
    return _evaluate(a, lam, s, v, "asv")


# -- horizon ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HorizonParams:
    epsilon: Fraction
    N: int
    memory_bound: int


def compute_horizon(W, lam, eps, branching=2):
    """Smallest ``N`` with ``lam^N · W / (1 - lam) < eps / 2``.

    ``memory_bound`` counts the nodes of a complete ``branching``-ary
    history tree of depth ``N`` plus two tail states.
    """
    lam, eps, W = _check_discount(lam), Fraction(eps), Fraction(W)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    N = 0
    bound = W / (1 - lam)
    while bound >= eps / 2:
        bound *= lam
        N += 1
    if branching <= 1:
        nodes = N + 1
    else:
        nodes = (branching ** (N + 1) - 1) // (branching - 1)
    return HorizonParams(eps, N, nodes + 2)


# -- gap decision ----------------------------------------------------------------------------

@dataclass
class GapVerdict:
    """Answer of the gap decider.

    ``value`` is the best leader value among the candidate strategies and
    ``strategy`` the candidate achieving it; ``witness`` is set only for
    a Yes answer.  ``candidates`` counts the strategies of the searched
    shape and ``options`` the distinct outcome pairs actually processed.
    """

    answer: bool
    witness: MealyStrategy
    best_response_value: Fraction
    value: Fraction
    strategy: MealyStrategy
    horizon: HorizonParams
    candidates: int = 0
    options: int = 0
    mode: str = "csv"
    extra: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "answer": "Yes" if self.answer else "No",
            "mode": self.mode,
            "value": format_rational(self.value),
            "best_response_value": format_rational(self.best_response_value),
            "horizon": self.horizon.N,
            "memory_bound": self.horizon.memory_bound,
            "candidates": self.candidates,
            "options": self.options,
            "witness": self.witness.to_json() if self.witness else None,
            "strategy": self.strategy.to_json(),
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _tail(a, lam, choice0, mode):
    """Follower value and leader value (per ``mode``) once the leader plays
    the memoryless ``choice0`` forever."""
    s = MealyStrategy.memoryless(0, {a.names[u]: a.names[choice0[u]]
                                     for u in range(a.n) if a.owner[u] == 0})
    prod = product_with_strategy(a, s, 0)
    val1, _ = follower_values(prod, lam)
    kept = optimal_edges(prod, lam, val1)
    val0, _ = leader_values(prod, lam, kept, mode)
    return s, [val1[prod.index[n]] for n in a.names], [val0[prod.index[n]] for n in a.names]


def _prune(options):
    """Per follower value keep the option with the largest leader value."""
    best = {}
    for opt in options:
        cur = best.get(opt[0])
        if cur is None or opt[1] > cur[1]:
            best[opt[0]] = opt
    return sorted(best.values(), key=lambda o: (o[0], o[1]))


def gap_decide(a, lam, v, c, eps, mode="csv", cap=None):
    """Gap decision for the cooperative or adversarial discounted value.

    Candidates follow an arbitrary choice function on histories of length
    below the horizon ``N`` and then, per history of length ``N``, one of
    two memoryless tails: the one maximizing the follower's payoff
    cooperatively, or the one minimizing it adversarially.  Rather than
    scoring candidates one at a time, the search propagates, for each
    (vertex, remaining depth), the set of reachable (follower value,
    leader value) pairs; pairs with the same follower value are reduced to
    the best leader value, which never changes the answer at the root.
    Answers Yes iff some candidate has leader value above ``c``.
    """
    if mode not in ("csv", "asv"):
        raise ValueError("mode must be 'csv' or 'asv'")
    lam, c, eps = _check_discount(lam), Fraction(c), Fraction(eps)
    limit = budget.cap(budget.OPTION_CAP) if cap is None else cap
    vi = a.vid(v)
    horizon = compute_horizon(a.W, lam, eps, branching=max(len(s) for s in a.succ))
    N = horizon.N

    coop = policy_iteration([[(x, a.w1[k]) for x, k in zip(a.succ[u], a.out_edges[u])]
                             for u in range(a.n)], lam, [True] * a.n)[1]
    punish_res = ds_game_value(a, lam, 1, 1, vi)
    punish = list(coop)
    for u in range(a.n):
        if a.owner[u] == 0:
            punish[u] = a.index[punish_res.optimal_strategy_min.move(0, a.names[u])]
    tails = {}
    for label, choice in (("max", coop), ("min", punish)):
        tails[label] = _tail(a, lam, choice, mode)

    # (vertex, remaining depth) pairs reachable from (v, N)
    needed = [set() for _ in range(N + 1)]
    needed[N].add(vi)
    for k in range(N, 0, -1):
        for u in needed[k]:
            needed[k - 1].update(a.succ[u])

    table = {}
    counts = {}
    total = 0
    for k in range(N + 1):
        for u in sorted(needed[k]):
            if k == 0:
                opts = [(tails[t][1][u], tails[t][2][u], ("tail", t)) for t in ("max", "min")]
                opts = _prune(opts)
                counts[(u, 0)] = len(opts)
            elif a.owner[u] == 0:
                opts = []
                for x, e in zip(a.succ[u], a.out_edges[u]):
                    for idx, (f1, f0, _) in enumerate(table[(x, k - 1)]):
                        opts.append((a.w1[e] + lam * f1, a.w0[e] + lam * f0, ("move", x, idx)))
                opts = _prune(opts)
                counts[(u, k)] = sum(counts[(x, k - 1)] for x in a.succ[u])
            else:
                opts = _prune(_follower_node(a, lam, u, k, table, mode))
                prod = 1
                for x in a.succ[u]:
                    prod *= counts[(x, k - 1)]
                counts[(u, k)] = prod
            table[(u, k)] = opts
            total += len(opts)
            if total > limit:
                raise BudgetExceeded("gap outcome pairs", limit, total)

    root = table[(vi, N)]
    best_idx = max(range(len(root)), key=lambda i: (root[i][1], -i))
    f1, f0, _ = root[best_idx]
    strategy = _realize(a, vi, N, best_idx, table, tails)
    check = evaluate_csv(a, lam, strategy, vi) if mode == "csv" else evaluate_asv(a, lam, strategy, vi)
    if check != f0:
        raise AssertionError("candidate re-evaluation disagrees with the search")
    answer = f0 > c
    return GapVerdict(answer, strategy if answer else None, f1, f0, strategy, horizon,
                      counts[(vi, N)], total, mode)


def _follower_node(a, lam, u, k, table, mode):
    """Outcome pairs at a follower vertex, one per candidate maximum."""
    children = []
    for x, e in zip(a.succ[u], a.out_edges[u]):
        shifted = [(a.w1[e] + lam * f1, a.w0[e] + lam * f0, idx)
                   for idx, (f1, f0, _) in enumerate(table[(x, k - 1)])]
        children.append((x, shifted))
    levels = sorted({o[0] for _, sh in children for o in sh})
    out = []
    for m in levels:
        configs = []
        below = []
        for x, sh in children:
            low = [o for o in sh if o[0] < m]
            at = [o for o in sh if o[0] == m]
            below.append((min(low, key=lambda o: (o[0], -o[1])) if low else None,
                          max(at, key=lambda o: o[1]) if at else None))
        if any(lo is None and hit is None for lo, hit in below):
            continue
        if mode == "asv":
            forced = [i for i, (lo, _) in enumerate(below) if lo is None]
            if forced:
                configs.append([hit if i in forced else lo for i, (lo, hit) in enumerate(below)])
            else:
                for j, (_, hit) in enumerate(below):
                    if hit is not None:
                        configs.append([hit if i == j else lo for i, (lo, _) in enumerate(below)])
        else:
            for j, (_, hit) in enumerate(below):
                if hit is not None:
                    configs.append([hit if i == j else (lo if lo is not None else h2)
                                    for i, (lo, h2) in enumerate(below)])
        for conf in configs:
            top = max(o[0] for o in conf)
            vals = [o[1] for o in conf if o[0] == top]
            f0 = max(vals) if mode == "csv" else min(vals)
            out.append((top, f0, ("follower", tuple(o[2] for o in conf))))
    return out


def _realize(a, vi, N, root_idx, table, tails):
    """Mealy machine over history-tree nodes for the chosen root option."""
    update, output = {}, {}
    memory = ["start", "tail_max", "tail_min"]
    for u in range(a.n):
        if a.owner[u] == 0:
            for t in ("max", "min"):
                output[(f"tail_{t}", a.names[u])] = tails[t][0].move(0, a.names[u])
    counter = [0]

    def node(u, k, idx):
        """Memory state for being at ``u`` with ``k`` steps to go."""
        opt = table[(u, k)][idx]
        if k == 0:
            return f"tail_{opt[2][1]}"
        mid = counter[0]
        counter[0] += 1
        memory.append(mid)
        back = opt[2]
        name = a.names[u]
        if back[0] == "move":
            x, cidx = back[1], back[2]
            output[(mid, name)] = a.names[x]
            update[(mid, a.names[x])] = node(x, k - 1, cidx)
        else:
            for x, cidx in zip(a.succ[u], back[1]):
                update[(mid, a.names[x])] = node(x, k - 1, cidx)
        return mid

    stack_limit = 10000
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * N + stack_limit))
    try:
        root = node(vi, N, root_idx)
    finally:
        sys.setrecursionlimit(old)
    update[("start", a.names[vi])] = root
    for u in range(a.n):
        if u != vi:
            update[("start", a.names[u])] = "tail_min"
    return MealyStrategy(0, memory, "start", update, output)
