"""SCCs, simple cycles, optimal cycle means and lasso payoffs.

The helpers prefixed with an underscore-free ``sub`` name work on an
explicit successor map ``{vertex id: iterable of ids}`` so they can run on
subgraphs induced by strategies without building new arenas.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from . import budget
from .arena import Lasso
from .errors import ArenaError, BudgetExceeded


def restrict(a, scope):
    """Successor map of the subgraph of ``a`` induced by ``scope`` (ids)."""
    scope = set(scope)
    return {u: [x for x in a.succ[u] if x in scope] for u in sorted(scope)}


def tarjan(succ):
    """Strongly connected components of a successor map.

    Components come out sorted internally and ordered by smallest member,
    independent of dict iteration order.
    """
    index, low, on_stack = {}, {}, set()
    stack, comps = [], []
    counter = 0
    for root in sorted(succ):
        if root in index:
            continue
        work = [(root, iter(sorted(succ[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            u, it = work[-1]
            advanced = False
            for x in it:
                if x not in succ:
                    continue
                if x not in index:
                    index[x] = low[x] = counter
                    counter += 1
                    stack.append(x)
                    on_stack.add(x)
                    work.append((x, iter(sorted(succ[x]))))
                    advanced = True
                    break
                if x in on_stack:
                    low[u] = min(low[u], index[x])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])
            if low[u] == index[u]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == u:
                        break
                comps.append(tuple(sorted(comp)))
    comps.sort()
    return comps


def is_nontrivial(comp, succ):
    """True if the component carries at least one cycle."""
    return len(comp) > 1 or comp[0] in succ[comp[0]]


@dataclass(frozen=True)
class SccDecomposition:
    components: tuple
    component_of: dict
    condensation: frozenset

    def nontrivial(self, a):
        return [c for c in self.components if len(c) > 1 or a.has_edge(c[0], c[0])]


def scc_decompose(a, succ=None):
    """Tarjan decomposition of ``a`` (or of the subgraph given by ``succ``)."""
    succ = {u: a.succ[u] for u in range(a.n)} if succ is None else succ
    comps = tarjan(succ)
    comp_of = {u: i for i, c in enumerate(comps) for u in c}
    cond = frozenset((comp_of[u], comp_of[x]) for u in succ for x in succ[u]
                     if x in comp_of and comp_of[u] != comp_of[x])
    return SccDecomposition(tuple(comps), comp_of, cond)


# -- cycles --------------------------------------------------------------------

def canonical_rotation(cycle):
    k = cycle.index(min(cycle))
    return tuple(cycle[k:]) + tuple(cycle[:k])


def sub_simple_cycles(succ, cap=None):
    """All simple cycles of a successor map, canonical and sorted."""
    limit = budget.cap(budget.CYCLE_CAP) if cap is None else cap
    g = nx.DiGraph()
    g.add_nodes_from(succ)
    g.add_edges_from((u, x) for u in succ for x in succ[u] if x in succ)
    out = []
    for cyc in nx.simple_cycles(g):
        if len(out) >= limit:
            raise BudgetExceeded("simple cycles", limit, len(out) + 1)
        out.append(canonical_rotation(cyc))
    out.sort()
    return out


def cycle_mean(a, cycle):
    """Mean weight pair of a cycle given as vertex ids."""
    s0 = s1 = 0
    k = len(cycle)
    for i, u in enumerate(cycle):
        e = a.edge_id[(u, cycle[(i + 1) % k])]
        s0 += a.w0[e]
        s1 += a.w1[e]
    return (Fraction(s0) / k, Fraction(s1) / k)


@dataclass(frozen=True)
class CycleList:
    """Simple cycles (vertex names) with their mean-payoff points."""

    cycles: tuple
    mean_points: tuple
    ids: tuple

    def __len__(self):
        return len(self.cycles)


def enumerate_simple_cycles(a, scope, cap=None):
    ids = sorted(a.vid(v) for v in scope)
    cycles = sub_simple_cycles(restrict(a, ids), cap)
    return CycleList(tuple(tuple(a.names[u] for u in c) for c in cycles),
                     tuple(cycle_mean(a, c) for c in cycles), tuple(cycles))


# -- optimal cycle means -------------------------------------------------------

def _karp_component(comp, succ, w):
    """Maximum cycle mean inside one strongly connected component."""
    k = len(comp)
    members = set(comp)
    preds = {v: [] for v in comp}
    for u in comp:
        for x in succ[u]:
            if x in members:
                preds[x].append(u)
    src = comp[0]
    table = [{src: Fraction(0)}]
    for _ in range(k):
        prev, cur = table[-1], {}
        for v in comp:
            best = None
            for u in preds[v]:
                if u in prev:
                    cand = prev[u] + w(u, v)
                    if best is None or cand > best:
                        best = cand
            if best is not None:
                cur[v] = best
        table.append(cur)
    value = None
    for v, dk in table[k].items():
        worst = None
        for j in range(k):
            if v in table[j]:
                q = (dk - table[j][v]) / (k - j)
                if worst is None or q < worst:
                    worst = q
        if worst is not None and (value is None or worst > value):
            value = worst
    return value


def _tight_cycle(comp, succ, w, value):
    """A cycle of mean ``value``, found among potential-tight edges."""
    members = set(comp)
    pot = {v: Fraction(0) for v in comp}
    for _ in range(len(comp)):
        changed = False
        for u in comp:
            for x in succ[u]:
                if x in members:
                    cand = pot[u] + w(u, x) - value
                    if cand > pot[x]:
                        pot[x] = cand
                        changed = True
        if not changed:
            break
    tight = {u: [x for x in sorted(succ[u]) if x in members and pot[u] + w(u, x) - value == pot[x]]
             for u in comp}
    cyc = find_cycle(tight)
    if cyc is None:
        raise ArenaError("internal error: no tight cycle at the optimal mean")
    return cyc


def find_cycle(succ):
    """Some simple cycle of a successor map (deterministic), or None."""
    color = {}
    for root in sorted(succ):
        if root in color:
            continue
        path, pos = [root], {root: 0}
        color[root] = 1
        iters = [iter(succ[root])]
        while iters:
            advanced = False
            for x in iters[-1]:
                if x not in succ:
                    continue
                if color.get(x) == 1:
                    return canonical_rotation(path[pos[x]:])
                if x not in color:
                    color[x] = 1
                    pos[x] = len(path)
                    path.append(x)
                    iters.append(iter(succ[x]))
                    advanced = True
                    break
            if not advanced:
                u = path.pop()
                del pos[u]
                color[u] = 2
                iters.pop()
    return None


def sub_max_mean_cycle(succ, w, components=None):
    """(value, cycle ids) maximizing the mean of ``w`` over ``succ``.

    Returns ``(None, None)`` if the subgraph is acyclic.
    """
    comps = tarjan(succ) if components is None else components
    best, best_cycle = None, None
    for comp in comps:
        if not is_nontrivial(comp, succ):
            continue
        value = _karp_component(comp, succ, w)
        if best is None or value > best:
            best, best_cycle = value, _tight_cycle(comp, succ, w, value)
    return best, best_cycle


def max_mean_cycle(a, dim, scope=None, minimize=False):
    """Best cycle mean in dimension ``dim`` inside ``scope``.

    Returns the value and a realizing cycle as a lasso with empty prefix.
    With ``minimize`` the minimum cycle mean is computed instead.
    """
    ids = range(a.n) if scope is None else sorted(a.vid(v) for v in scope)
    succ = restrict(a, ids)
    ws = a.weights(dim)
    sign = -1 if minimize else 1

    def w(u, x):
        return sign * ws[a.edge_id[(u, x)]]

    value, cyc = sub_max_mean_cycle(succ, w)
    if value is None:
        raise ArenaError("scope contains no cycle")
    return sign * value, Lasso((), tuple(a.names[u] for u in cyc))


# -- payoffs --------------------------------------------------------------------

def payoff_of_lasso(a, lasso, kind="mp", discount=None):
    """Exact (player 0, player 1) payoff of ``prefix · cycle^ω``.

    ``kind`` is ``"mp"`` (cycle average) or ``"ds"`` with ``discount``
    strictly between 0 and 1.
    """
    lasso.validate(a)
    pre, cyc = lasso.edges()
    if kind == "mp":
        s0 = sum((a.weight(a.index[u], a.index[v], 0) for u, v in cyc), Fraction(0))
        s1 = sum((a.weight(a.index[u], a.index[v], 1) for u, v in cyc), Fraction(0))
        return s0 / len(cyc), s1 / len(cyc)
    if kind != "ds":
        raise ValueError(f"unknown payoff kind {kind!r}")
    lam = Fraction(discount)
    if not 0 < lam < 1:
        raise ValueError("discount factor must lie strictly between 0 and 1")
    out = []
    for dim in (0, 1):
        head = sum((lam ** i * a.weight(a.index[u], a.index[v], dim)
                    for i, (u, v) in enumerate(pre)), Fraction(0))
        loop = sum((lam ** i * a.weight(a.index[u], a.index[v], dim)
                    for i, (u, v) in enumerate(cyc)), Fraction(0))
        out.append(head + lam ** len(pre) * loop / (1 - lam ** len(cyc)))
    return tuple(out)


def shortest_path(succ, src, dst):
    """Vertex list of a BFS-shortest path ``src → dst`` in ``succ``, or None."""
    if src == dst:
        return [src]
    parent = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for x in sorted(succ.get(u, ())):
            if x in succ and x not in parent:
                parent[x] = u
                if x == dst:
                    path = [x]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(x)
    return None


def reachable_in(succ, start):
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for x in succ[u]:
            if x in succ and x not in seen:
                seen.add(x)
                queue.append(x)
    return seen
