"""Adversarial Stackelberg values of mean-payoff games.

The central objects are the bad-threshold regions ``Λ(v)`` (pairs
``(c, d)`` from which Player 1 can force ``MP_0 ≤ c`` and ``MP_1 ≥ d``)
and witnesses: plays whose payoff ``(c', d)`` has ``c' > c`` and that
never visit a ``(c, d)``-bad vertex.  A witness from ``v`` exists exactly
when the adversarial value at ``v`` exceeds ``c``.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .arena import Lasso, build_extended, product_with_strategy, start_in_product
from .errors import ArenaError
from .geometry import (INF, Region2D, convex_hull, f_min_region, hull_vertices,
                       solve_interval, strictly_left_below_cell)
from .graphs import (cycle_mean, enumerate_simple_cycles, is_nontrivial, payoff_of_lasso,
                     restrict, shortest_path, sub_max_mean_cycle, sub_simple_cycles, tarjan)
from .rationals import format_rational, parse_rational
from .zerosum import bad_region, bad_threshold, conj_player1_wins


@dataclass(frozen=True)
class PayoffRegion:
    scc: tuple
    region: Region2D


@dataclass(frozen=True)
class ThresholdRegion:
    vertex: str
    region: Region2D

    def contains(self, c, d):
        return self.region.contains((c, d))


def phi_region(a, scc):
    """Mean-payoff pairs achievable by plays that stay in ``scc``."""
    cycles = enumerate_simple_cycles(a, scc)
    if not cycles.cycles:
        raise ArenaError("scope carries no cycle")
    region = f_min_region(convex_hull(list(cycles.mean_points)))
    return PayoffRegion(tuple(a.names[a.vid(u)] for u in scc), region)


def lambda_region(a, v):
    """Exact region of thresholds ``(c, d)`` for which ``v`` is bad."""
    vi = a.vid(v)
    return ThresholdRegion(a.names[vi], bad_region(a, vi))


def check_witness(a, v, lasso, c):
    """Is ``lasso`` (starting at ``v``) a witness for ``ASV(v) > c``?

    Returns ``(accepted, (c', d))`` where ``(c', d)`` is the lasso payoff.
    """
    c = Fraction(c)
    if lasso.start != a.names[a.vid(v)]:
        raise ArenaError("lasso does not start at the queried vertex")
    cp, d = payoff_of_lasso(a, lasso, "mp")
    if cp <= c:
        return False, (cp, d)
    for u in sorted(lasso.vertices(), key=a.vid):
        if conj_player1_wins(a, u, c, d).verdict:
            return False, (cp, d)
    return True, (cp, d)


# -- certificates ---------------------------------------------------------------------

@dataclass
class WitnessCertificate:
    """Two-cycle witness for ``ASV(vertex) > c``.

    Paths are vertex-name lists including both endpoints: ``path`` leads
    from ``vertex`` to ``cycle1[0]``, ``conn12`` from ``cycle1[0]`` to
    ``cycle2[0]`` and ``conn21`` back.  ``refutations`` maps every vertex
    on these to a memoryless Player-0 strategy showing it is not
    ``(c, d)``-bad.
    """

    vertex: str
    c: Fraction
    scc: list
    path: list
    cycle1: list
    cycle2: list
    conn12: list
    conn21: list
    alpha: Fraction
    beta: Fraction
    c_prime: Fraction
    d: Fraction
    refutations: dict = field(default_factory=dict)

    def vertices(self):
        seen = []
        for part in (self.path, self.cycle1, self.conn12, self.cycle2, self.conn21):
            for u in part:
                if u not in seen:
                    seen.append(u)
        return seen

    def repetitions(self):
        """Integers (A, B): repeat counts of the two cycles per block unit.

        ``A·|cycle1| : B·|cycle2| = alpha : beta`` holds exactly, so the
        cycle part of each block has mean ``(c', d)``.
        """
        if self.beta == 0:
            return 1, 0
        if self.alpha == 0:
            return 0, 1
        r = (self.alpha / len(self.cycle1)) / (self.beta / len(self.cycle2))
        return r.numerator, r.denominator

    def block(self, i):
        A, B = self.repetitions()
        return (list(self.cycle1) * (i * A) + list(self.conn12[:-1])
                + list(self.cycle2) * (i * B) + list(self.conn21[:-1]))

    def induced_lasso(self, k=1):
        """``path · block(k)^ω`` as a lasso."""
        return Lasso(self.path[:-1], self.block(k))

    def size(self):
        """Number of entries: path and cycle vertices plus strategy moves."""
        return (len(self.path) + len(self.cycle1) + len(self.cycle2) + len(self.conn12)
                + len(self.conn21) + sum(len(s) + 1 for s in self.refutations.values()))

    def to_json(self):
        r = format_rational
        return {
            "vertex": self.vertex, "c": r(self.c), "scc": list(self.scc),
            "path": list(self.path), "cycle1": list(self.cycle1), "cycle2": list(self.cycle2),
            "conn12": list(self.conn12), "conn21": list(self.conn21),
            "alpha": r(self.alpha), "beta": r(self.beta),
            "c_prime": r(self.c_prime), "d": r(self.d),
            "refutations": {u: dict(s) for u, s in self.refutations.items()},
        }

    @classmethod
    def from_json(cls, obj):
        q = parse_rational
        return cls(obj["vertex"], q(obj["c"]), list(obj["scc"]), list(obj["path"]),
                   list(obj["cycle1"]), list(obj["cycle2"]), list(obj["conn12"]),
                   list(obj["conn21"]), q(obj["alpha"]), q(obj["beta"]),
                   q(obj["c_prime"]), q(obj["d"]),
                   {u: dict(s) for u, s in obj.get("refutations", {}).items()})

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _mixing_weight(p, q, c, tau):
    """Some ``α ∈ [0,1]`` with ``α·p + (1-α)·q > (c, tau)``, or None."""
    rows = [(p[0] - q[0], c - q[0], True), (Fraction(1), Fraction(0), False),
            (Fraction(-1), Fraction(-1), False)]
    if tau != -INF:
        rows.append((p[1] - q[1], tau - q[1], True))
    rng = solve_interval(rows)
    if rng is None:
        return None
    lo, _, hi, _ = rng
    if p == q:
        return Fraction(1)
    return lo if lo == hi else (lo + hi) / 2


def _cycles_of(a, comp, succ, cache):
    members = set(comp)
    key = frozenset((u, x) for u in comp for x in succ[u] if x in members)
    if key not in cache:
        sub = {u: [x for x in succ[u] if x in members] for u in comp}
        cycles = sub_simple_cycles(sub)
        cache[key] = (cycles, [cycle_mean(a, cyc) for cyc in cycles])
    return cache[key]


def asv_threshold(a, v, c):
    """Decide ``ASV(v) > c``; on success also return a witness certificate.

    Vertices are admitted in increasing order of their bad threshold
    ``t_u = max{d : (c, d) ∈ Λ(u)}``.  At level ``τ`` a witness may use
    the vertices with ``t_u ≤ τ`` and needs a payoff with ``d > τ``; for
    each strongly connected piece of that subgraph reachable from ``v``
    every ordered pair of simple cycles is tried.
    """
    c = Fraction(c)
    vi = a.vid(v)
    reach = sorted(a.reachable(vi))
    t = {u: bad_threshold(a, u, c) for u in reach}
    cycle_cache = {}
    for tau in sorted(set(t.values())):
        if t[vi] > tau:
            continue
        allowed = {u for u in reach if t[u] <= tau}
        succ = restrict(a, allowed)
        live = a.reachable(vi, allowed)
        sub = {u: [x for x in succ[u] if x in live] for u in sorted(live)}
        for comp in tarjan(sub):
            if not is_nontrivial(comp, sub):
                continue
            cycles, means = _cycles_of(a, comp, sub, cycle_cache)
            for i, p in enumerate(means):
                for j, q in enumerate(means):
                    alpha = _mixing_weight(p, q, c, tau)
                    if alpha is None:
                        continue
                    return True, _certificate(a, vi, c, comp, sub, cycles[i], cycles[j],
                                              p, q, alpha)
    return False, None


def _certificate(a, vi, c, comp, sub, cyc1, cyc2, p, q, alpha):
    beta = 1 - alpha
    cp = alpha * p[0] + beta * q[0]
    d = alpha * p[1] + beta * q[1]
    inner = {u: [x for x in sub[u] if x in set(comp)] for u in comp}
    path = shortest_path(sub, vi, cyc1[0])
    conn12 = shortest_path(inner, cyc1[0], cyc2[0])
    conn21 = shortest_path(inner, cyc2[0], cyc1[0])
    names = a.names
    cert = WitnessCertificate(
        names[vi], c, [names[u] for u in comp], [names[u] for u in path],
        [names[u] for u in cyc1], [names[u] for u in cyc2],
        [names[u] for u in conn12], [names[u] for u in conn21], alpha, beta, cp, d)
    for u in cert.vertices():
        verdict = conj_player1_wins(a, u, c, d)
        if verdict.verdict:
            raise ArenaError(f"internal error: witness vertex {u} is bad")
        cert.refutations[u] = verdict.refutation
    return cert


# -- exact value ------------------------------------------------------------------------

@dataclass(frozen=True)
class AsvValue:
    value: Fraction
    attained: bool
    scc: tuple


def asv_value_details(a, v, cap=None):
    """Exact ``ASV(v)`` with the attainment flag of the supremum.

    For each strongly connected piece ``S`` of the extended arena from
    ``v`` (visited set ``P``), the candidate thresholds are the ``c``
    with some hull point ``p`` of the cycle means of ``S`` such that
    ``p_x > c`` and ``(c, p_y)`` is bad at no vertex of ``P``.  Because
    every F_min point is dominated by a hull point and bad regions are
    downward closed in ``d``, this planar set has the same projection
    as the three-variable formulation over F_min.
    """
    ext = build_extended(a, v, cap)
    g = ext.arena
    succ = {u: list(g.succ[u]) for u in range(g.n)}
    best, attained, where = -INF, False, ()
    for comp in tarjan(succ):
        if not is_nontrivial(comp, succ):
            continue
        members = set(comp)
        sub = {u: [x for x in succ[u] if x in members] for u in comp}
        means = [cycle_mean(g, cyc) for cyc in sub_simple_cycles(sub)]
        candidates = Region2D([strictly_left_below_cell(hull_vertices(means))])
        bad = Region2D()
        for name in sorted(ext.visited(comp[0]), key=a.index.__getitem__):
            bad = bad.union(bad_region(a, name))
        value, att = candidates.difference(bad).sup(1, 0)
        if value > best or (value == best and att and not attained):
            best, attained, where = value, att, tuple(g.names[u] for u in comp)
    return AsvValue(best, attained, where)


def asv_value(a, v, cap=None):
    """Exact adversarial Stackelberg value ``ASV(v)``."""
    return asv_value_details(a, v, cap).value


# -- leader strategies --------------------------------------------------------------------

class LeaderStrategy:
    """Counter-based Player-0 strategy realizing a witness certificate.

    Player 0 follows ``path · block(1) · block(2) · …``; block ``i``
    repeats the two cycles ``i·A`` and ``i·B`` times.  If Player 1 leaves
    the plan at vertex ``u``, Player 0 plays the refutation strategy of
    ``u`` from then on.
    """

    def __init__(self, a, cert, precision=None):
        self.arena = a
        self.cert = cert
        self.A, self.B = cert.repetitions()
        margin = cert.c_prime - cert.c
        self.precision = margin / 2 if precision is None else Fraction(precision)
        if not 0 < self.precision:
            raise ValueError("precision must be positive")

    def plan(self):
        """Generator of the planned vertex sequence."""
        yield from self.cert.path[:-1]
        i = 1
        while True:
            yield from self.cert.block(i)
            i += 1

    def simulate(self, steps, follower=None):
        """Play ``steps`` moves from the certificate vertex.

        ``follower(history)`` picks Player 1's moves; by default it follows
        the plan.  Returns the vertex sequence (``steps + 1`` vertices).
        """
        a = self.arena
        planned = self.plan()
        hist = [next(planned)]
        expected = next(planned)
        punish = None
        for _ in range(steps):
            u = hist[-1]
            if punish is not None:
                if a.owner[a.index[u]] == 0:
                    nxt = punish[u]
                else:
                    nxt = follower(hist) if follower else a.names[a.succ[a.index[u]][0]]
            elif a.owner[a.index[u]] == 0:
                nxt = expected
            else:
                nxt = follower(hist) if follower else expected
                if nxt != expected:
                    punish = self.cert.refutations[u]
            hist.append(nxt)
            if punish is None:
                expected = next(planned)
        return hist

    def burn_in(self):
        """Steps after which the cooperative play's running ``MP_0`` mean
        stays above ``c' - precision`` forever.

        With ``g = w_0 - (c' - precision)`` per edge, block ``i`` adds
        ``i·precision·N + K`` to the cumulative surplus (``N`` cycle edges
        per unit, ``K`` from the connectors) while its internal dip is at
        least ``i·slope + fixed``.  The bound ``start_i + dip_i`` has
        increasing increments, so once it is positive with a nonnegative
        increment it stays positive.
        """
        a, cert = self.arena, self.cert
        level = cert.c_prime - self.precision

        def stats(seq, closed):
            pairs = list(zip(seq, seq[1:] + seq[:1])) if closed else list(zip(seq, seq[1:]))
            total, low = Fraction(0), Fraction(0)
            for u, x in pairs:
                total += a.weight(a.index[u], a.index[x], 0) - level
                low = min(low, total)
            return total, low, len(pairs)

        g1, low1, n1 = stats(list(cert.cycle1), True)
        g2, low2, n2 = stats(list(cert.cycle2), True)
        gp, _, np_ = stats(list(cert.path), False)
        g12, low12, n12 = stats(list(cert.conn12), False)
        g21, low21, n21 = stats(list(cert.conn21), False)
        A, B = self.A, self.B
        unit = A * g1 + B * g2
        slope = A * min(g1, 0) + B * min(g2, 0)
        fixed = min(g12, 0) + low1 + low12 + low2 + low21
        start, steps, i = gp, np_, 1
        while True:
            gain = i * unit + g12 + g21
            if start + i * slope + fixed > 0 and gain + slope >= 0:
                return steps
            start += gain
            steps += i * (A * n1 + B * n2) + n12 + n21
            i += 1

    def summary(self):
        cert = self.cert
        r = format_rational
        lines = [
            f"start at {cert.vertex}, walk {' '.join(cert.path)}",
            f"block i: ({' '.join(cert.cycle1)})^(i*{self.A}) then {' '.join(cert.conn12)}"
            f" then ({' '.join(cert.cycle2)})^(i*{self.B}) then {' '.join(cert.conn21)}",
            f"limit payoff ({r(cert.c_prime)}, {r(cert.d)}) with weights "
            f"alpha={r(cert.alpha)}, beta={r(cert.beta)}",
            f"running MP0 above {r(cert.c_prime - self.precision)} after {self.burn_in()} steps",
            "on a deviation at u by Player 1, play the refutation strategy of u:",
        ]
        for u, s in cert.refutations.items():
            moves = ", ".join(f"{x}->{y}" for x, y in s.items()) or "(no Player-0 choice)"
            lines.append(f"  {u}: {moves}")
        return "\n".join(lines)


def synthesize_leader_strategy(a, cert, precision=None):
    return LeaderStrategy(a, cert, precision)


def witness_lasso(a, cert, max_doublings=40):
    """Smallest ``k`` (by doubling) whose induced lasso ``check_witness`` accepts."""
    k = 1
    for _ in range(max_doublings):
        lasso = cert.induced_lasso(k)
        ok, payoff = check_witness(a, cert.vertex, lasso, cert.c)
        if ok:
            return k, lasso, payoff
        k *= 2
    raise ArenaError("no accepted induced lasso found")


# -- best responses ----------------------------------------------------------------------

@dataclass(frozen=True)
class BestResponse:
    value: Fraction
    response: Lasso
    tie: bool
    product_response: Lasso


def best_response_mp(a, s, v):
    """Player 1's best mean payoff against a finite-memory Player-0 strategy.

    Returns the value, a lasso realizing it (projected on ``a``) and
    whether several optimal cycles exist.
    """
    prod = product_with_strategy(a, s, 0)
    start = start_in_product(prod, s, a.names[a.vid(v)])
    live = prod.reachable(start)
    sub = {u: [x for x in prod.succ[u] if x in live] for u in sorted(live)}
    w1 = prod.w1

    def w(u, x):
        return w1[prod.edge_id[(u, x)]]

    comps = tarjan(sub)
    value, cyc = sub_max_mean_cycle(sub, w, comps)
    path = shortest_path(sub, start, cyc[0])
    optimal = 0
    for comp in comps:
        if not is_nontrivial(comp, sub):
            continue
        members = set(comp)
        inner = {u: [x for x in sub[u] if x in members] for u in comp}
        for c in sub_simple_cycles(inner):
            if cycle_mean(prod, c)[1] == value:
                optimal += 1
    prod_lasso = Lasso([prod.names[u] for u in path[:-1]], [prod.names[u] for u in cyc])
    base = Lasso([prod.origin[u][0] for u in path[:-1]], [prod.origin[u][0] for u in cyc])
    return BestResponse(value, base, optimal > 1, prod_lasso)
