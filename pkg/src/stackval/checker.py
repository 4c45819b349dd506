"""Independent re-verification of two-cycle witness certificates.

Shares no code with the witness search beyond the arena model and SCC
decomposition.  Non-badness of a vertex is checked with one exact LP per
strongly connected piece of the refuting strategy's graph: a normalized
circulation whose mean weights land in ``{x ≤ c, y ≥ d}`` exists exactly
when some convex combination of cycle means does.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import lp
from .graphs import tarjan


@dataclass
class VerificationReport:
    ok: bool
    reasons: list = field(default_factory=list)
    cost: int = 0
    size: int = 0


def _walk_ok(a, seq, report, what):
    for u in seq:
        if u not in a.index:
            report.reasons.append(f"{what}: unknown vertex {u}")
            return False
    for u, x in zip(seq, seq[1:]):
        report.cost += 1
        if not a.has_edge(a.index[u], a.index[x]):
            report.reasons.append(f"{what}: {u} -> {x} is not an edge")
            return False
    return True


def _mean(a, cyc):
    k = len(cyc)
    s0 = s1 = Fraction(0)
    for i, u in enumerate(cyc):
        e = a.edge_id[(a.index[u], a.index[cyc[(i + 1) % k]])]
        s0 += a.w0[e]
        s1 += a.w1[e]
    return s0 / k, s1 / k


def circulation_in_quadrant(a, comp, succ, c, d):
    """Exact LP: normalized circulation on ``comp`` with mean in the quadrant."""
    members = set(comp)
    edges = [(u, x) for u in comp for x in succ[u] if x in members]
    n = len(edges)
    A_eq, b_eq = [], []
    for u in comp:
        row = [0] * n
        for k, (s, t) in enumerate(edges):
            if t == u:
                row[k] += 1
            if s == u:
                row[k] -= 1
        A_eq.append(row)
        b_eq.append(0)
    A_eq.append([1] * n)
    b_eq.append(1)
    w0 = [a.w0[a.edge_id[e]] for e in edges]
    w1 = [a.w1[a.edge_id[e]] for e in edges]
    A_ub = [w0, [-x for x in w1]]
    b_ub = [c, -d]
    return lp.feasible(A_ub, b_ub, A_eq, b_eq, nvars=n)


def _refutes(a, u, strategy, c, d, report):
    """Does the memoryless ``strategy`` keep ``u`` out of the quadrant?"""
    start = a.index[u]
    succ, stack = {}, [start]
    while stack:
        x = stack.pop()
        if x in succ:
            continue
        if a.owner[x] == 0:
            report.cost += 1
            name = a.names[x]
            if name not in strategy or strategy[name] not in a.index \
                    or not a.has_edge(x, a.index[strategy[name]]):
                report.reasons.append(f"refutation of {u}: no valid move at {name}")
                return False
            succ[x] = [a.index[strategy[name]]]
        else:
            succ[x] = list(a.succ[x])
        stack.extend(succ[x])
    for comp in tarjan(succ):
        if len(comp) == 1 and comp[0] not in succ[comp[0]]:
            continue
        report.cost += 1
        if circulation_in_quadrant(a, comp, succ, c, d):
            report.reasons.append(f"refutation of {u} fails on component {[a.names[x] for x in comp]}")
            return False
    return True


def verify_certificate(a, cert, c=None):
    """Check every claim of a witness certificate against ``a``."""
    c = cert.c if c is None else Fraction(c)
    report = VerificationReport(True, size=cert.size())

    def fail(msg):
        report.ok = False
        report.reasons.append(msg)
        return report

    if cert.c != c:
        return fail("certificate was issued for another threshold")
    if not cert.path or cert.path[0] != cert.vertex:
        return fail("path does not start at the vertex")
    if not cert.cycle1 or not cert.cycle2:
        return fail("empty cycle")
    for cyc in (cert.cycle1, cert.cycle2):
        if len(set(cyc)) != len(cyc):
            return fail("cycle is not simple")
    checks = [
        (cert.path, "path", cert.cycle1[0]),
        (cert.conn12, "conn12", cert.cycle2[0]),
        (cert.conn21, "conn21", cert.cycle1[0]),
    ]
    for seq, what, end in checks:
        if not seq or seq[-1] != end:
            return fail(f"{what} ends at the wrong vertex")
        if not _walk_ok(a, list(seq), report, what):
            report.ok = False
            return report
    if cert.conn12[0] != cert.cycle1[0] or cert.conn21[0] != cert.cycle2[0]:
        return fail("connectors do not start on the cycles")
    for cyc, what in ((cert.cycle1, "cycle1"), (cert.cycle2, "cycle2")):
        if not _walk_ok(a, list(cyc) + [cyc[0]], report, what):
            report.ok = False
            return report
    if not (0 <= cert.alpha <= 1 and 0 <= cert.beta <= 1 and cert.alpha + cert.beta == 1):
        return fail("mixing weights are not a convex pair")
    m1, m2 = _mean(a, cert.cycle1), _mean(a, cert.cycle2)
    mix = (cert.alpha * m1[0] + cert.beta * m2[0], cert.alpha * m1[1] + cert.beta * m2[1])
    if mix != (cert.c_prime, cert.d):
        return fail("mixture of cycle means differs from the claimed payoff")
    if not cert.c_prime > c:
        return fail("claimed payoff does not exceed the threshold")
    for u in cert.vertices():
        strategy = cert.refutations.get(u)
        if strategy is None:
            return fail(f"no refutation for {u}")
        if not _refutes(a, u, strategy, c, cert.d, report):
            report.ok = False
            return report
    return report
