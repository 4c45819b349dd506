"""Exact planar semilinear sets.

A :class:`ConvexCell` is a conjunction of half-planes ``a·p ≥ b`` or
``a·p > b`` with rational data; a :class:`Region2D` is a finite union of
cells.  Emptiness and linear suprema are decided by Fourier–Motzkin
elimination, which is exact with strict inequalities and cheap in two
variables.
"""

import math
from collections import namedtuple
from fractions import Fraction

from . import budget
from .errors import BudgetExceeded
from .rationals import format_rational, parse_rational

INF = math.inf

HalfPlane = namedtuple("HalfPlane", "a1 a2 b strict")
HalfPlane.__doc__ = "``a1*x + a2*y > b`` if strict else ``a1*x + a2*y >= b``."


def halfplane(a1, a2, b, strict=False):
    """Half-plane with the normal scaled so its largest entry is 1."""
    a1, a2, b = Fraction(a1), Fraction(a2), Fraction(b)
    s = max(abs(a1), abs(a2))
    if s:
        a1, a2, b = a1 / s, a2 / s, b / s
    return HalfPlane(a1, a2, b, bool(strict))


def negate(h):
    return HalfPlane(-h.a1, -h.a2, -h.b, not h.strict)


def satisfies(h, p):
    lhs = h.a1 * p[0] + h.a2 * p[1]
    return lhs > h.b if h.strict else lhs >= h.b


# -- one-variable systems ---------------------------------------------------------

def solve_interval(rows):
    """Solution set of rows ``g*t (>|>=) h`` as (lo, lo_strict, hi, hi_strict).

    Returns None if empty.  Unbounded ends are ±INF.
    """
    lo, lo_s, hi, hi_s = -INF, True, INF, True
    for g, h, strict in rows:
        if g == 0:
            if (0 <= h) if strict else (0 < h):
                return None
            continue
        bound = h / g
        if g > 0:
            if bound > lo or (bound == lo and strict):
                lo, lo_s = bound, strict
        else:
            if bound < hi or (bound == hi and strict):
                hi, hi_s = bound, strict
    if lo > hi or (lo == hi and (lo_s or hi_s)):
        return None
    return lo, lo_s, hi, hi_s


def _eliminate_second(rows):
    """Project rows ``(g, k, h, strict)`` meaning ``g*s + k*t ≥ h`` onto ``s``."""
    keep, lower, upper = [], [], []
    for g, k, h, strict in rows:
        if k > 0:
            lower.append((g, k, h, strict))
        elif k < 0:
            upper.append((g, k, h, strict))
        else:
            keep.append((g, h, strict))
    for g1, k1, h1, s1 in lower:
        for g2, k2, h2, s2 in upper:
            keep.append((-k2 * g1 + k1 * g2, -k2 * h1 + k1 * h2, s1 or s2))
    return keep


def _objective_range(constraints, o1, o2):
    """Interval of ``o1*x + o2*y`` over a cell, or None if the cell is empty."""
    if o1 == 0 and o2 == 0:
        if _project_both(constraints) is None:
            return None
        return Fraction(0), False, Fraction(0), False
    if o2 != 0:
        # substitute y = (f - o1*x)/o2, keep f, eliminate x
        rows = [(h.a2 / o2, h.a1 - h.a2 * o1 / o2, h.b, h.strict) for h in constraints]
    else:
        # substitute x = f/o1, keep f, eliminate y
        rows = [(h.a1 / o1, h.a2, h.b, h.strict) for h in constraints]
    return solve_interval(_eliminate_second(rows))


def _project_both(constraints):
    rows = [(h.a1, h.a2, h.b, h.strict) for h in constraints]
    return solve_interval(_eliminate_second(rows))


# -- cells ---------------------------------------------------------------------------

class ConvexCell:
    """Intersection of finitely many half-planes (no constraints = plane)."""

    __slots__ = ("constraints", "_empty")

    def __init__(self, constraints=()):
        seen, cons = set(), []
        for h in constraints:
            h = h if isinstance(h, HalfPlane) else halfplane(*h)
            if h not in seen:
                seen.add(h)
                cons.append(h)
        self.constraints = tuple(cons)
        self._empty = None

    def contains(self, p):
        p = (Fraction(p[0]), Fraction(p[1]))
        return all(satisfies(h, p) for h in self.constraints)

    def is_empty(self):
        if self._empty is None:
            self._empty = _project_both(self.constraints) is None
        return self._empty

    def intersect(self, other):
        other = other.constraints if isinstance(other, ConvexCell) else other
        return ConvexCell(self.constraints + tuple(other))

    def closure(self):
        return ConvexCell([h._replace(strict=False) for h in self.constraints])

    def subset_of(self, other):
        """Exact inclusion test by emptiness of ``self ∩ ¬h`` per facet."""
        return all(self.intersect([negate(h)]).is_empty() for h in other.constraints)

    def sup(self, o1, o2):
        """(sup of ``o1*x + o2*y``, attained) with ±INF markers."""
        rng = _objective_range(self.constraints, Fraction(o1), Fraction(o2))
        if rng is None:
            return -INF, False
        _, _, hi, hi_s = rng
        if hi == INF:
            return INF, False
        return hi, not hi_s

    def reduced(self):
        """Same set with redundant half-planes removed."""
        cons = list(self.constraints)
        i = 0
        while i < len(cons):
            rest = cons[:i] + cons[i + 1:]
            if _project_both(rest + [negate(cons[i])]) is None:
                cons = rest
            else:
                i += 1
        return ConvexCell(cons)

    def vertices(self):
        """Vertices of the closure (for bounded cells: the polygon corners)."""
        cons = self.closure().constraints
        pts = set()
        for i, h in enumerate(cons):
            for g in cons[i + 1:]:
                det = h.a1 * g.a2 - h.a2 * g.a1
                if det == 0:
                    continue
                x = (h.b * g.a2 - h.a2 * g.b) / det
                y = (h.a1 * g.b - h.b * g.a1) / det
                if all(satisfies(c, (x, y)) for c in cons):
                    pts.add((x, y))
        return sorted(pts)

    def to_json(self):
        return [[format_rational(h.a1), format_rational(h.a2), format_rational(h.b), h.strict]
                for h in self.constraints]

    @classmethod
    def from_json(cls, rows):
        return cls([halfplane(parse_rational(a1), parse_rational(a2), parse_rational(b), s)
                    for a1, a2, b, s in rows])

    def __repr__(self):
        parts = []
        for h in self.constraints:
            parts.append(f"{h.a1}x{'+' if h.a2 >= 0 else ''}{h.a2}y{'>' if h.strict else '>='}{h.b}")
        return "Cell(" + ", ".join(parts) + ")"


class Region2D:
    """Finite union of convex cells."""

    __slots__ = ("cells",)

    def __init__(self, cells=()):
        self.cells = tuple(c if isinstance(c, ConvexCell) else ConvexCell(c) for c in cells)

    @classmethod
    def plane(cls):
        return cls([ConvexCell()])

    @classmethod
    def empty(cls):
        return cls([])

    def contains(self, p):
        return any(c.contains(p) for c in self.cells)

    def is_empty(self):
        return all(c.is_empty() for c in self.cells)

    def union(self, other):
        return Region2D(self.cells + other.cells)

    def intersect(self, other):
        cells = []
        for c in self.cells:
            for d in other.cells:
                e = c.intersect(d)
                if not e.is_empty():
                    cells.append(e)
        _guard(cells)
        return Region2D(cells)

    def restrict(self, h):
        """Intersection with a single half-plane."""
        h = h if isinstance(h, HalfPlane) else halfplane(*h)
        return Region2D([e for e in (c.intersect([h]) for c in self.cells) if not e.is_empty()])

    def difference(self, other):
        cells = [c for c in self.cells if not c.is_empty()]
        for d in other.cells:
            nxt = []
            for c in cells:
                if c.subset_of(d):
                    continue
                disjoint = c.intersect(d).is_empty()
                if disjoint:
                    nxt.append(c)
                    continue
                # split c along the facets of d; pieces are pairwise disjoint
                acc = []
                for h in d.constraints:
                    piece = c.intersect(acc + [negate(h)])
                    if not piece.is_empty():
                        nxt.append(piece.reduced())
                    acc.append(h)
            cells = nxt
            _guard(cells)
        return Region2D(cells)

    def complement(self):
        return Region2D.plane().difference(self)

    def simplified(self):
        """Drop empty cells and cells contained in another cell."""
        cells = [c.reduced() for c in self.cells if not c.is_empty()]
        keep = []
        for i, c in enumerate(cells):
            dominated = False
            for j, d in enumerate(cells):
                if i == j:
                    continue
                if c.subset_of(d) and (not d.subset_of(c) or j < i):
                    dominated = True
                    break
            if not dominated:
                keep.append(c)
        return Region2D(keep)

    def sup(self, o1, o2):
        """Supremum of ``o1*x + o2*y`` over the region and whether it is attained."""
        best, attained = -INF, False
        for c in self.cells:
            value, att = c.sup(o1, o2)
            if value > best:
                best, attained = value, att
            elif value == best and att:
                attained = True
        return best, attained

    def equals(self, other):
        return self.difference(other).is_empty() and other.difference(self).is_empty()

    def to_json(self):
        return [c.to_json() for c in self.cells]

    @classmethod
    def from_json(cls, rows):
        return cls([ConvexCell.from_json(r) for r in rows])

    def __len__(self):
        return len(self.cells)

    def __repr__(self):
        return "Region2D(" + " | ".join(repr(c) for c in self.cells) + ")"


def _guard(cells):
    limit = budget.cap(budget.CELL_CAP)
    if len(cells) > limit:
        raise BudgetExceeded("region cells", limit, len(cells))


def region_ops(r1, r2, op):
    """Boolean combination ``op`` of two regions.

    ``op`` is ``"union"``, ``"intersect"``, ``"complement"`` (of ``r1``;
    ``r2`` ignored), ``"difference"`` or ``"substitute-halfplane"``, which
    cuts ``r1`` with every half-plane of the single cell ``r2``.
    """
    if op == "union":
        return r1.union(r2)
    if op == "intersect":
        return r1.intersect(r2)
    if op == "complement":
        return r1.complement()
    if op == "difference":
        return r1.difference(r2)
    if op == "substitute-halfplane":
        out = r1
        for c in r2.cells:
            for h in c.constraints:
                out = out.restrict(h)
        return out
    raise ValueError(f"unknown region operation {op!r}")


def sup_linear(r, objective):
    return r.sup(*objective)


# -- hulls --------------------------------------------------------------------------

def _cross(o, p, q):
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def hull_vertices(points):
    """Corners of the convex hull, counter-clockwise, collinear points dropped.

    A segment comes back as its two endpoints, a point as itself.
    """
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 2 else hull[:1]


def hull_edges(verts):
    """(p, q, outward normal) for each boundary edge; a segment has two."""
    if len(verts) < 2:
        return []
    out = []
    k = len(verts)
    for i in range(k if k > 2 else 2):
        p, q = verts[i % k], verts[(i + 1) % k]
        out.append((p, q, (q[1] - p[1], p[0] - q[0])))
    return out


def _box(verts):
    xs = [p[0] for p in verts]
    ys = [p[1] for p in verts]
    return [halfplane(1, 0, min(xs)), halfplane(-1, 0, -max(xs)),
            halfplane(0, 1, min(ys)), halfplane(0, -1, -max(ys))]


def _edge_halfplane(p, n, strict=False):
    # n·x ≤ n·p
    return halfplane(-n[0], -n[1], -(n[0] * p[0] + n[1] * p[1]), strict)


def hull_cell(verts):
    return ConvexCell(_box(verts) + [_edge_halfplane(p, n) for p, _, n in hull_edges(verts)])


def convex_hull(points):
    """Closed convex hull of a non-empty point list as a one-cell region."""
    if not points:
        raise ValueError("convex hull of no points")
    return Region2D([hull_cell(hull_vertices(points))])


def f_min_cell(verts):
    """Cell of all coordinatewise minima of pairs of hull points."""
    cons = _box(verts)
    for p, _, n in hull_edges(verts):
        if n[0] > 0 or n[1] > 0:
            cons.append(_edge_halfplane(p, n))
    return ConvexCell(cons)


def f_min_region(hull):
    """F_min of a single closed convex bounded cell."""
    if len(hull.cells) != 1:
        raise ValueError("f_min_region expects a single convex cell")
    verts = hull_vertices(hull.cells[0].vertices())
    if not verts:
        return Region2D.empty()
    return Region2D([f_min_cell(verts)])


def dominated_from_above_cell(verts):
    """``{(c, d) : some hull point p has p_x ≤ c and p_y ≥ d}``."""
    xs = [p[0] for p in verts]
    ys = [p[1] for p in verts]
    cons = [halfplane(1, 0, min(xs)), halfplane(0, -1, -max(ys))]
    for p, _, n in hull_edges(verts):
        if n[0] <= 0 and n[1] >= 0:
            cons.append(_edge_halfplane(p, n))
    return ConvexCell(cons)


def strictly_left_below_cell(verts):
    """``{(c, y) : some hull point p has p_x > c and p_y ≥ y}``."""
    xs = [p[0] for p in verts]
    ys = [p[1] for p in verts]
    cons = [halfplane(-1, 0, -max(xs), True), halfplane(0, -1, -max(ys))]
    for p, _, n in hull_edges(verts):
        if n[0] >= 0 and n[1] >= 0:
            cons.append(_edge_halfplane(p, n, strict=n[0] > 0))
    return ConvexCell(cons)


def hull_meets_quadrant(verts, c, d):
    """Does the hull contain a point p with ``p_x ≤ c`` and ``p_y ≥ d``?"""
    return best_y_left_of(verts, c) >= d


def best_y_left_of(verts, c):
    """``max{p_y : p in hull, p_x ≤ c}`` or -INF when no hull point qualifies."""
    best = -INF
    for p in verts:
        if p[0] <= c and p[1] > best:
            best = p[1]
    for p, q, _ in hull_edges(verts):
        lo, hi = (p, q) if p[0] <= q[0] else (q, p)
        if lo[0] < c < hi[0]:
            y = lo[1] + (hi[1] - lo[1]) * (c - lo[0]) / (hi[0] - lo[0])
            if y > best:
                best = y
    return best
