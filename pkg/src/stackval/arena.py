"""Bi-weighted two-player arenas, lassos, Mealy strategies and products.

Vertices are strings at the API boundary and dense integers inside.  The
integer of a vertex is its declaration position; edges are stored sorted
by (source, target) position, which fixes every tie-break in the library.
"""

import json
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import budget
from .errors import ArenaError, ArenaParseError, BudgetExceeded
from .rationals import format_rational, parse_rational

_TOKEN = re.compile(r"^[^\s#]+$")


class Arena:
    """A finite game graph with owners in {0, 1} and two weight functions.

    Parameters
    ----------
    vertices : sequence of str
        Vertex ids in declaration order.
    owner : mapping or sequence
        Player owning each vertex.
    edges : iterable of (src, dst, w0, w1)
        Weights may be ints, Fractions or ``p/q`` strings.
    init : str, optional
        Designated initial vertex.
    """

    def __init__(self, vertices, owner, edges, init=None, origin=None):
        names = tuple(str(v) for v in vertices)
        if not names:
            raise ArenaError("arena has no vertices")
        index = {}
        for i, name in enumerate(names):
            if not _TOKEN.match(name):
                raise ArenaError(f"invalid vertex id {name!r}")
            if name in index:
                raise ArenaError(f"vertex {name!r} declared twice")
            index[name] = i
        if isinstance(owner, dict):
            try:
                owners = tuple(int(owner[n]) for n in names)
            except KeyError as exc:
                raise ArenaError(f"no owner for vertex {exc.args[0]!r}") from None
        else:
            owners = tuple(int(p) for p in owner)
        if len(owners) != len(names) or any(p not in (0, 1) for p in owners):
            raise ArenaError("owner must map every vertex to player 0 or 1")

        table = {}
        for src, dst, w0, w1 in edges:
            for end in (src, dst):
                if end not in index:
                    raise ArenaError(f"edge mentions unknown vertex {end!r}")
            key = (index[src], index[dst])
            if key in table:
                raise ArenaError(f"duplicate edge {src} -> {dst}")
            table[key] = (parse_rational(w0), parse_rational(w1))
        keys = sorted(table)

        self.names = names
        self.index = index
        self.owner = owners
        self.edges = tuple(keys)
        self.w0 = tuple(table[k][0] for k in keys)
        self.w1 = tuple(table[k][1] for k in keys)
        self.edge_id = {k: i for i, k in enumerate(keys)}
        out = [[] for _ in names]
        for k, (s, _) in enumerate(keys):
            out[s].append(k)
        self.out_edges = tuple(tuple(o) for o in out)
        self.succ = tuple(tuple(keys[k][1] for k in o) for o in out)
        for i, o in enumerate(out):
            if not o:
                raise ArenaError(f"vertex {names[i]!r} has no outgoing edge")
        if init is not None and init not in index:
            raise ArenaError(f"unknown init vertex {init!r}")
        self.init = init
        self.origin = tuple(origin) if origin is not None else None
        self.max_abs_weight = max(max(abs(x) for x in self.w0), max(abs(x) for x in self.w1))
        self._cache = {}

    # -- basic queries -------------------------------------------------

    @property
    def n(self):
        return len(self.names)

    @property
    def W(self):
        return self.max_abs_weight

    def vid(self, v):
        """Integer id of ``v`` (accepts an id or a name)."""
        if isinstance(v, int) and not isinstance(v, bool):
            if not 0 <= v < len(self.names):
                raise ArenaError(f"vertex index {v} out of range")
            return v
        try:
            return self.index[v]
        except KeyError:
            raise ArenaError(f"unknown vertex {v!r}") from None

    def weight(self, u, v, dim):
        k = self.edge_id[(u, v)]
        return self.w0[k] if dim == 0 else self.w1[k]

    def weights(self, dim):
        return self.w0 if dim == 0 else self.w1

    def has_edge(self, u, v):
        return (u, v) in self.edge_id

    def origin_index(self):
        """Map from origin label to product vertex id (products only)."""
        if "origin_index" not in self._cache:
            self._cache["origin_index"] = {o: i for i, o in enumerate(self.origin or ())}
        return self._cache["origin_index"]

    def reachable(self, start, allowed=None):
        """Vertex ids reachable from ``start`` (inside ``allowed`` if given)."""
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for x in self.succ[u]:
                if x not in seen and (allowed is None or x in allowed):
                    seen.add(x)
                    queue.append(x)
        return seen

    # -- identity ------------------------------------------------------

    def _key(self):
        return (self.names, self.owner, self.edges, self.w0, self.w1, self.init)

    def __eq__(self, other):
        return isinstance(other, Arena) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Arena({self.n} vertices, {len(self.edges)} edges, W={self.W})"


# -- text format ---------------------------------------------------------

def parse_arena(text):
    """Parse the line-based arena format.

    Lines are ``player0: ids``, ``player1: ids``, ``init: id`` and
    ``edge: src dst w0 w1``; ``#`` starts a comment.  Player lines may
    repeat, vertex order is order of first appearance.
    """
    vertices, owner, edges = [], {}, []
    init = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ArenaParseError(f"expected 'keyword: ...', got {line!r}", lineno)
        key, rest = line.split(":", 1)
        key = key.strip()
        fields = rest.split()
        if key in ("player0", "player1"):
            p = int(key[-1])
            for v in fields:
                if v in owner:
                    raise ArenaParseError(f"vertex {v!r} declared twice", lineno)
                owner[v] = p
                vertices.append(v)
        elif key == "init":
            if len(fields) != 1:
                raise ArenaParseError("init takes exactly one vertex", lineno)
            init = fields[0]
        elif key == "edge":
            if len(fields) != 4:
                raise ArenaParseError("edge takes: src dst w0 w1", lineno)
            try:
                w0, w1 = parse_rational(fields[2]), parse_rational(fields[3])
            except ValueError as exc:
                raise ArenaParseError(str(exc), lineno) from None
            edges.append((fields[0], fields[1], w0, w1, lineno))
        else:
            raise ArenaParseError(f"unknown keyword {key!r}", lineno)
    seen = set()
    for src, dst, _, _, lineno in edges:
        for end in (src, dst):
            if end not in owner:
                raise ArenaParseError(f"edge mentions unknown vertex {end!r}", lineno)
        if (src, dst) in seen:
            raise ArenaParseError(f"duplicate edge {src} -> {dst}", lineno)
        seen.add((src, dst))
    if init is not None and init not in owner:
        raise ArenaParseError(f"unknown init vertex {init!r}")
    return Arena(vertices, owner, [e[:4] for e in edges], init=init)


def serialize_arena(a):
    """Canonical text form; ``parse_arena(serialize_arena(a)) == a``."""
    lines = []
    run_owner, run = None, []
    for name, p in zip(a.names, a.owner):
        if p != run_owner and run:
            lines.append(f"player{run_owner}: " + " ".join(run))
            run = []
        run_owner = p
        run.append(name)
    lines.append(f"player{run_owner}: " + " ".join(run))
    if a.init is not None:
        lines.append(f"init: {a.init}")
    for k, (s, d) in enumerate(a.edges):
        lines.append(f"edge: {a.names[s]} {a.names[d]} "
                     f"{format_rational(a.w0[k])} {format_rational(a.w1[k])}")
    return "\n".join(lines) + "\n"


def load_arena(path):
    with open(path, encoding="utf-8") as fh:
        return parse_arena(fh.read())


# -- plays -----------------------------------------------------------------

@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic play ``prefix · cycle^ω`` (vertex names)."""

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ArenaError("lasso cycle must be non-empty")

    @property
    def size(self):
        return len(self.prefix) + len(self.cycle)

    @property
    def start(self):
        return self.prefix[0] if self.prefix else self.cycle[0]

    def vertices(self):
        return set(self.prefix) | set(self.cycle)

    def edges(self):
        """Distinct edges as name pairs: prefix edges then cycle edges."""
        seq = list(self.prefix) + [self.cycle[0]]
        pre = list(zip(seq, seq[1:]))
        cyc = list(zip(self.cycle, self.cycle[1:] + self.cycle[:1]))
        return pre, cyc

    def validate(self, a):
        pre, cyc = self.edges()
        for u, v in pre + cyc:
            if not a.has_edge(a.vid(u), a.vid(v)):
                raise ArenaError(f"lasso uses missing edge {u} -> {v}")
        return self

    def to_json(self):
        return {"prefix": list(self.prefix), "cycle": list(self.cycle)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["prefix"], obj["cycle"])


# -- strategies --------------------------------------------------------------

class MealyStrategy:
    """Finite-memory strategy as a transducer over visited vertices.

    The memory after a history ``v0 … vk`` is obtained by folding
    ``update`` over every vertex, starting from ``initial``; the move at a
    vertex of ``player`` is ``output[(memory, vertex)]``.  Missing
    ``update`` entries keep the memory unchanged.  Vertices are names.
    """

    def __init__(self, player, memory, initial, update, output):
        self.player = int(player)
        self.memory = tuple(memory)
        self.initial = initial
        self.update = dict(update)
        self.output = dict(output)
        if initial not in self.memory:
            raise ArenaError("initial memory state not among memory states")

    @classmethod
    def memoryless(cls, player, choice):
        """Strategy playing ``choice[vertex]`` regardless of history."""
        return cls(player, (0,), 0, {}, {(0, v): t for v, t in choice.items()})

    def next_memory(self, m, v):
        return self.update.get((m, v), m)

    def move(self, m, v):
        try:
            return self.output[(m, v)]
        except KeyError:
            raise ArenaError(f"strategy has no move at memory {m!r}, vertex {v!r}") from None

    def is_memoryless(self):
        return len(self.memory) == 1

    def validate(self, a):
        for (m, v), t in self.output.items():
            if a.owner[a.vid(v)] == self.player and not a.has_edge(a.vid(v), a.vid(t)):
                raise ArenaError(f"strategy move {v} -> {t} is not an edge")
        return self

    def play(self, a, start, responder, steps):
        """Vertex sequence of length ``steps + 1`` from ``start``.

        ``responder(history)`` chooses at vertices of the other player.
        """
        m = self.next_memory(self.initial, start)
        hist = [start]
        for _ in range(steps):
            u = hist[-1]
            nxt = self.move(m, u) if a.owner[a.vid(u)] == self.player else responder(hist)
            hist.append(nxt)
            m = self.next_memory(m, nxt)
        return hist

    def to_json(self):
        return {
            "player": self.player,
            "memory": list(self.memory),
            "initial": self.initial,
            "update": [[m, v, t] for (m, v), t in self.update.items()],
            "output": [[m, v, t] for (m, v), t in self.output.items()],
        }

    @classmethod
    def from_json(cls, obj):
        def key(x):
            return tuple(x) if isinstance(x, list) else x
        return cls(
            obj["player"], [key(m) for m in obj["memory"]], key(obj["initial"]),
            {(key(m), v): key(t) for m, v, t in obj.get("update", [])},
            {(key(m), v): t for m, v, t in obj.get("output", [])},
        )

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self):
        return f"MealyStrategy(player={self.player}, states={len(self.memory)})"


def first_edge_strategy(a, player):
    """Memoryless strategy taking the lowest-index edge everywhere."""
    return MealyStrategy.memoryless(
        player, {a.names[u]: a.names[a.succ[u][0]] for u in range(a.n) if a.owner[u] == player})


def product_with_strategy(a, s, player):
    """Arena of (vertex, memory) pairs where ``player`` follows ``s``.

    Vertices of ``player`` keep their owner but have a single successor,
    so all real choices remain with the other player.  With a single
    memory state the vertex names are those of ``a``; otherwise the
    product vertex for ``(v, m)`` is named ``v|m``.  The ``origin`` of the
    result lists the (vertex name, memory) pair of each product vertex.
    """
    if s.player != player:
        raise ArenaError("strategy belongs to the other player")
    single = len(s.memory) == 1
    ids, order = {}, []
    queue = deque()

    def visit(pair):
        if pair not in ids:
            ids[pair] = len(order)
            order.append(pair)
            queue.append(pair)

    for name in a.names:
        visit((name, s.next_memory(s.initial, name)))
    edges = []
    while queue:
        name, m = queue.popleft()
        u = a.index[name]
        if a.owner[u] == player:
            t = s.move(m, name)
            if t not in a.index or not a.has_edge(u, a.index[t]):
                raise ArenaError(f"strategy move {name} -> {t} is not an edge")
            targets = [a.index[t]]
        else:
            targets = a.succ[u]
        for x in targets:
            nxt = (a.names[x], s.next_memory(m, a.names[x]))
            visit(nxt)
            k = a.edge_id[(u, x)]
            edges.append(((name, m), nxt, a.w0[k], a.w1[k]))

    def label(pair):
        return pair[0] if single else f"{pair[0]}|{_mem_token(pair[1])}"

    labels = [label(p) for p in order]
    if len(set(labels)) != len(labels):
        labels = [f"{p[0]}|{i}" for i, p in enumerate(order)]
    by_pair = dict(zip(order, labels))
    init = None
    if a.init is not None:
        init = by_pair[(a.init, s.next_memory(s.initial, a.init))]
    return Arena(labels, [a.owner[a.index[p[0]]] for p in order],
                 [(by_pair[x], by_pair[y], w0, w1) for x, y, w0, w1 in edges],
                 init=init, origin=order)


def _mem_token(m):
    return re.sub(r"[\s#]", "_", str(m))


def start_in_product(prod, s, v_name):
    """Product vertex id where a play from ``v_name`` starts."""
    return prod.origin_index()[(v_name, s.next_memory(s.initial, v_name))]


# -- extended arena ----------------------------------------------------------

@dataclass
class ExtendedArena:
    """Reachable part of the arena over pairs (vertex, visited set).

    ``arena.origin[i]`` is ``(base vertex name, frozenset of base names)``.
    """

    base: Arena
    arena: Arena
    root: int

    def project(self, i):
        return self.arena.origin[i][0]

    def visited(self, i):
        return self.arena.origin[i][1]

    def lift(self, lasso):
        """Image of a base lasso in the extended arena (names).

        The visited set is complete after the prefix and one round of the
        cycle, so the lifted prefix is that stretch and the lifted cycle is
        the base cycle paired with the full set.
        """
        seq = list(lasso.prefix) + list(lasso.cycle)
        idx = self.arena.origin_index()
        P = frozenset()
        prefix = []
        for name in seq:
            P = P | {name}
            prefix.append((name, P))
        cycle = [(name, P) for name in lasso.cycle]
        return Lasso([self.arena.names[idx[x]] for x in prefix],
                     [self.arena.names[idx[x]] for x in cycle])


def build_extended(a, v, cap=None):
    """Extended arena from ``(v, {v})`` restricted to reachable states."""
    limit = budget.cap(budget.EXTENDED_CAP) if cap is None else cap
    root_name = a.names[a.vid(v)]
    root = (root_name, frozenset([root_name]))
    ids = {root: 0}
    order = [root]
    queue = deque([root])
    edges = []
    while queue:
        name, P = queue.popleft()
        u = a.index[name]
        for x in a.succ[u]:
            xn = a.names[x]
            nxt = (xn, P | {xn})
            if nxt not in ids:
                if len(order) >= limit:
                    raise BudgetExceeded("extended arena states", limit, len(order) + 1)
                ids[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            k = a.edge_id[(u, x)]
            edges.append(((name, P), nxt, a.w0[k], a.w1[k]))

    def label(state):
        name, P = state
        members = sorted(P, key=a.index.__getitem__)
        return name + "{" + ",".join(members) + "}"

    labels = {st: label(st) for st in order}
    ext = Arena([labels[st] for st in order], [a.owner[a.index[st[0]]] for st in order],
                [(labels[x], labels[y], w0, w1) for x, y, w0, w1 in edges],
                init=labels[root], origin=order)
    return ExtendedArena(a, ext, 0)

