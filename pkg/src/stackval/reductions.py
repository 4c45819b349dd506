"""Generators for the target-discounted-sum and partition gadget games."""

import json
from dataclasses import dataclass
from fractions import Fraction

from .arena import Arena, MealyStrategy, serialize_arena
from .rationals import format_rational, parse_rational


@dataclass(frozen=True)
class TdsInstance:
    """Is there a sequence over ``{a, b}`` whose ``lam``-discounted sum is ``t``?"""

    a: Fraction
    b: Fraction
    t: Fraction
    lam: Fraction

    def __post_init__(self):
        for name in ("a", "b", "t", "lam"):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))
        if not 0 < self.lam < 1:
            raise ValueError("discount factor must lie strictly between 0 and 1")


def build_tds_reduction(inst):
    """Game where the follower at ``v`` accepts the leader's sequence from ``s``
    only if it costs him no more than bailing out to ``z``.

    Vertex ``a`` (resp. ``b``) is entered by an edge carrying ``(a, -a)``
    (resp. ``(b, -b)``), so the leader spells her sequence by moving
    between them.  Returns ``(arena, "v")``.
    """
    a, b, t, lam = inst.a, inst.b, inst.t, inst.lam
    edges = [
        ("v", "z", lam * t - 1, -lam * t),
        ("v", "s", 0, 0),
        ("z", "z", 0, 0),
        ("s", "a", a, -a),
        ("s", "b", b, -b),
        ("a", "a", a, -a),
        ("a", "b", b, -b),
        ("b", "a", a, -a),
        ("b", "b", b, -b),
    ]
    owner = {"v": 1, "z": 0, "s": 0, "a": 0, "b": 0}
    return Arena(["v", "z", "s", "a", "b"], owner, edges, init="v"), "v"


def sequence_strategy(prefix, cycle):
    """Leader strategy spelling ``prefix`` then ``cycle`` forever in the TDS game.

    Letters are ``"a"`` or ``"b"``; the memory state is the position in
    the word, so the strategy has ``len(prefix) + len(cycle)`` states.
    """
    word = list(prefix) + list(cycle)
    if not cycle or any(x not in ("a", "b") for x in word):
        raise ValueError("letters must be 'a' or 'b' and the cycle non-empty")
    k = len(word)
    update, output = {}, {}
    for i in range(k):
        nxt = i + 1 if i + 1 < k else len(prefix)
        for x in ("s", "a", "b"):
            output[(i, x)] = word[i]
        output[(i, "z")] = "z"
        for x in ("a", "b"):
            update[(i, x)] = nxt
    return MealyStrategy(0, list(range(k)), 0, update, output)


@dataclass(frozen=True)
class PartitionInstance:
    """Can ``weights`` be split into two halves of sum ``T`` each?"""

    weights: tuple

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if not w or any(x <= 0 for x in w):
            raise ValueError("weights must be positive integers")
        if sum(w) % 2:
            raise ValueError("weights must have an even sum")
        object.__setattr__(self, "weights", w)

    @property
    def T(self):
        return sum(self.weights) // 2

    @property
    def n(self):
        return len(self.weights)

    def solvable(self):
        reach = {0}
        for x in self.weights:
            reach |= {r + x for r in reach}
        return self.T in reach


def partition_parameters(T, n):
    """Discount factor, precision and threshold for a partition game.

    The discount is the smallest ``k/(k+1)`` with ``T·lam^(n+1) > T - 1/2``;
    the precision is half the smaller slack of the two constraints checked
    by :func:`check_separation`.
    """
    half = Fraction(1, 2)
    k = 2
    while T * Fraction(k, k + 1) ** (n + 1) <= T - half:
        k += 1
    lam = Fraction(k, k + 1)
    p = lam ** (n + 1)
    slack1 = T * p - (T - half)
    slack2 = (T - half) - (T - 1) * p
    eps = min(slack1, slack2) / 2
    return lam, eps, T - half


def check_separation(T, n, lam, eps):
    """Both separation inequalities the partition game relies on."""
    p = Fraction(lam) ** (n + 1)
    half = Fraction(1, 2)
    return T * p > T - half + eps and (T - 1) * p < T - half - eps


def build_partition_reduction(inst):
    """Partition game and its ``(lam, eps, c)``.

    The follower at ``v0`` either takes ``T - 2/3`` for himself by moving
    to ``v1`` or lets the leader walk the item chain to ``v2``.  Item ``i``
    goes to the leader (edge into ``i.L``, weight ``(w_i, 0)``) or to the
    follower (edge into ``i.R``, weight ``(0, w_i)``); since arenas have no
    parallel edges, the choice is recorded in the target vertex.  Item
    ``i`` is still paid at step ``i``.
    Returns ``(arena, lam, eps, c)``; the start vertex is ``v0``.
    """
    w, T, n = inst.weights, inst.T, inst.n
    lam, eps, c = partition_parameters(T, n)
    names = ["v0", "v1", "1"]
    owner = {"v0": 1, "v1": 0, "1": 0, "v2": 0}
    edges = [("v0", "v1", 0, T - Fraction(2, 3)), ("v0", "1", 0, 0), ("v1", "v1", 0, 0)]
    prev = ["1"]
    for i in range(1, n + 1):
        left, right = f"{i}.L", f"{i}.R"
        names += [left, right]
        owner[left] = owner[right] = 0
        for p in prev:
            edges.append((p, left, w[i - 1], 0))
            edges.append((p, right, 0, w[i - 1]))
        prev = [left, right]
    names.append("v2")
    for p in prev:
        edges.append((p, "v2", 0, 0))
    edges.append(("v2", "v2", 0, 0))
    return Arena(names, owner, edges, init="v0"), lam, eps, c


def partition_strategy(a, inst, left):
    """Memoryless leader strategy putting the items of ``left`` (1-based) on her side."""
    choice = {}
    for u in a.names:
        if a.owner[a.index[u]] != 0:
            continue
        if u == "1" or u.endswith((".L", ".R")):
            i = 1 if u == "1" else int(u.split(".")[0]) + 1
            if i <= inst.n:
                choice[u] = f"{i}.L" if i in left else f"{i}.R"
                continue
            choice[u] = "v2"
        else:
            choice[u] = u
    return MealyStrategy.memoryless(0, choice)


def sidecar(source, **params):
    """Metadata recorded next to a generated arena file."""
    out = {"source": source}
    for k, x in params.items():
        out[k] = format_rational(x) if isinstance(x, (int, Fraction)) and not isinstance(x, bool) else x
    return out


def write_generated(path, arena, meta):
    """Write ``path`` and ``path + '.json'``."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_arena(arena))
    with open(str(path) + ".json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_sidecar(path):
    """Sidecar of an arena file, with rationals parsed, or ``None``."""
    try:
        with open(str(path) + ".json", encoding="utf-8") as fh:
            meta = json.load(fh)
    except FileNotFoundError:
        return None
    for k in ("lam", "eps", "c"):
        if k in meta:
            meta[k] = parse_rational(meta[k])
    return meta
