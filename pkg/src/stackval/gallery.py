"""Small named arenas used in documentation, demos and tests."""

from .arena import Arena, parse_arena

FIG1 = """\
# Player 1 may stay at 1 forever or enter the 2/3 gadget owned by Player 0.
player1: 1
player0: 2 3
init: 1
edge: 1 1 0 0
edge: 1 2 0 0
edge: 2 2 0 1
edge: 2 3 0 2
edge: 3 3 0 2
edge: 3 2 0 1
"""

FIG2 = """\
# The adversarial value from v0 is 1 and no strategy achieves it.
player1: v0
player0: v1 v2
init: v0
edge: v0 v1 1 1
edge: v1 v0 1 1
edge: v1 v1 0 2
edge: v0 v2 0 1
edge: v2 v2 0 1
"""


def fig1():
    return parse_arena(FIG1)


def fig2():
    return parse_arena(FIG2)


def self_loop(w0=2, w1=3, owner=0):
    return Arena(["v"], [owner], [("v", "v", w0, w1)], init="v")


def cycle_graph(k, w0=0, w1=0, owner=0):
    names = [f"u{i}" for i in range(k)]
    return Arena(names, [owner] * k,
                 [(names[i], names[(i + 1) % k], w0, w1) for i in range(k)], init=names[0])
