"""Independent reference computations used only by the test suite.

Nothing here calls into ``vknot.invariants``; these are deliberately naive
so they can check the library's shortcuts.
"""
from __future__ import annotations

import itertools
from collections import defaultdict


class _DSU:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)

    def count(self):
        return len({self.find(i) for i in self.parent})


def _ports(circles):
    """Arc ends of the curve: ('in', c, i) arrives at position i, ('out', c, i) leaves it."""
    ports = []
    arcs = []
    for c, w in enumerate(circles):
        L = len(w)
        for i in range(L):
            ports += [("in", c, i), ("out", c, i)]
            arcs.append((("out", c, i), ("in", c, (i + 1) % L)))
    return ports, arcs


def _positions(circles):
    where = {}
    for c, w in enumerate(circles):
        for i, (chord, role) in enumerate(w):
            where[(chord, role)] = (c, i)
    return where


def smoothing_loops(circles, smoothing):
    """Loops after smoothing every chord; ``smoothing[chord]`` is 'oriented' or 'unoriented'."""
    ports, arcs = _ports(circles)
    dsu = _DSU(ports)
    for a, b in arcs:
        dsu.union(a, b)
    where = _positions(circles)
    for chord, how in smoothing.items():
        o = where[(chord, "O")]
        u = where[(chord, "U")]
        if how == "oriented":
            dsu.union(("in",) + o, ("out",) + u)
            dsu.union(("in",) + u, ("out",) + o)
        else:
            dsu.union(("in",) + o, ("in",) + u)
            dsu.union(("out",) + o, ("out",) + u)
    empty = sum(1 for w in circles if not w)
    return (dsu.count() if ports else 0) + empty


def seifert_by_tracing(word):
    """Seifert circle count by walking strand segments through smoothed crossings."""
    if not word:
        return 1
    chords = {c for c, _ in word}
    return smoothing_loops([word], {c: "oriented" for c in chords})


def _mul(p, q):
    out = defaultdict(int)
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] += x * y
    return {k: v for k, v in out.items() if v}


def _add(p, q):
    out = defaultdict(int, p)
    for k, v in q.items():
        out[k] += v
    return {k: v for k, v in out.items() if v}


def kauffman_f(circles, signs):
    """Writhe-normalised Kauffman bracket as a dict {power of A: coefficient}.

    State sum over all A/B smoothings; for a positive chord the A smoothing
    is the oriented one, for a negative chord the unoriented one.
    """
    chords = sorted(signs)
    loop = {2: -1, -2: -1}
    total = {}
    for choice in itertools.product((1, -1), repeat=len(chords)):
        smoothing = {}
        for c, pick in zip(chords, choice):
            a_is_oriented = signs[c] == 1
            oriented = a_is_oriented if pick == 1 else not a_is_oriented
            smoothing[c] = "oriented" if oriented else "unoriented"
        loops = smoothing_loops(circles, smoothing)
        term = {sum(choice): 1}
        for _ in range(loops - 1):
            term = _mul(term, loop)
        total = _add(total, term)
    w = sum(signs.values())
    norm = {-3 * w: (-1) ** (w % 2)}
    return _mul(total, norm)


def index_by_walking(word, signs):
    """Chord indices by walking the circle from each chord's U endpoint to its O endpoint.

    Every other chord with exactly one endpoint met on the walk interlaces
    ``x``; it counts ``+sign`` if the endpoint met is its U endpoint.
    """
    L = len(word)
    out = {}
    for x in signs:
        start = word.index((x, "U"))
        met = defaultdict(list)
        i = (start + 1) % L
        while word[i] != (x, "O"):
            c, role = word[i]
            met[c].append(role)
            i = (i + 1) % L
        out[x] = sum(signs[c] * (1 if roles == ["U"] else -1) for c, roles in met.items() if len(roles) == 1)
    return out
