"""Oriented Reidemeister moves on Gauss diagrams.

Virtual and mixed moves act trivially on Gauss diagrams and have no
representation here.  The classical moves and their legality conditions:

``R1_add`` / ``R1_remove``
    A chord whose two endpoints are adjacent on one circle.  Any sign and
    either endpoint order.
``R2_add`` / ``R2_remove``
    Two chords ``a``, ``b`` of opposite signs whose over endpoints are
    adjacent on one circle and whose under endpoints are adjacent on one
    circle.  The under pair may run in the same order as the over pair
    (config ``a``, parallel strands) or the reverse (config ``b``).
``R3``
    Chords ``x`` (top over middle), ``y`` (top over bottom), ``z`` (middle
    over bottom) with adjacent pairs ``{xO, yO}``, ``{xU, zO}`` and
    ``{yU, zU}``.  The move swaps each pair.  Which of the two orders each
    pair shows fixes the directions of the three strands through the
    triangle, which fixes the three crossing signs up to a global mirror;
    only those two sign triples are legal.

Positions on a circle of length ``L`` are ``0..L-1``; arc ``g`` is the gap
just before position ``g`` (arc 0 of an empty circle is the whole circle).
New chords get ids above the current maximum.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Union

from .gauss import OVER, UNDER, Endpoint, GaussDiagram, MultiDiagram

Diagram = Union[GaussDiagram, MultiDiagram]

KINDS = ("R1_add", "R1_remove", "R2_add", "R2_remove", "R3")
DEFAULT_MAX_N = 32


class MoveError(ValueError):
    """The move does not apply at the stated location."""


@dataclass(frozen=True)
class Move:
    kind: str
    chords: tuple[int, ...] = ()
    arcs: tuple[tuple[int, int], ...] = ()
    signs: tuple[int, ...] = ()
    order: str = "OU"
    config: str = "a"

    def to_text(self) -> str:
        parts = [self.kind]
        parts += [f"chord={c}" for c in self.chords]
        parts += [f"arc={c}:{g}" if c else f"arc={g}" for c, g in self.arcs]
        if self.kind == "R1_add":
            parts.append(f"sign={'+' if self.signs[0] > 0 else '-'}")
            parts.append(f"order={self.order}")
        elif self.kind == "R2_add":
            parts.append("signs=" + "".join("+" if s > 0 else "-" for s in self.signs))
            parts.append(f"config={self.config}")
            if self.order != "OU":
                parts.append(f"order={self.order}")
        return " ".join(parts)

    def __str__(self):
        return self.to_text()


_FIELD = re.compile(r"(\w+)=(\S+)\Z")


def parse_move(line: str) -> Move:
    """Parse the one-line form written by :meth:`Move.to_text`."""
    fields = line.split()
    if not fields or fields[0] not in KINDS:
        raise MoveError(f"unknown move {line!r}")
    kind = fields[0]
    chords: list[int] = []
    arcs: list[tuple[int, int]] = []
    signs: tuple[int, ...] = ()
    order, config = "OU", "a"
    try:
        for f in fields[1:]:
            m = _FIELD.match(f)
            if m is None:
                raise MoveError(f"bad field {f!r}")
            key, val = m.groups()
            if key == "chord":
                chords.append(int(val))
            elif key == "arc":
                c, _, g = val.rpartition(":")
                arcs.append((int(c) if c else 0, int(g)))
            elif key in ("sign", "signs"):
                if not val or set(val) - {"+", "-"}:
                    raise MoveError(f"bad signs {val!r}")
                signs = tuple(1 if ch == "+" else -1 for ch in val)
            elif key == "order":
                if val not in ("OU", "UO"):
                    raise MoveError(f"bad order {val!r}")
                order = val
            elif key == "config":
                if val not in ("a", "b"):
                    raise MoveError(f"bad config {val!r}")
                config = val
            else:
                raise MoveError(f"unknown field {key!r}")
    except ValueError as exc:
        if isinstance(exc, MoveError):
            raise
        raise MoveError(f"bad move line {line!r}: {exc}") from None
    wanted = {
        "R1_add": (0, 1, 1),
        "R1_remove": (1, 0, 0),
        "R2_add": (0, 2, 2),
        "R2_remove": (2, 0, 0),
        "R3": (3, 0, 0),
    }[kind]
    if (len(chords), len(arcs), len(signs)) != wanted:
        raise MoveError(f"wrong fields for {kind}: {line!r}")
    return Move(kind, tuple(chords), tuple(arcs), signs, order, config)


class _State:
    """Mutable working copy: list of circle words plus sign table."""

    def __init__(self, circles, signs):
        self.circles = [list(w) for w in circles]
        self.signs = dict(signs)
        self._where = None

    @classmethod
    def of(cls, d: Diagram) -> _State:
        if isinstance(d, GaussDiagram):
            return cls([d.word], d.signs)
        return cls(d.circles, d.signs)

    def back(self, like: Diagram) -> Diagram:
        if isinstance(like, GaussDiagram):
            return GaussDiagram(tuple(self.circles[0]), self.signs)
        return MultiDiagram(tuple(tuple(w) for w in self.circles), self.signs)

    def touch(self):
        self._where = None

    @property
    def where(self) -> dict[Endpoint, tuple[int, int]]:
        if self._where is None:
            self._where = {
                tok: (ci, i) for ci, w in enumerate(self.circles) for i, tok in enumerate(w)
            }
        return self._where

    def next_to(self, p: tuple[int, int], q: tuple[int, int]) -> bool:
        """Whether position ``q`` immediately follows ``p`` on the same circle."""
        return p[0] == q[0] and (p[1] + 1) % len(self.circles[p[0]]) == q[1]

    def adjacent_order(self, t1: Endpoint, t2: Endpoint) -> list[tuple[Endpoint, Endpoint]]:
        """Orders in which ``t1``, ``t2`` occur as consecutive tokens (0, 1 or 2)."""
        where = self.where
        (c1, i1), (c2, i2) = where[t1], where[t2]
        if c1 != c2:
            return []
        L = len(self.circles[c1])
        out = []
        if (i1 + 1) % L == i2:
            out.append((t1, t2))
        if (i2 + 1) % L == i1:
            out.append((t2, t1))
        return out

    def new_id(self) -> int:
        return max(self.signs, default=0) + 1

    def check_arc(self, arc: tuple[int, int]):
        c, g = arc
        if not 0 <= c < len(self.circles):
            raise MoveError(f"no circle {c}")
        if not 0 <= g < max(len(self.circles[c]), 1):
            raise MoveError(f"arc {g} out of range on circle {c}")

    def delete(self, tokens):
        doomed = set(tokens)
        for w in self.circles:
            w[:] = [t for t in w if t not in doomed]
        for t in doomed:
            self.signs.pop(t[0], None)
        self.touch()


def _sgn(v: int) -> int:
    return (v > 0) - (v < 0)


def r3_expected_signs(top_x_first: bool, mid_x_first: bool, bot_y_first: bool) -> tuple[int, int, int]:
    """Crossing signs of a triangle whose strands meet their crossings in the given orders.

    The triangle has corners ``x`` (top/middle), ``y`` (top/bottom) and
    ``z`` (middle/bottom); the mirror image negates all three signs.
    """
    px, py, pz = (0, 0), (1, 0), (0, 1)

    def direction(a, b, a_first):
        return (b[0] - a[0], b[1] - a[1]) if a_first else (a[0] - b[0], a[1] - b[1])

    def cross(u, v):
        return u[0] * v[1] - u[1] * v[0]

    top = direction(px, py, top_x_first)
    mid = direction(px, pz, mid_x_first)
    bot = direction(py, pz, bot_y_first)
    return _sgn(cross(top, mid)), _sgn(cross(top, bot)), _sgn(cross(mid, bot))


def _r3_orders(st: _State, x: int, y: int, z: int):
    """Legal (top, middle, bottom) token pairs for an R3 on chords x, y, z, or None."""
    if len({x, y, z}) != 3 or not all(c in st.signs for c in (x, y, z)):
        return None
    tops = st.adjacent_order((x, OVER), (y, OVER))
    mids = st.adjacent_order((x, UNDER), (z, OVER))
    bots = st.adjacent_order((y, UNDER), (z, UNDER))
    signs = (st.signs[x], st.signs[y], st.signs[z])
    for t in tops:
        for m in mids:
            for b in bots:
                exp = r3_expected_signs(t[0][0] == x, m[0][0] == x, b[0][0] == y)
                if signs == exp or signs == tuple(-s for s in exp):
                    return t, m, b
    return None


def _r2_pairs(st: _State, a: int, b: int):
    if a == b or a not in st.signs or b not in st.signs or st.signs[a] != -st.signs[b]:
        return None
    overs = st.adjacent_order((a, OVER), (b, OVER))
    unders = st.adjacent_order((a, UNDER), (b, UNDER))
    if not overs or not unders:
        return None
    return overs[0], unders[0]


def _is_kink(st: _State, c: int) -> bool:
    return c in st.signs and bool(st.adjacent_order((c, OVER), (c, UNDER)))


def _insert(st: _State, circle: int, gap: int, tokens) -> None:
    st.circles[circle][gap:gap] = list(tokens)
    st.touch()


def _apply(st: _State, m: Move) -> None:
    kind = m.kind
    if kind == "R1_remove":
        (c,) = m.chords
        if not _is_kink(st, c):
            raise MoveError(f"chord {c} is not an isolated kink")
        st.delete([Endpoint(c, OVER), Endpoint(c, UNDER)])
    elif kind == "R2_remove":
        a, b = m.chords
        if _r2_pairs(st, a, b) is None:
            raise MoveError(f"chords {a}, {b} do not form a Reidemeister II bigon")
        st.delete([Endpoint(a, OVER), Endpoint(b, OVER), Endpoint(a, UNDER), Endpoint(b, UNDER)])
    elif kind == "R3":
        found = _r3_orders(st, *m.chords)
        if found is None:
            raise MoveError(f"chords {m.chords} do not form a legal Reidemeister III triangle")
        for t1, t2 in found:
            (c1, i1), (c2, i2) = st.where[t1], st.where[t2]
            w1, w2 = st.circles[c1], st.circles[c2]
            w1[i1], w2[i2] = w2[i2], w1[i1]
        st.touch()
    elif kind == "R1_add":
        (arc,) = m.arcs
        st.check_arc(arc)
        if m.order not in ("OU", "UO") or m.signs[0] not in (1, -1):
            raise MoveError("bad R1_add parameters")
        c = st.new_id()
        st.signs[c] = m.signs[0]
        _insert(st, arc[0], arc[1], [Endpoint(c, m.order[0]), Endpoint(c, m.order[1])])
    elif kind == "R2_add":
        (oc, og), (uc, ug) = m.arcs
        st.check_arc((oc, og))
        st.check_arc((uc, ug))
        sa, sb = m.signs
        if sa not in (1, -1) or sb != -sa:
            raise MoveError("R2 chords need opposite signs")
        a = st.new_id()
        b = a + 1
        st.signs[a], st.signs[b] = sa, sb
        over = [Endpoint(a, OVER), Endpoint(b, OVER)]
        under = [Endpoint(a, UNDER), Endpoint(b, UNDER)]
        if m.config == "b":
            under.reverse()
        if oc != uc:
            _insert(st, oc, og, over)
            _insert(st, uc, ug, under)
        elif og == ug:
            _insert(st, oc, og, over + under if m.order == "OU" else under + over)
        elif og < ug:
            _insert(st, uc, ug, under)
            _insert(st, oc, og, over)
        else:
            _insert(st, oc, og, over)
            _insert(st, uc, ug, under)
    else:
        raise MoveError(f"unknown move kind {kind!r}")


def apply_move(d: Diagram, m: Move) -> Diagram:
    """Apply one Reidemeister move; raises :class:`MoveError` if it does not apply."""
    st = _State.of(d)
    _apply(st, m)
    return st.back(d)


def _reinsertion_gaps(st: _State, runs):
    """Gap, in the word left after deleting ``runs``, where each run was.

    ``runs`` are pairs of consecutive tokens.  Reinserting every run at its
    gap rebuilds each circle up to rotation.
    """
    doomed = {t for run in runs for t in run}
    out = []
    for run in runs:
        c, start = st.where[run[0]]
        before = sum(1 for i, t in enumerate(st.circles[c]) if i < start and t in doomed)
        left = len(st.circles[c]) - sum(1 for t in st.circles[c] if t in doomed)
        gap = start - before
        out.append((c, gap % left if left else 0))
    return out


def inverse(d: Diagram, m: Move) -> Move:
    """The move undoing ``m`` on ``apply_move(d, m)``, up to rotation of circles."""
    st = _State.of(d)
    kind = m.kind
    if kind == "R1_add":
        return Move("R1_remove", (st.new_id(),))
    if kind == "R2_add":
        a = st.new_id()
        return Move("R2_remove", (a, a + 1))
    if kind == "R3":
        return Move("R3", m.chords)
    if kind == "R1_remove":
        (c,) = m.chords
        if not _is_kink(st, c):
            raise MoveError(f"chord {c} is not an isolated kink")
        run = st.adjacent_order(Endpoint(c, OVER), Endpoint(c, UNDER))[0]
        (arc,) = _reinsertion_gaps(st, [run])
        return Move("R1_add", arcs=(arc,), signs=(st.signs[c],), order=run[0][1] + run[1][1])
    if kind == "R2_remove":
        pairs = _r2_pairs(st, *m.chords)
        if pairs is None:
            raise MoveError(f"chords {m.chords} do not form a Reidemeister II bigon")
        over, under = pairs
        a, b = over[0][0], over[1][0]
        config = "a" if under[0][0] == a else "b"
        oarc, uarc = _reinsertion_gaps(st, [over, under])
        order = "OU"
        if oarc == uarc:
            oc, oi = st.where[over[1]]
            if not st.next_to((oc, oi), st.where[under[0]]):
                order = "UO"
        return Move("R2_add", arcs=(oarc, uarc), signs=(st.signs[a], st.signs[b]), order=order, config=config)
    raise MoveError(f"unknown move kind {kind!r}")


def _all_arcs(st: _State) -> list[tuple[int, int]]:
    return [(c, g) for c, w in enumerate(st.circles) for g in range(max(len(w), 1))]


def _removals_r1(st: _State) -> list[Move]:
    kinks = set()
    for w in st.circles:
        for i, t in enumerate(w):
            if w[(i + 1) % len(w)][0] == t[0] and len(w) > 1:
                kinks.add(t[0])
    return [Move("R1_remove", (c,)) for c in sorted(kinks)]


def _removals_r2(st: _State) -> list[Move]:
    out = set()
    for w in st.circles:
        for i, t in enumerate(w):
            u = w[(i + 1) % len(w)]
            if t[1] == OVER and u[1] == OVER and t[0] != u[0]:
                if _r2_pairs(st, t[0], u[0]) is not None:
                    out.add(tuple(sorted((t[0], u[0]))))
    return [Move("R2_remove", pair) for pair in sorted(out)]


def _r3_moves(st: _State) -> list[Move]:
    out = set()
    where = st.where
    for w in st.circles:
        for i, t in enumerate(w):
            u = w[(i + 1) % len(w)]
            if t[1] != OVER or u[1] != OVER or t[0] == u[0]:
                continue
            for x, y in ((t[0], u[0]), (u[0], t[0])):
                ci, xi = where[(x, UNDER)]
                wx = st.circles[ci]
                for nb in (wx[(xi - 1) % len(wx)], wx[(xi + 1) % len(wx)]):
                    z = nb[0]
                    if nb[1] == OVER and z != x and z != y:
                        # cheap necessary condition before the full check
                        if not st.adjacent_order((y, UNDER), (z, UNDER)):
                            continue
                        if _r3_orders(st, x, y, z) is not None:
                            out.add((x, y, z))
    return [Move("R3", c) for c in sorted(out)]


def _additions(st: _State, kind: str) -> list[Move]:
    arcs = _all_arcs(st)
    out = []
    if kind == "R1_add":
        for arc in arcs:
            for order in ("OU", "UO"):
                for s in (1, -1):
                    out.append(Move("R1_add", arcs=(arc,), signs=(s,), order=order))
    else:
        for oarc in arcs:
            for uarc in arcs:
                orders = ("OU", "UO") if oarc == uarc else ("OU",)
                for s in (1, -1):
                    for config in ("a", "b"):
                        for order in orders:
                            out.append(Move("R2_add", arcs=(oarc, uarc), signs=(s, -s), order=order, config=config))
    return out


def _moves_of_kind(st: _State, kind: str) -> list[Move]:
    if kind == "R1_remove":
        return _removals_r1(st)
    if kind == "R2_remove":
        return _removals_r2(st)
    if kind == "R3":
        return _r3_moves(st)
    return _additions(st, kind)


def enumerate_moves(d: Diagram, max_n: int | None = None) -> list[Move]:
    """Every applicable move; additions are skipped once they would exceed ``max_n`` chords."""
    st = _State.of(d)
    moves = []
    for kind in KINDS:
        if max_n is not None and kind == "R1_add" and len(st.signs) + 1 > max_n:
            continue
        if max_n is not None and kind == "R2_add" and len(st.signs) + 2 > max_n:
            continue
        moves += _moves_of_kind(st, kind)
    return moves


def _sample_addition(st: _State, kind: str, rng: random.Random) -> Move:
    arcs = _all_arcs(st)
    s = rng.choice((1, -1))
    if kind == "R1_add":
        return Move("R1_add", arcs=(rng.choice(arcs),), signs=(s,), order=rng.choice(("OU", "UO")))
    oarc, uarc = rng.choice(arcs), rng.choice(arcs)
    order = rng.choice(("OU", "UO")) if oarc == uarc else "OU"
    return Move("R2_add", arcs=(oarc, uarc), signs=(s, -s), order=order, config=rng.choice("ab"))


def _random_step(st: _State, rng: random.Random, max_n: int) -> Move | None:
    options: list[tuple[str, list[Move] | None]] = []
    n = len(st.signs)
    for kind in KINDS:
        if kind == "R1_add":
            if n + 1 <= max_n:
                options.append((kind, None))
        elif kind == "R2_add":
            if n + 2 <= max_n:
                options.append((kind, None))
        else:
            found = _moves_of_kind(st, kind)
            if found:
                options.append((kind, found))
    if not options:
        return None
    kind, found = rng.choice(options)
    return rng.choice(found) if found is not None else _sample_addition(st, kind, rng)


def random_move(d: Diagram, rng: random.Random, max_n: int = DEFAULT_MAX_N) -> Move | None:
    """A move drawn by first picking a move kind that has a legal instance."""
    return _random_step(_State.of(d), rng, max_n)


def iter_walk(d: Diagram, steps: int, seed: int, max_n: int = DEFAULT_MAX_N):
    """Yield ``(move, diagram)`` after each step of the walk :func:`random_walk` takes."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = random.Random(seed)
    st = _State.of(d)
    for _ in range(steps):
        m = _random_step(st, rng, max_n)
        if m is None:
            return
        _apply(st, m)
        yield m, st.back(d)


def random_walk(
    d: Diagram,
    steps: int,
    seed: int,
    max_n: int = DEFAULT_MAX_N,
    trace: list[Move] | None = None,
) -> Diagram:
    """Apply ``steps`` random legal moves, deterministically for a given seed.

    Each step picks a kind uniformly among the kinds with a legal instance
    (additions only while the chord count stays within ``max_n``), then a
    uniform instance of that kind.  Applied moves are appended to ``trace``
    when given.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = random.Random(seed)
    st = _State.of(d)
    for _ in range(steps):
        m = _random_step(st, rng, max_n)
        if m is None:
            break
        _apply(st, m)
        if trace is not None:
            trace.append(m)
    return st.back(d)
