"""Classical satellites of Gauss diagrams.

A pattern is ``p`` parallel strands running along the companion, each with
an orientation relative to it, closed up through a classical tangle box.
The box sits on the arc between the last and the first position of the
companion word.  Inside the box the strands first pass through a braid,
then through a planar connector which caps off adjacent strands of
opposite orientation and runs the rest straight through.

Band conventions (strands numbered ``0..p-1`` from the right-hand edge of
the band, looking along the companion):

* companion chord ``x`` becomes ``p*p`` chords ``(x, i, j)``: strand ``i``
  of the over band crosses strand ``j`` of the under band, with sign
  ``sign(x) * eps[i] * eps[j]``;
* walking along strand ``i`` of the over band in the companion direction,
  the under strands are met in order ``p-1 .. 0`` at a positive chord and
  ``0 .. p-1`` at a negative one; along an under strand the over strands
  are met ``0 .. p-1`` at a positive chord and ``p-1 .. 0`` at a negative
  one.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .gauss import OVER, UNDER, Endpoint, GaussDiagram
from .invariants import HTPolynomial, ht_polynomial


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Pattern:
    p: int
    eps: tuple[int, ...]
    tangle: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(self.eps))
        object.__setattr__(self, "tangle", tuple(tuple(t) for t in self.tangle))
        if self.p < 1:
            raise PatternError("a pattern needs at least one strand")
        if len(self.eps) != self.p or any(e not in (1, -1) for e in self.eps):
            raise PatternError(f"eps must be {self.p} signs, got {self.eps}")
        for i, s in self.tangle:
            if not 1 <= i <= self.p - 1 or s not in (1, -1):
                raise PatternError(f"bad braid letter ({i},{s}) for {self.p} strands")

    def to_text(self) -> str:
        eps = "".join("+" if e > 0 else "-" for e in self.eps)
        tangle = ",".join(f"{i}{'+' if s > 0 else '-'}" for i, s in self.tangle)
        return f"p={self.p} eps={eps} tangle={tangle}"

    def __str__(self):
        return self.to_text()


def parse_pattern(text: str) -> Pattern:
    """Read ``p=2 eps=++ tangle=1+,1+``; the tangle field may be empty or absent."""
    fields = {}
    for part in text.split():
        key, sep, val = part.partition("=")
        if not sep or key not in ("p", "eps", "tangle") or key in fields:
            raise PatternError(f"bad pattern field {part!r}")
        fields[key] = val
    if "p" not in fields or "eps" not in fields:
        raise PatternError("pattern needs p= and eps=")
    try:
        p = int(fields["p"])
    except ValueError:
        raise PatternError(f"bad strand count {fields['p']!r}") from None
    if not re.fullmatch(r"[+-]*", fields["eps"]):
        raise PatternError(f"bad orientations {fields['eps']!r}")
    eps = tuple(1 if c == "+" else -1 for c in fields["eps"])
    tangle = []
    for letter in filter(None, fields.get("tangle", "").split(",")):
        m = re.fullmatch(r"(\d+)([+-])", letter)
        if not m:
            raise PatternError(f"bad braid letter {letter!r}")
        tangle.append((int(m.group(1)), 1 if m.group(2) == "+" else -1))
    return Pattern(p, eps, tuple(tangle))


def winding(pat: Pattern) -> int:
    return abs(sum(pat.eps))


def _braid(pat: Pattern):
    """Trace the braid top to bottom.

    Returns, per top strand, the bottom position it reaches and its list of
    ``(letter index, is_over)`` visits in downward order, plus the pair of
    top strands meeting at each letter.
    """
    at = list(range(pat.p))  # at[position] = top strand currently there
    visits = [[] for _ in range(pat.p)]
    meets = []
    for k, (i, s) in enumerate(pat.tangle):
        left, right = at[i - 1], at[i]
        meets.append((left, right))
        # s = +1: the strand moving from position i+1 to i (currently right) goes over
        visits[right].append((k, s > 0))
        visits[left].append((k, s < 0))
        at[i - 1], at[i] = right, left
    bottom = [0] * pat.p
    for pos, strand in enumerate(at):
        bottom[strand] = pos
    return bottom, visits, meets


def _cancel(signs):
    """Match adjacent opposite signs like brackets; return (pairs, unmatched positions)."""
    stack, pairs = [], []
    for k, s in enumerate(signs):
        if stack and signs[stack[-1]] != s:
            pairs.append((stack.pop(), k))
        else:
            stack.append(k)
    return pairs, stack


def _band_tokens(d: GaussDiagram, p: int, cid):
    """Per strand, its endpoints in the companion direction."""
    lists = [[] for _ in range(p)]
    for c, role in d.word:
        s = d.signs[c]
        for i in range(p):
            if role == OVER:
                order = range(p - 1, -1, -1) if s > 0 else range(p)
                lists[i].extend(Endpoint(cid[c, i, j], OVER) for j in order)
            else:
                order = range(p) if s > 0 else range(p - 1, -1, -1)
                lists[i].extend(Endpoint(cid[c, j, i], UNDER) for j in order)
    return lists


def cable(d: GaussDiagram, pat: Pattern) -> GaussDiagram:
    """The classical satellite of ``d`` with pattern ``pat``.

    Raises ``PatternError`` if the closure has more than one component.
    """
    p, eps = pat.p, pat.eps
    cid = {}
    signs = {}
    for c in d.chord_ids():
        for i in range(p):
            for j in range(p):
                cid[c, i, j] = len(cid) + 1
                signs[cid[c, i, j]] = d.signs[c] * eps[i] * eps[j]
    companion = _band_tokens(d, p, cid)

    bottom, visits, meets = _braid(pat)
    box = [[] for _ in range(p)]  # downward endpoint lists from the top of the box
    base = len(cid)
    for strand in range(p):
        for k, over in visits[strand]:
            box[strand].append(Endpoint(base + k + 1, OVER if over else UNDER))
    for k, ((i, s), (a, b)) in enumerate(zip(pat.tangle, meets)):
        signs[base + k + 1] = s * eps[a] * eps[b]
    pos_of = {bottom[strand]: strand for strand in range(p)}

    # Port graph.  Ports: ('t', i) top of box, ('m', i) below the braid, ('b', i) bottom.
    # Each edge: (port, port, endpoints listed from the first port to the second).
    edges = []
    for i in range(p):
        edges.append((("b", i), ("t", i), companion[i]))
        edges.append((("t", i), ("m", bottom[i]), box[i]))
    mid_signs = [eps[pos_of[k]] for k in range(p)]
    pairs_m, free_m = _cancel(mid_signs)
    pairs_b, free_b = _cancel(list(eps))
    for a, b in pairs_m:
        edges.append((("m", a), ("m", b), []))
    for a, b in pairs_b:
        edges.append((("b", a), ("b", b), []))
    for a, b in zip(free_m, free_b):
        edges.append((("m", a), ("b", b), []))

    incident = {}
    for e, (u, v, _) in enumerate(edges):
        incident.setdefault(u, []).append(e)
        incident.setdefault(v, []).append(e)
    assert all(len(v) == 2 for v in incident.values())

    word: list[Endpoint] = []
    used = set()
    port = ("b", 0)
    e = 0
    while e not in used:
        used.add(e)
        u, v, toks = edges[e]
        if u == port:
            word.extend(toks)
            port = v
        else:
            word.extend(reversed(toks))
            port = u
        e1, e2 = incident[port]
        e = e2 if e1 == e else e1
    if len(used) != len(edges):
        raise PatternError(f"pattern {pat} closes up into more than one component")
    if eps[0] < 0:
        word.reverse()
    return GaussDiagram(tuple(word), signs)


def is_single_component(pat: Pattern) -> bool:
    try:
        cable(GaussDiagram.trivial(), pat)
    except PatternError:
        return False
    return True


def expected_satellite_ht(d: GaussDiagram, pat: Pattern) -> HTPolynomial:
    r = winding(pat)
    return ht_polynomial(d).substitute_power(r).scale(r * r)


def verify_satellite_formula(d: GaussDiagram, pat: Pattern) -> bool:
    """Whether the cable's HT polynomial is ``r^2 w(t^r)``; False means a bug here."""
    return ht_polynomial(cable(d, pat)) == expected_satellite_ht(d, pat)


def random_pattern(rng: random.Random, max_p: int = 3, max_len: int = 4, r: int | None = None) -> Pattern:
    """A random single-component pattern, optionally with a prescribed winding number."""
    while True:
        p = rng.randint(1, max_p)
        if r is not None:
            if r > p or (p - r) % 2:
                continue
            eps = [1] * ((p + r) // 2) + [-1] * ((p - r) // 2)
            rng.shuffle(eps)
        else:
            eps = [rng.choice((1, -1)) for _ in range(p)]
        length = rng.randint(0, max_len) if p > 1 else 0
        tangle = tuple((rng.randint(1, p - 1), rng.choice((1, -1))) for _ in range(length))
        pat = Pattern(p, tuple(eps), tangle)
        if is_single_component(pat):
            return pat
