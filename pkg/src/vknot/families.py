"""Torus-knot codes, clasp blocks and the genus-stepping family of diagrams."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .gauss import OVER, UNDER, Endpoint, GaussDiagram
from .invariants import HTPolynomial, ht_polynomial, seifert_circle_count, slice_genus_positive


@dataclass(frozen=True)
class FamilySpec:
    g: int
    pairs: tuple[tuple[int, int], ...]
    k: int = 1
    # homology class of the knot on the fiber; carried along, never used
    h: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(pq) for pq in self.pairs))
        if self.g < 1:
            raise ValueError("genus must be at least 1")
        if len(self.pairs) != self.g:
            raise ValueError(f"need {self.g} pairs, got {len(self.pairs)}")
        for p, q in self.pairs:
            if p == 0 or q == 0:
                raise ValueError(f"pair ({p},{q}) has a zero entry")
            if gcd(abs(p), abs(q)) != 1:
                raise ValueError(f"pair ({p},{q}) is not coprime")
        if self.k < 1:
            raise ValueError("k must be at least 1")

    def with_k(self, k: int) -> FamilySpec:
        return FamilySpec(self.g, self.pairs, k, self.h)


def parse_pairs(text: str) -> tuple[tuple[int, int], ...]:
    """``"1:1,2:-1"`` -> ``((1, 1), (2, -1))``."""
    out = []
    for item in filter(None, text.split(",")):
        p, sep, q = item.partition(":")
        if not sep:
            raise ValueError(f"bad pair {item!r}, expected p:q")
        out.append((int(p), int(q)))
    return tuple(out)


@lru_cache(maxsize=None)
def torus_code(m: int) -> GaussDiagram:
    """Closed code of the (m, 2) torus knot with all crossings positive."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"torus code needs an odd m >= 1, got {m}")
    first = [Endpoint(i, OVER if i % 2 else UNDER) for i in range(1, m + 1)]
    second = [Endpoint(i, UNDER if r == OVER else OVER) for i, r in first]
    return GaussDiagram(tuple(first + second), {i: 1 for i in range(1, m + 1)})


@lru_cache(maxsize=None)
def clasp_block(p: int, q: int) -> GaussDiagram:
    """The (p, q) curve on a handle with every intersection made a positive clasp.

    ``|p|`` horizontal and ``|q|`` vertical strands meet in ``|pq|`` points.
    After smoothing, the single curve passes each point twice: once along
    the horizontal strand and once along the vertical one.  The two chords
    ``a, b`` of the clasp at a point are read as ``O_a U_b`` on the
    horizontal pass and ``U_a O_b`` on the vertical pass.
    """
    if p == 0 or q == 0:
        raise ValueError("clasp block needs nonzero p and q")
    P, Q = abs(p), abs(q)
    if gcd(P, Q) != 1:
        raise ValueError(f"gcd(|{p}|, |{q}|) != 1: the grid curve is disconnected")
    sp = 1 if p > 0 else -1
    sq = 1 if q > 0 else -1
    points = {}
    for u in range(P):
        for v in range(Q):
            points[u, v] = len(points)
    word: list[Endpoint] = []
    seen_h, seen_v = set(), set()
    for step in range(P * Q):
        h = ((sp * step) % P, (sq * step) % Q)
        v = ((sp * (step + 1)) % P, (sq * step) % Q)
        seen_h.add(h)
        seen_v.add(v)
        a, b = 2 * points[h] + 1, 2 * points[h] + 2
        word += [Endpoint(a, OVER), Endpoint(b, UNDER)]
        a, b = 2 * points[v] + 1, 2 * points[v] + 2
        word += [Endpoint(a, UNDER), Endpoint(b, OVER)]
    # coprimality makes the walk close up only after visiting every point
    assert len(seen_h) == len(seen_v) == P * Q
    return GaussDiagram(tuple(word), {c: 1 for c in range(1, 2 * P * Q + 1)})


@lru_cache(maxsize=4096)
def _shifted(block: GaussDiagram, shift: int) -> tuple[Endpoint, ...]:
    return tuple(Endpoint(c + shift, r) for c, r in block.word)


def family_generator(spec: FamilySpec) -> GaussDiagram:
    """Clasp blocks summed left to right, then the (2k+1, 2) torus code spliced in after them.

    Same result as chaining :func:`connected_sum` at arc 0, built in one pass.
    """
    word: tuple[Endpoint, ...] = ()
    shift = 0
    for p, q in spec.pairs:
        word += _shifted(clasp_block(p, q), shift)
        shift += 2 * abs(p * q)
    word += _shifted(torus_code(2 * spec.k + 1), shift)
    shift += 2 * spec.k + 1
    d = GaussDiagram(word, {c: 1 for c in range(1, shift + 1)})
    expected = 2 * sum(abs(p * q) for p, q in spec.pairs) + 2 * spec.k + 1
    assert d.n == expected
    return d


def expected_family_ht(spec: FamilySpec) -> HTPolynomial:
    return HTPolynomial({1: 2 * sum(abs(p * q) for p, q in spec.pairs)})


@dataclass
class FamilyRow:
    k: int
    n: int
    ht: HTPolynomial
    seifert_circles: int
    genus: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "ht": self.ht.to_json(),
            "seifert_circles": self.seifert_circles,
            "genus": self.genus,
        }


@dataclass
class FamilyReport:
    spec: FamilySpec
    rows: list[FamilyRow]
    ht_constant: bool
    ht_nonzero: bool
    genus_steps_by_one: bool
    non_split: bool

    @property
    def distinct(self) -> bool:
        return self.ht_constant and self.ht_nonzero and self.genus_steps_by_one

    def to_json(self) -> dict:
        return {
            "g": self.spec.g,
            "pairs": [list(pq) for pq in self.spec.pairs],
            "rows": [r.to_json() for r in self.rows],
            "ht_constant": self.ht_constant,
            "ht_nonzero": self.ht_nonzero,
            "genus_steps_by_one": self.genus_steps_by_one,
            "non_split": self.non_split,
            "pairwise_distinct": self.distinct,
        }

    def to_text(self) -> str:
        lines = [f"{'k':>3} {'n':>4} {'r':>3} {'genus':>5}  ht"]
        for r in self.rows:
            lines.append(f"{r.k:>3} {r.n:>4} {r.seifert_circles:>3} {r.genus:>5}  {r.ht}")
        lines.append(f"ht independent of k: {'yes' if self.ht_constant else 'no'}")
        lines.append(f"ht nonzero (non-split): {'yes' if self.ht_nonzero else 'no'}")
        lines.append(f"genus increases by 1 each step: {'yes' if self.genus_steps_by_one else 'no'}")
        lines.append(f"pairwise distinct: {'yes' if self.distinct else 'no'}")
        return "\n".join(lines)


def family_distinguisher(spec: FamilySpec, k_max: int) -> FamilyReport:
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    rows = []
    for k in range(1, k_max + 1):
        d = family_generator(spec.with_k(k))
        rows.append(FamilyRow(k, d.n, ht_polynomial(d), seifert_circle_count(d), slice_genus_positive(d)))
    hts = {r.ht for r in rows}
    steps = all(b.genus - a.genus == 1 for a, b in zip(rows, rows[1:]))
    nonzero = all(not r.ht.is_zero() for r in rows)
    return FamilyReport(spec, rows, len(hts) == 1, nonzero, steps, nonzero)
