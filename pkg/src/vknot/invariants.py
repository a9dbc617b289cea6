"""Chord indices, the HT polynomial, virtual Seifert circles and slice genus."""
from __future__ import annotations

import re
from types import MappingProxyType
from typing import Mapping

from .gauss import UNDER, GaussDiagram


class HTPolynomial:
    """Integer polynomial in ``t`` whose terms all have degree >= 1.

    Stored as a degree -> coefficient map with zero coefficients dropped;
    the empty map is the zero polynomial.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        for deg, c in (coeffs or {}).items():
            deg, c = int(deg), int(c)
            if c == 0:
                continue
            if deg < 1:
                raise ValueError(f"HT polynomial terms need degree >= 1, got t^{deg}")
            clean[deg] = c
        self._coeffs = MappingProxyType(dict(sorted(clean.items())))

    @property
    def coeffs(self) -> Mapping[int, int]:
        return self._coeffs

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, HTPolynomial):
            return dict(self._coeffs) == dict(other._coeffs)
        if other == 0:
            return not self._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: HTPolynomial) -> HTPolynomial:
        out = dict(self._coeffs)
        for deg, c in other._coeffs.items():
            out[deg] = out.get(deg, 0) + c
        return HTPolynomial(out)

    def __neg__(self):
        return HTPolynomial({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other: HTPolynomial) -> HTPolynomial:
        return self + (-other)

    def scale(self, k: int) -> HTPolynomial:
        return HTPolynomial({d: k * c for d, c in self._coeffs.items()})

    def substitute_power(self, r: int) -> HTPolynomial:
        """The polynomial with ``t`` replaced by ``t**r``.

        For ``r = 0`` every term would become a constant; constants are not
        part of the HT polynomial, so the result is zero.
        """
        if r < 0:
            raise ValueError("power must be non-negative")
        if r == 0:
            return HTPolynomial()
        return HTPolynomial({d * r: c for d, c in self._coeffs.items()})

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for deg, c in self._coeffs.items():
            term = f"{abs(c)}t^{deg}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"HTPolynomial({str(self)!r})"

    def to_json(self) -> dict[str, int]:
        return {str(d): c for d, c in self._coeffs.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> HTPolynomial:
        return cls({int(d): c for d, c in data.items()})

    @classmethod
    def parse(cls, text: str) -> HTPolynomial:
        """Inverse of ``str``: ``"2t^1 - 1t^3"`` or ``"0"``."""
        text = text.strip()
        if text == "0":
            return cls()
        coeffs: dict[int, int] = {}
        pos = 0
        for m in re.finditer(r"\s*([+-])?\s*(\d+)t\^(\d+)", text):
            if m.start() != pos:
                raise ValueError(f"cannot parse polynomial {text!r}")
            pos = m.end()
            c = int(m.group(2)) * (-1 if m.group(1) == "-" else 1)
            deg = int(m.group(3))
            coeffs[deg] = coeffs.get(deg, 0) + c
        if pos != len(text) or not coeffs:
            raise ValueError(f"cannot parse polynomial {text!r}")
        return cls(coeffs)


def _in_half(pos: int, start: int, end: int, length: int) -> bool:
    """Whether ``pos`` lies strictly inside the arc running forward from ``start`` to ``end``."""
    return 0 < (pos - start) % length < (end - start) % length


def chord_index(d: GaussDiagram, x: int, flip: bool = False) -> int:
    """Signed count of arrowheads of chords crossing ``x`` in its distinguished half.

    The distinguished half of ``x`` is the arc from its under endpoint
    forward to its over endpoint.  ``flip`` selects the opposite half,
    which negates every index.
    """
    if x not in d.signs:
        raise KeyError(f"no chord {x} in diagram")
    pos = d.positions
    length = len(d.word)
    xo, xu = pos[x]
    start, end = (xo, xu) if flip else (xu, xo)
    total = 0
    for a, (ao, au) in pos.items():
        if a == x:
            continue
        head_in = _in_half(au, start, end, length)
        if head_in == _in_half(ao, start, end, length):
            continue  # not interlaced
        total += d.signs[a] if head_in else -d.signs[a]
    return total


def index_table(d: GaussDiagram, flip: bool = False) -> dict[int, int]:
    """All chord indices at once, in linear time.

    A chord with both endpoints inside a half contributes ``+sign - sign``
    to the walk below, so summing ``+sign`` at every under endpoint and
    ``-sign`` at every over endpoint strictly inside the half counts
    exactly the interlacing chords.
    """
    length = len(d.word)
    signs = d.signs
    steps = [signs[c] if role == UNDER else -signs[c] for c, role in d.word]
    prefix = [0]
    total = 0
    for v in steps + steps:
        total += v
        prefix.append(total)
    out = {}
    for c, (o, u) in sorted(d.positions.items()):
        start, end = (o, u) if flip else (u, o)
        if end < start:
            end += length
        out[c] = prefix[end] - prefix[start + 1]
    return out


def ht_polynomial(d: GaussDiagram, flip: bool = False) -> HTPolynomial:
    coeffs: dict[int, int] = {}
    for c, idx in index_table(d, flip).items():
        if idx:
            coeffs[abs(idx)] = coeffs.get(abs(idx), 0) + d.signs[c]
    return HTPolynomial(coeffs)


def seifert_permutation(d: GaussDiagram) -> list[int]:
    """``pos -> partner(pos + 1)``: the oriented smoothing at every chord."""
    m = len(d.word)
    partner = [0] * m
    for o, u in d.positions.values():
        partner[o], partner[u] = u, o
    return partner[1:] + partner[:1]


def count_cycles(perm: list[int]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for i in range(len(perm)):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return cycles


def seifert_circle_count(d: GaussDiagram) -> int:
    if not d.word:
        return 1
    return count_cycles(seifert_permutation(d))


def is_positive(d: GaussDiagram) -> bool:
    return all(s == 1 for s in d.signs.values())


def writhe(d: GaussDiagram) -> int:
    return sum(d.signs.values())


def slice_genus_positive(d: GaussDiagram) -> int:
    """Slice genus ``(n + 1 - r) / 2`` of a diagram with only positive chords."""
    if not is_positive(d):
        raise ValueError("slice genus formula needs a diagram whose chords are all positive")
    r = seifert_circle_count(d)
    twice = d.n + 1 - r
    assert twice % 2 == 0 and twice >= 0, (d, r)
    return twice // 2

