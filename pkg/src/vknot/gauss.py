"""Gauss diagrams of virtual knots and their signed Gauss code text format.

A diagram is a cyclic word of ``2n`` endpoint tokens.  Every chord appears
twice, once as ``O`` (the over strand) and once as ``U`` (the under strand);
the arrow of a chord runs from its ``O`` endpoint to its ``U`` endpoint.
The text format is whitespace separated tokens ``O3+``, ``U12-``, ... with
``#`` starting a comment that runs to the end of the line.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

OVER = "O"
UNDER = "U"

_TOKEN = re.compile(r"([OU])(\d+)([+-])\Z")


class GaussCodeError(ValueError):
    """Raised for malformed signed Gauss codes.

    ``line`` and ``column`` are 1-based and point at the offending token
    when the error can be tied to one.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class Endpoint(NamedTuple):
    chord: int
    role: str


@dataclass(frozen=True)
class Chord:
    id: int
    sign: int
    over_pos: int
    under_pos: int


def _sign_char(sign: int) -> str:
    return "+" if sign > 0 else "-"


def check_word(words: Iterable[tuple[Endpoint, ...]], signs: Mapping[int, int]) -> None:
    """Validate endpoint words (one per circle) against a sign table."""
    overs: set[int] = set()
    unders: set[int] = set()
    count = 0
    for word in words:
        for chord, role in word:
            count += 1
            if role == OVER:
                overs.add(chord)
            elif role == UNDER:
                unders.add(chord)
            else:
                raise ValueError(f"bad role {role!r} on chord {chord}")
    if len(overs) + len(unders) != count:
        seen = set()
        for word in words:
            for tok in word:
                if tok in seen:
                    raise ValueError(f"chord {tok[0]} has two {tok[1]} endpoints")
                seen.add(tok)
    if overs != unders:
        raise ValueError(f"chord {min(overs ^ unders)} has a single endpoint")
    if overs != set(signs):
        raise ValueError("sign table does not match the chords of the word")
    for chord, s in signs.items():
        if s != 1 and s != -1:
            raise ValueError(f"chord {chord} has sign {s}, expected +1 or -1")


@dataclass(frozen=True, eq=False)
class GaussDiagram:
    """An immutable single-circle Gauss diagram.

    ``word`` lists the endpoints in circle order starting from an arbitrary
    basepoint; ``signs`` maps chord id to its local writhe.  Equality is
    exact (same basepoint, same labels); use :func:`canonical_form` to
    compare diagrams up to rotation and relabeling.
    """

    word: tuple[Endpoint, ...]
    signs: Mapping[int, int]

    def __post_init__(self):
        word = self.word
        if type(word) is not tuple or not all(type(t) is Endpoint for t in word):
            word = tuple(Endpoint(int(c), r) for c, r in word)
        signs = {int(k): int(v) for k, v in self.signs.items()}
        check_word([word], signs)
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "signs", MappingProxyType(signs))

    @classmethod
    def trivial(cls) -> GaussDiagram:
        return cls((), {})

    @property
    def n(self) -> int:
        return len(self.signs)

    @cached_property
    def positions(self) -> Mapping[int, tuple[int, int]]:
        """Chord id -> (over position, under position)."""
        over: dict[int, int] = {}
        under: dict[int, int] = {}
        for pos, (chord, role) in enumerate(self.word):
            (over if role == OVER else under)[chord] = pos
        return MappingProxyType({c: (over[c], under[c]) for c in over})

    def chord_ids(self) -> list[int]:
        """Chord ids in order of first appearance along the word."""
        seen: dict[int, None] = {}
        for chord, _ in self.word:
            seen.setdefault(chord, None)
        return list(seen)

    def chords(self) -> list[Chord]:
        return [Chord(c, self.signs[c], *self.positions[c]) for c in self.chord_ids()]

    def partner(self, pos: int) -> int:
        """Position of the other endpoint of the chord at ``pos``."""
        o, u = self.positions[self.word[pos].chord]
        return u if pos == o else o

    def rotate(self, k: int) -> GaussDiagram:
        if not self.word:
            return self
        k %= len(self.word)
        return GaussDiagram(self.word[k:] + self.word[:k], self.signs)

    def relabel(self, mapping: Mapping[int, int]) -> GaussDiagram:
        word = tuple(Endpoint(mapping[c], r) for c, r in self.word)
        return GaussDiagram(word, {mapping[c]: s for c, s in self.signs.items()})

    def __eq__(self, other):
        if not isinstance(other, GaussDiagram):
            return NotImplemented
        return self.word == other.word and dict(self.signs) == dict(other.signs)

    def __hash__(self):
        return hash((self.word, frozenset(self.signs.items())))

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"GaussDiagram({serialize(self)!r})"


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_gauss_code(text: str) -> GaussDiagram:
    """Parse a signed Gauss code such as ``"O1+ O2+ U1+ U2+"``.

    >>> parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").n
    3
    """
    word: list[Endpoint] = []
    signs: dict[int, int] = {}
    where: dict[tuple[int, str], tuple[int, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = _strip_comment(line)
        for m in re.finditer(r"\S+", body):
            tok, col = m.group(), m.start() + 1
            tm = _TOKEN.match(tok)
            if tm is None:
                raise GaussCodeError(f"malformed token {tok!r}", lineno, col)
            role, chord, sign = tm.group(1), int(tm.group(2)), 1 if tm.group(3) == "+" else -1
            if chord == 0:
                raise GaussCodeError("chord ids must be positive", lineno, col)
            if (chord, role) in where:
                raise GaussCodeError(f"chord {chord} has two {role} endpoints", lineno, col)
            if chord in signs and signs[chord] != sign:
                raise GaussCodeError(f"sign mismatch on chord {chord}", lineno, col)
            where[(chord, role)] = (lineno, col)
            signs[chord] = sign
            word.append(Endpoint(chord, role))
    for chord in signs:
        for role in (OVER, UNDER):
            if (chord, role) not in where:
                other = OVER if role == UNDER else UNDER
                raise GaussCodeError(
                    f"chord {chord} occurs once (missing {role} endpoint)", *where[(chord, other)]
                )
    return GaussDiagram(tuple(word), signs)


def format_word(word: Iterable[Endpoint], signs: Mapping[int, int]) -> str:
    return " ".join(f"{r}{c}{_sign_char(signs[c])}" for c, r in word)


def serialize(d: GaussDiagram) -> str:
    return format_word(d.word, d.signs)


def _relabel_from(word: tuple[Endpoint, ...], signs: Mapping[int, int], start: int):
    """Key and relabeled word for the rotation of ``word`` beginning at ``start``."""
    labels: dict[int, int] = {}
    key = []
    out = []
    m = len(word)
    for i in range(m):
        chord, role = word[(start + i) % m]
        new = labels.setdefault(chord, len(labels) + 1)
        key.append((role, new, -signs[chord]))
        out.append(Endpoint(new, role))
    return tuple(key), tuple(out), labels


def canonical_form(d: GaussDiagram) -> GaussDiagram:
    """Minimal representative over all rotations, ids renumbered by first occurrence.

    Tokens compare as (role, id, sign) with ``O < U`` and ``+ < -``.
    """
    if not d.word:
        return d
    best = None
    for start in range(len(d.word)):
        key, out, labels = _relabel_from(d.word, d.signs, start)
        if best is None or key < best[0]:
            best = (key, out, labels)
    _, out, labels = best
    return GaussDiagram(out, {labels[c]: s for c, s in d.signs.items()})


def is_interlaced(o1: int, u1: int, o2: int, u2: int) -> bool:
    lo, hi = min(o1, u1), max(o1, u1)
    return (lo < o2 < hi) != (lo < u2 < hi)


def interlacement(d: GaussDiagram) -> frozenset[frozenset[int]]:
    """Unordered pairs of chords whose endpoints alternate around the circle."""
    ids = d.chord_ids()
    pos = d.positions
    pairs = set()
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            if is_interlaced(*pos[a], *pos[b]):
                pairs.add(frozenset((a, b)))
    return frozenset(pairs)


def connected_sum(d1: GaussDiagram, d2: GaussDiagram, cut1: int = 0, cut2: int = 0) -> GaussDiagram:
    """Open ``d1`` at arc ``cut1`` and ``d2`` at arc ``cut2`` and splice them.

    Arc ``k`` is the gap just before position ``k``.  Chords of ``d2`` are
    shifted above the largest id of ``d1`` so the summands stay disjoint.
    """
    for d, cut in ((d1, cut1), (d2, cut2)):
        limit = max(len(d.word), 1)
        if not 0 <= cut < limit:
            raise ValueError(f"cut {cut} out of range for a diagram with {d.n} chords")
    shift = max(d1.signs, default=0)
    w1 = d1.word[cut1:] + d1.word[:cut1]
    w2 = tuple(Endpoint(c + shift, r) for c, r in d2.word[cut2:] + d2.word[:cut2])
    signs = dict(d1.signs)
    signs.update({c + shift: s for c, s in d2.signs.items()})
    return GaussDiagram(w1 + w2, signs)


def random_diagram(n: int, rng: random.Random, positive: bool = False) -> GaussDiagram:
    """Uniformly shuffled word on ``n`` chords with random roles and signs."""
    tokens = [Endpoint(c, r) for c in range(1, n + 1) for r in (OVER, UNDER)]
    rng.shuffle(tokens)
    signs = {c: 1 if positive else rng.choice((1, -1)) for c in range(1, n + 1)}
    return GaussDiagram(tuple(tokens), signs)


@dataclass(frozen=True, eq=False)
class MultiDiagram:
    """Several oriented circles sharing one set of signed chords.

    A chord may join endpoints on different circles.  An empty word is a
    crossing-free circle.
    """

    circles: tuple[tuple[Endpoint, ...], ...]
    signs: Mapping[int, int]

    def __post_init__(self):
        circles = tuple(tuple(Endpoint(int(c), r) for c, r in w) for w in self.circles)
        signs = {int(k): int(v) for k, v in self.signs.items()}
        check_word(circles, signs)
        object.__setattr__(self, "circles", circles)
        object.__setattr__(self, "signs", MappingProxyType(signs))

    @classmethod
    def from_gauss(cls, d: GaussDiagram) -> MultiDiagram:
        return cls((d.word,), d.signs)

    @property
    def n(self) -> int:
        return len(self.signs)

    def is_single_circle(self) -> bool:
        return len(self.circles) == 1

    def is_trivial_circle(self) -> bool:
        return len(self.circles) == 1 and not self.circles[0]

    def to_gauss(self) -> GaussDiagram:
        if len(self.circles) != 1:
            raise ValueError(f"diagram has {len(self.circles)} circles, expected one")
        return GaussDiagram(self.circles[0], self.signs)

    def canonical_key(self) -> tuple:
        """Key equal for diagrams that agree up to per-circle rotation and relabeling.

        Circle order is significant.  Brute force over rotation choices, so
        only meant for small diagrams.
        """
        best = None
        ranges = [range(max(len(w), 1)) for w in self.circles]
        for starts in itertools.product(*ranges):
            labels: dict[int, int] = {}
            key = []
            for w, s in zip(self.circles, starts):
                rot = w[s:] + w[:s]
                key.append(tuple((r, labels.setdefault(c, len(labels) + 1), -self.signs[c]) for c, r in rot))
            key = tuple(key)
            if best is None or key < best:
                best = key
        return best

    def __eq__(self, other):
        if not isinstance(other, MultiDiagram):
            return NotImplemented
        return self.circles == other.circles and dict(self.signs) == dict(other.signs)

    def __hash__(self):
        return hash((self.circles, frozenset(self.signs.items())))

    def __str__(self):
        return " | ".join(format_word(w, self.signs) or "()" for w in self.circles)

    def __repr__(self):
        return f"MultiDiagram({str(self)!r})"
