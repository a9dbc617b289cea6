"""Births, deaths and saddles on multi-circle Gauss diagrams; certificate replay.

Certificate files are line oriented::

    start: O1+ U1+
    claim: slice
    R1_remove chord=1
    birth
    saddle arc=0:0 arc=1:0
    death circle=1
    mark

``arc=c:p`` is the gap just before position ``p`` on circle ``c``.  Any
Reidemeister move line from :mod:`vknot.rewriting` may appear; on
multi-circle states its arcs use the same ``c:p`` form.  ``mark`` records
the current single-circle state as the far end of a concordance.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Union

from .gauss import GaussCodeError, GaussDiagram, MultiDiagram, parse_gauss_code
from .invariants import ht_polynomial
from .rewriting import Move, MoveError, apply_move, inverse, parse_move, random_move

CLAIMS = ("concordance", "slice", "ribbon", "cobordism")


class CertificateError(ValueError):
    """Unparseable certificate text.  ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Birth:
    def to_text(self) -> str:
        return "birth"


@dataclass(frozen=True)
class Death:
    circle: int

    def to_text(self) -> str:
        return f"death circle={self.circle}"


@dataclass(frozen=True)
class Saddle:
    arc1: tuple[int, int]
    arc2: tuple[int, int]

    def to_text(self) -> str:
        return f"saddle arc={self.arc1[0]}:{self.arc1[1]} arc={self.arc2[0]}:{self.arc2[1]}"


@dataclass(frozen=True)
class Mark:
    def to_text(self) -> str:
        return "mark"


@dataclass(frozen=True)
class Reidemeister:
    move: Move

    def to_text(self) -> str:
        return self.move.to_text()


CobordStep = Union[Birth, Death, Saddle, Mark, Reidemeister]


class StepError(ValueError):
    """A cobordism step that is not legal in the current state."""


def _check_arc(m: MultiDiagram, arc: tuple[int, int]) -> None:
    c, g = arc
    if not 0 <= c < len(m.circles):
        raise StepError(f"no circle {c}")
    if not 0 <= g < max(len(m.circles[c]), 1):
        raise StepError(f"arc {g} out of range on circle {c}")


def apply_step(m: MultiDiagram, step: CobordStep) -> MultiDiagram:
    """One birth, death, saddle or Reidemeister move.

    A saddle between two arcs of one circle splits off the stretch running
    forward from the first arc to the second as a new last circle (empty
    when both arcs coincide).  A saddle between two circles opens the
    second circle at its arc and splices it into the first at its arc; the
    second circle is removed.  Both keep every circle's orientation.
    """
    circles = list(m.circles)
    if isinstance(step, Birth):
        return MultiDiagram(tuple(circles) + ((),), m.signs)
    if isinstance(step, Death):
        c = step.circle
        if not 0 <= c < len(circles):
            raise StepError(f"no circle {c}")
        if circles[c]:
            raise StepError(f"death on circle {c}, which carries chord endpoints")
        del circles[c]
        return MultiDiagram(tuple(circles), m.signs)
    if isinstance(step, Saddle):
        _check_arc(m, step.arc1)
        _check_arc(m, step.arc2)
        (c1, p), (c2, q) = step.arc1, step.arc2
        if c1 == c2:
            w = circles[c1]
            if p <= q:
                piece, rest = w[p:q], w[:p] + w[q:]
            else:
                piece, rest = w[p:] + w[:q], w[q:p]
            circles[c1] = rest
            circles.append(piece)
        else:
            w1, w2 = circles[c1], circles[c2]
            circles[c1] = w1[:p] + w2[q:] + w2[:q] + w1[p:]
            del circles[c2]
        return MultiDiagram(tuple(circles), m.signs)
    if isinstance(step, Mark):
        if len(circles) != 1:
            raise StepError("mark needs a single-circle state")
        return m
    if isinstance(step, Reidemeister):
        try:
            return apply_move(m, step.move)
        except MoveError as exc:
            raise StepError(str(exc)) from None
    raise TypeError(f"not a cobordism step: {step!r}")


@dataclass(frozen=True)
class CobordismCertificate:
    start: GaussDiagram
    steps: tuple[CobordStep, ...]
    claimed_kind: str

    def __post_init__(self):
        if self.claimed_kind not in CLAIMS:
            raise ValueError(f"unknown claim {self.claimed_kind!r}")
        object.__setattr__(self, "steps", tuple(self.steps))

    def to_text(self) -> str:
        lines = [f"start: {self.start}", f"claim: {self.claimed_kind}"]
        lines += [s.to_text() for s in self.steps]
        return "\n".join(lines) + "\n"


def _arc_field(val: str) -> tuple[int, int]:
    c, sep, g = val.partition(":")
    if not sep:
        return 0, int(c)
    return int(c), int(g)


def parse_step(line: str) -> CobordStep:
    fields = line.split()
    head = fields[0]
    if head == "birth" and len(fields) == 1:
        return Birth()
    if head == "mark" and len(fields) == 1:
        return Mark()
    if head == "death" and len(fields) == 2 and fields[1].startswith("circle="):
        return Death(int(fields[1][len("circle="):]))
    if head == "saddle" and len(fields) == 3 and all(f.startswith("arc=") for f in fields[1:]):
        return Saddle(_arc_field(fields[1][4:]), _arc_field(fields[2][4:]))
    if head in ("birth", "mark", "death", "saddle"):
        raise ValueError(f"bad {head} line {line!r}")
    return Reidemeister(parse_move(line))


def parse_certificate(text: str) -> CobordismCertificate:
    start = claim = None
    steps: list[CobordStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if start is None:
                if not line.startswith("start:"):
                    raise CertificateError("expected 'start: <gauss code>'", lineno)
                start = parse_gauss_code(line[len("start:"):])
            elif claim is None:
                if not line.startswith("claim:"):
                    raise CertificateError("expected 'claim: concordance|slice|ribbon|cobordism'", lineno)
                claim = line[len("claim:"):].strip()
                if claim not in CLAIMS:
                    raise CertificateError(f"unknown claim {claim!r}", lineno)
            else:
                steps.append(parse_step(line))
        except CertificateError:
            raise
        except (GaussCodeError, MoveError, ValueError) as exc:
            raise CertificateError(str(exc), lineno) from None
    if start is None or claim is None:
        raise CertificateError("certificate needs 'start:' and 'claim:' lines")
    return CobordismCertificate(start, tuple(steps), claim)


@dataclass
class CertificateReport:
    valid: bool
    b: int = 0
    s: int = 0
    d: int = 0
    euler: int = 0
    genus: int | None = None
    connected: bool = True
    component_euler: list[int] = field(default_factory=list)
    end_state: MultiDiagram | None = None
    marked: GaussDiagram | None = None
    failure_step: int | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "births": self.b,
            "saddles": self.s,
            "deaths": self.d,
            "euler": self.euler,
            "genus": self.genus,
            "connected": self.connected,
            "component_euler": self.component_euler,
            "end_state": None if self.end_state is None else str(self.end_state),
            "marked": None if self.marked is None else str(self.marked),
            "failure_step": self.failure_step,
            "reason": self.reason,
        }

    def __str__(self):
        return json.dumps(self.to_json())


class _Components:
    """Union-find over surface pieces, one node per circle ever present."""

    def __init__(self):
        self.parent: list[int] = []
        self.euler: list[int] = []

    def new(self) -> int:
        self.parent.append(len(self.parent))
        self.euler.append(0)
        return len(self.parent) - 1

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            self.euler[rb] += self.euler[ra]
            self.euler[ra] = 0

    def roots(self) -> list[int]:
        return sorted({self.find(i) for i in range(len(self.parent))})


def check_certificate(c: CobordismCertificate) -> CertificateReport:
    """Replay a certificate and judge its claim.

    Valid when every step is legal, the final state is one crossing-free
    circle, and the counts fit the claim: ``#b - #s + #d = 0`` for
    concordance, slice and ribbon (also on the stretch before a ``mark``),
    no births for ribbon, no constraint for cobordism.
    """
    state = MultiDiagram.from_gauss(c.start)
    comps = _Components()
    nodes = [comps.new()]
    report = CertificateReport(valid=False)
    mark_counts = None

    def fail(i: int | None, reason: str) -> CertificateReport:
        report.failure_step = i
        report.reason = reason
        report.end_state = state
        report.euler = report.b + report.d - report.s
        return report

    for i, step in enumerate(c.steps):
        if isinstance(step, Birth) and c.claimed_kind == "ribbon":
            report.b += 1
            return fail(i, "birth forbidden in ribbon certificate")
        try:
            new_state = apply_step(state, step)
        except StepError as exc:
            return fail(i, str(exc))
        if isinstance(step, Birth):
            report.b += 1
            node = comps.new()
            comps.euler[node] += 1
            nodes.append(node)
        elif isinstance(step, Death):
            report.d += 1
            node = nodes.pop(step.circle)
            comps.euler[comps.find(node)] += 1
        elif isinstance(step, Saddle):
            report.s += 1
            (c1, _), (c2, _) = step.arc1, step.arc2
            if c1 == c2:
                nodes.append(nodes[c1])
                comps.euler[comps.find(nodes[c1])] -= 1
            else:
                comps.union(nodes[c2], nodes[c1])
                comps.euler[comps.find(nodes[c1])] -= 1
                del nodes[c2]
        elif isinstance(step, Mark):
            if report.marked is not None:
                return fail(i, "more than one mark")
            report.marked = new_state.to_gauss()
            mark_counts = (report.b, report.s, report.d)
        state = new_state

    report.end_state = state
    report.euler = report.b + report.d - report.s
    roots = comps.roots()
    report.connected = len(roots) == 1
    report.component_euler = [comps.euler[r] for r in roots]
    if report.connected and (report.s - report.b - report.d) % 2 == 0:
        report.genus = (report.s - report.b - report.d) // 2
    if not state.is_trivial_circle():
        return fail(None, "end state is not a single crossing-free circle")
    if c.claimed_kind != "cobordism":
        if report.b - report.s + report.d != 0:
            return fail(None, f"#b-#s+#d = {report.b - report.s + report.d}, expected 0")
        if mark_counts is not None and mark_counts[0] - mark_counts[1] + mark_counts[2] != 0:
            return fail(None, "#b-#s+#d is not 0 on the stretch before the mark")
    if c.claimed_kind == "ribbon" and report.b:
        return fail(None, "birth forbidden in ribbon certificate")
    report.valid = True
    return report


def ht_endpoints_check(c: CobordismCertificate) -> bool:
    """Whether the HT polynomials of the two ends of a valid concordance agree.

    The far end is the ``mark`` state if there is one, otherwise the final
    crossing-free circle.  A ``False`` here on a valid certificate would
    contradict concordance invariance of the HT polynomial.
    """
    report = check_certificate(c)
    if not report.valid:
        raise ValueError(f"certificate invalid: {report.reason}")
    if c.claimed_kind == "cobordism":
        raise ValueError("certificate is a cobordism, not a concordance")
    far = report.marked if report.marked is not None else report.end_state.to_gauss()
    return ht_polynomial(c.start) == ht_polynomial(far)


def _exact_random_move(state: MultiDiagram, rng, max_n: int, tries: int = 20):
    """A random Reidemeister move whose inverse restores ``state`` exactly (same labels, same basepoints)."""
    for _ in range(tries):
        m = random_move(state, rng, max_n)
        if m is None:
            return None
        after = apply_move(state, m)
        inv = inverse(state, m)
        try:
            if apply_move(after, inv) == state:
                return m, after, inv
        except MoveError:
            pass
    return None


def random_concordance_certificate(
    seed: int,
    blocks: int = 4,
    moves_per_block: int = 6,
    max_n: int = 12,
    ribbon: bool = False,
    mark: bool = True,
) -> CobordismCertificate:
    """A valid concordance (or ribbon) certificate from a random ribbon knot to the unknot.

    Built forward from the unknot out of blocks with ``#b - #s + #d = 0``
    each (random moves; birth, moves on two circles, merging saddle; empty
    split and death), then read backwards with every step inverted.  The
    inverses are exact, so positions in the reversed steps are valid as
    written.  With ``mark`` a ``mark`` line is placed at a random block
    boundary.
    """
    rng = random.Random(seed)
    state = MultiDiagram(((),), {})
    backward: list[list[CobordStep]] = []
    for _ in range(blocks):
        kinds = ["walk", "band"] if ribbon else ["walk", "band", "bubble"]
        kind = rng.choice(kinds)
        undo: list[CobordStep] = []
        if kind == "walk":
            for _ in range(moves_per_block):
                found = _exact_random_move(state, rng, max_n)
                if found is None:
                    break
                _, state, inv = found
                undo.append(Reidemeister(inv))
        elif kind == "band":
            state = apply_step(state, Birth())
            undo.append(Death(1))
            for _ in range(moves_per_block):
                found = _exact_random_move(state, rng, max_n)
                if found is None:
                    break
                _, state, inv = found
                undo.append(Reidemeister(inv))
            if not state.circles[0] and state.circles[1]:
                # an empty circle 0 cannot be split back off in place; give it a kink first
                kink = Move("R1_add", arcs=((0, 0),), signs=(rng.choice((1, -1)),), order="OU")
                undo.append(Reidemeister(inverse(state, kink)))
                state = apply_move(state, kink)
            w0, w1 = state.circles
            p = rng.randrange(max(len(w0), 1))
            state = apply_step(state, Saddle((0, p), (1, 0)))
            undo.append(Saddle((0, p), (0, p + len(w1))))
        else:
            w = state.circles[0]
            p = rng.randrange(max(len(w), 1))
            state = apply_step(state, Saddle((0, p), (0, p)))
            state = apply_step(state, Death(1))
            undo += [Saddle((0, p), (1, 0)), Birth()]
        backward.append(undo)

    start = state.to_gauss()
    steps: list[CobordStep] = []
    boundaries = []
    for block in reversed(backward):
        steps.extend(reversed(block))
        boundaries.append(len(steps))
    if mark and boundaries:
        at = rng.choice(boundaries)
        steps.insert(at, Mark())
    return CobordismCertificate(start, tuple(steps), "ribbon" if ribbon else "concordance")
