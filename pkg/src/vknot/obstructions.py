"""One-sided obstructions read off the HT polynomial and the positive slice genus.

Every verdict is ``Obstructed`` or ``Inconclusive``; nothing here ever
claims that a concordance exists.  Each report names the claim it leans on
through one of the identifiers in ``CLAIMS``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .gauss import GaussDiagram
from .invariants import ht_polynomial, is_positive, slice_genus_positive

OBSTRUCTED = "Obstructed"
INCONCLUSIVE = "Inconclusive"

CLAIMS = {
    "sf-concordance": "semi-fibered concordant links have concordant associated virtual knots; w is a concordance invariant",
    "slice-disc": "a disc disjoint from the fibered component makes the associated virtual knot slice, so w = 0",
    "slice-genus": "a positive diagram has slice genus (n + 1 - r) / 2",
    "ribbon-disc": "a ribbon disc disjoint from the fibered component makes the associated virtual knot ribbon, so w = 0",
    "non-split": "w != 0 means the associated virtual knot is not classical, so the link is non-split",
    "satellite": "for r(P) != 0 the satellite has w = r^2 w(t^r), so distinct w survive the satellite",
}


@dataclass
class ObstructionReport:
    kind: str
    verdict: str
    reason: str
    cited_claim: str
    values: dict = field(default_factory=dict)

    @property
    def obstructed(self) -> bool:
        return self.verdict == OBSTRUCTED

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "reason": self.reason,
            "cited_claim": self.cited_claim,
            "claim_text": CLAIMS[self.cited_claim],
            "values": self.values,
        }

    def __str__(self):
        return f"{self.verdict} [{self.cited_claim}]: {self.reason}"


def _report(kind, obstructed, evidence, reason, claim, values) -> ObstructionReport:
    # soundness: Obstructed only with the inequality actually in hand
    if obstructed:
        assert evidence, (kind, values)
    return ObstructionReport(kind, OBSTRUCTED if obstructed else INCONCLUSIVE, reason, claim, values)


def obstruct_sf_concordance(d0: GaussDiagram, d1: GaussDiagram) -> ObstructionReport:
    w0, w1 = ht_polynomial(d0), ht_polynomial(d1)
    differ = w0 != w1
    values = {"w0": str(w0), "w1": str(w1)}
    if differ:
        reason = f"w differs ({w0} vs {w1}); the links are not semi-fibered concordant"
    else:
        reason = f"both diagrams have w = {w0}"
    return _report("sf", differ, w0 != w1, reason, "sf-concordance", values)


def obstruct_slice_disc(d: GaussDiagram) -> ObstructionReport:
    w = ht_polynomial(d)
    values: dict = {"w": str(w), "positive": is_positive(d)}
    if not w.is_zero():
        reason = f"w = {w} != 0; the knot bounds no disc disjoint from the fibered component"
        return _report("slice", True, not w.is_zero(), reason, "slice-disc", values)
    if is_positive(d):
        genus = slice_genus_positive(d)
        values["slice_genus"] = genus
        if genus > 0:
            reason = f"w = 0 but the positive diagram has slice genus {genus} > 0"
            return _report("slice", True, genus > 0, reason, "slice-genus", values)
    return _report("slice", False, False, "w = 0 and no genus evidence", "slice-disc", values)


def obstruct_ribbon_disc(d: GaussDiagram) -> ObstructionReport:
    w = ht_polynomial(d)
    values = {"w": str(w)}
    if not w.is_zero():
        reason = f"w = {w} != 0; every ribbon disc for K must intersect J"
        return _report("ribbon", True, not w.is_zero(), reason, "ribbon-disc", values)
    return _report("ribbon", False, False, "w = 0", "ribbon-disc", values)


def obstruct_split(d: GaussDiagram) -> ObstructionReport:
    w = ht_polynomial(d)
    values = {"w": str(w)}
    if not w.is_zero():
        reason = f"w = {w} != 0; the link is non-split"
        return _report("split", True, not w.is_zero(), reason, "non-split", values)
    return _report("split", False, False, "w = 0", "non-split", values)


def obstruct_satellite_injectivity(d0: GaussDiagram, d1: GaussDiagram, r: int) -> ObstructionReport:
    if r < 0:
        raise ValueError("winding number must be non-negative")
    w0, w1 = ht_polynomial(d0), ht_polynomial(d1)
    values = {"w0": str(w0), "w1": str(w1), "r": r}
    if r == 0:
        reason = "r = 0: satellites with zero winding number can identify distinct classes"
        return _report("satellite", False, False, reason, "satellite", values)
    if w0 != w1:
        sw0 = w0.substitute_power(r).scale(r * r)
        sw1 = w1.substitute_power(r).scale(r * r)
        values.update(satellite_w0=str(sw0), satellite_w1=str(sw1))
        reason = f"w differs ({w0} vs {w1}) and r = {r} != 0; the satellites are not semi-fibered concordant"
        return _report("satellite", True, sw0 != sw1, reason, "satellite", values)
    return _report("satellite", False, False, f"both diagrams have w = {w0}", "satellite", values)


KINDS = ("sf", "slice", "ribbon", "split", "satellite")

