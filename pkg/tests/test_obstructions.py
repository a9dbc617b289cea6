import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vknot.families import FamilySpec, family_generator
from vknot.gauss import GaussDiagram, parse_gauss_code, random_diagram
from vknot.invariants import ht_polynomial
from vknot.obstructions import (
    CLAIMS,
    INCONCLUSIVE,
    OBSTRUCTED,
    obstruct_ribbon_disc,
    obstruct_satellite_injectivity,
    obstruct_sf_concordance,
    obstruct_slice_disc,
    obstruct_split,
)
from vknot.families import torus_code

from conftest import diagrams

EMPTY = GaussDiagram.trivial()
FAMILY = family_generator(FamilySpec(1, ((1, 1),), 1))
FIGURE_EIGHT = parse_gauss_code("O1+ U2+ O3- U4- O2+ U1+ O4- U3-")
NEG_VTREFOIL = parse_gauss_code("O1- O2- U1- U2-")


def test_sf_examples(trefoil):
    assert obstruct_sf_concordance(FAMILY, EMPTY).verdict == OBSTRUCTED
    assert obstruct_sf_concordance(FAMILY, FAMILY).verdict == INCONCLUSIVE
    assert obstruct_sf_concordance(trefoil, FIGURE_EIGHT).verdict == INCONCLUSIVE


def test_slice_examples(vtrefoil):
    rep = obstruct_slice_disc(vtrefoil)
    assert rep.obstructed and rep.values["w"] == "2t^1" and rep.cited_claim == "slice-disc"
    assert obstruct_slice_disc(EMPTY).verdict == INCONCLUSIVE
    by_genus = obstruct_slice_disc(torus_code(5))
    assert by_genus.obstructed and by_genus.cited_claim == "slice-genus" and by_genus.values["slice_genus"] == 2
    assert obstruct_slice_disc(FIGURE_EIGHT).verdict == INCONCLUSIVE


def test_ribbon_examples(trefoil):
    assert ht_polynomial(NEG_VTREFOIL) == ht_polynomial(NEG_VTREFOIL).parse("-2t^1")
    rep = obstruct_ribbon_disc(NEG_VTREFOIL)
    assert rep.obstructed and "every ribbon disc for K must intersect J" in rep.reason
    assert obstruct_ribbon_disc(EMPTY).verdict == INCONCLUSIVE
    assert obstruct_ribbon_disc(trefoil).verdict == INCONCLUSIVE


def test_split_examples(vtrefoil):
    assert obstruct_split(FAMILY).obstructed
    assert not obstruct_split(EMPTY).obstructed
    assert obstruct_split(vtrefoil).obstructed


def test_satellite_examples():
    assert obstruct_satellite_injectivity(FAMILY, EMPTY, 2).obstructed
    assert not obstruct_satellite_injectivity(FAMILY, EMPTY, 0).obstructed
    assert not obstruct_satellite_injectivity(FAMILY, FAMILY, 3).obstructed
    with pytest.raises(ValueError):
        obstruct_satellite_injectivity(FAMILY, EMPTY, -1)


def test_report_json(vtrefoil):
    data = obstruct_slice_disc(vtrefoil).to_json()
    assert set(data) == {"kind", "verdict", "reason", "cited_claim", "claim_text", "values"}
    assert data["claim_text"] == CLAIMS["slice-disc"]
    assert str(obstruct_split(EMPTY)).startswith("Inconclusive")


@given(diagrams(7), diagrams(7))
def test_sf_symmetric(d0, d1):
    assert obstruct_sf_concordance(d0, d1).verdict == obstruct_sf_concordance(d1, d0).verdict


@given(diagrams(7), diagrams(7), st.integers(1, 4))
def test_satellite_agrees_with_sf(d0, d1, r):
    assert obstruct_satellite_injectivity(d0, d1, r).verdict == obstruct_sf_concordance(d0, d1).verdict


@given(diagrams(7))
def test_never_obstructs_without_evidence(d):
    w = ht_polynomial(d)
    for rep in (obstruct_ribbon_disc(d), obstruct_split(d)):
        assert rep.obstructed == (not w.is_zero())
    slice_rep = obstruct_slice_disc(d)
    if slice_rep.obstructed:
        assert not w.is_zero() or slice_rep.values["slice_genus"] > 0
    # adding the genus check never weakens the w-based verdict
    assert slice_rep.obstructed or w.is_zero()
    assert not obstruct_sf_concordance(d, d).obstructed
