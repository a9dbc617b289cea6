import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vknot.gauss import GaussDiagram, canonical_form, parse_gauss_code, random_diagram
from vknot.invariants import HTPolynomial, chord_index, ht_polynomial, index_table
from vknot.satellites import (
    Pattern,
    PatternError,
    cable,
    expected_satellite_ht,
    is_single_component,
    parse_pattern,
    random_pattern,
    verify_satellite_formula,
    winding,
)

from conftest import diagrams


@pytest.mark.parametrize("eps, r", [((1, 1), 2), ((1, -1), 0), ((1, 1, -1), 1), ((-1,), 1), ((-1, -1, -1), 3)])
def test_winding(eps, r):
    assert winding(Pattern(len(eps), eps)) == r


def test_pattern_text():
    pat = parse_pattern("p=2 eps=++ tangle=1+")
    assert pat == Pattern(2, (1, 1), ((1, 1),))
    assert pat.to_text() == "p=2 eps=++ tangle=1+"
    assert parse_pattern("p=3 eps=+-+ tangle=1-,2+").tangle == ((1, -1), (2, 1))
    assert parse_pattern("p=1 eps=+").tangle == ()
    assert parse_pattern(Pattern(3, (1, -1, 1), ((2, 1),)).to_text()) == Pattern(3, (1, -1, 1), ((2, 1),))


@pytest.mark.parametrize(
    "text",
    ["p=2 eps=+", "p=0 eps=", "p=2 eps=+x", "p=2 eps=++ tangle=2+", "p=2 eps=++ tangle=1", "eps=++", "p=2 eps=++ q=1"],
)
def test_bad_patterns(text):
    with pytest.raises(PatternError):
        parse_pattern(text)


def test_identity_satellite(trefoil, vtrefoil):
    ident = Pattern(1, (1,))
    for d in (trefoil, vtrefoil, GaussDiagram.trivial()):
        assert canonical_form(cable(d, ident)) == canonical_form(d)


def test_two_cable_of_virtual_trefoil(vtrefoil):
    sat = cable(vtrefoil, parse_pattern("p=2 eps=++ tangle=1+"))
    assert sat.n == 9
    assert ht_polynomial(sat) == HTPolynomial({2: 8})
    # the four chords over each companion chord have total sign r^2 = 4
    assert sum(sat.signs[c] for c in range(1, 5)) == 4


def test_antiparallel_cable_of_virtual_trefoil(vtrefoil):
    sat = cable(vtrefoil, parse_pattern("p=2 eps=+- tangle=1+"))
    assert ht_polynomial(sat).is_zero()
    assert verify_satellite_formula(vtrefoil, parse_pattern("p=2 eps=+- tangle="))


def test_two_component_closure_rejected(vtrefoil):
    with pytest.raises(PatternError):
        cable(vtrefoil, parse_pattern("p=2 eps=++ tangle="))
    with pytest.raises(PatternError):
        cable(vtrefoil, parse_pattern("p=2 eps=++ tangle=1+,1-"))
    assert not is_single_component(parse_pattern("p=3 eps=+++ tangle=1+"))
    assert is_single_component(parse_pattern("p=3 eps=+++ tangle=1+,2+"))


def test_mixed_orientations_close_up():
    # without a braid the two antiparallel strands cap off into their own loop
    assert not is_single_component(parse_pattern("p=3 eps=++- tangle="))
    assert is_single_component(parse_pattern("p=3 eps=++- tangle=1+"))
    assert is_single_component(parse_pattern("p=3 eps=+-+ tangle=2+"))
    assert not is_single_component(parse_pattern("p=4 eps=++-- tangle="))


@settings(max_examples=80, deadline=None)
@given(diagrams(6), st.integers(0, 10**6))
def test_crossing_count_and_formula(d, seed):
    pat = random_pattern(random.Random(seed))
    sat = cable(d, pat)
    assert sat.n == pat.p ** 2 * d.n + len(pat.tangle)
    assert ht_polynomial(sat) == expected_satellite_ht(d, pat)


@settings(max_examples=60, deadline=None)
@given(diagrams(6), st.integers(0, 10**6))
def test_index_structure(d, seed):
    pat = random_pattern(random.Random(seed))
    r = winding(pat)
    sat = cable(d, pat)
    table = index_table(sat)
    p2 = pat.p ** 2
    for k, c in enumerate(d.chord_ids()):
        base = chord_index(d, c)
        for y in range(k * p2 + 1, (k + 1) * p2 + 1):
            assert abs(table[y]) == r * abs(base)
    for y in range(d.n * p2 + 1, sat.n + 1):
        assert table[y] == 0


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_formula_for_each_winding(r):
    rng = random.Random(100 + r)
    for _ in range(40):
        d = random_diagram(rng.randint(0, 8), rng)
        pat = random_pattern(rng, r=r)
        assert winding(pat) == r
        assert verify_satellite_formula(d, pat)


def test_random_pattern_respects_bounds():
    rng = random.Random(0)
    for _ in range(100):
        pat = random_pattern(rng, max_p=3, max_len=4)
        assert 1 <= pat.p <= 3 and len(pat.tangle) <= 4
        assert winding(pat) <= pat.p and (pat.p - winding(pat)) % 2 == 0
