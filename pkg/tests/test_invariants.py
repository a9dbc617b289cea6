import pytest
from hypothesis import given
from hypothesis import strategies as st

from vknot.gauss import GaussDiagram, canonical_form, connected_sum, interlacement, parse_gauss_code
from vknot.invariants import (
    HTPolynomial,
    chord_index,
    count_cycles,
    ht_polynomial,
    index_table,
    is_positive,
    seifert_circle_count,
    seifert_permutation,
    slice_genus_positive,
    writhe,
)

from conftest import diagrams
from oracles import index_by_walking, seifert_by_tracing

EMPTY = GaussDiagram.trivial()


def test_vtrefoil_indices(vtrefoil):
    table = index_table(vtrefoil)
    assert {abs(v) for v in table.values()} == {1}
    # frozen: the distinguished-half convention gives these signs
    assert table == {1: 1, 2: -1}


def test_classical_trefoil_indices_vanish(trefoil):
    assert index_table(trefoil) == {1: 0, 2: 0, 3: 0}


def test_kink_and_empty_indices():
    assert chord_index(parse_gauss_code("O1+ U1+ O2+ O3- U2+ U3-"), 1) == 0
    assert index_table(EMPTY) == {}


def test_unknown_chord():
    with pytest.raises(KeyError):
        chord_index(EMPTY, 1)


def test_ht_examples(vtrefoil, trefoil):
    assert ht_polynomial(vtrefoil) == HTPolynomial({1: 2})
    assert ht_polynomial(trefoil).is_zero()
    assert ht_polynomial(EMPTY) == 0


def test_ht_of_negative_virtual_trefoil():
    assert ht_polynomial(parse_gauss_code("O1- O2- U1- U2-")) == HTPolynomial({1: -2})


def test_seifert_examples(vtrefoil, trefoil):
    assert seifert_permutation(trefoil) == [4, 5, 0, 1, 2, 3]
    assert seifert_circle_count(trefoil) == 2
    assert seifert_circle_count(vtrefoil) == 1
    assert seifert_circle_count(EMPTY) == 1


def test_positivity_and_genus(vtrefoil, trefoil):
    assert is_positive(vtrefoil) and is_positive(EMPTY)
    assert not is_positive(parse_gauss_code("O1- U1-"))
    assert slice_genus_positive(trefoil) == 1
    assert slice_genus_positive(vtrefoil) == 1
    assert slice_genus_positive(EMPTY) == 0
    with pytest.raises(ValueError):
        slice_genus_positive(parse_gauss_code("O1- U1-"))


def test_writhe(trefoil):
    assert writhe(trefoil) == 3


def test_count_cycles():
    assert count_cycles([1, 2, 0, 4, 3]) == 2
    assert count_cycles([]) == 0


@given(diagrams(10))
def test_seifert_parity(d):
    assert seifert_circle_count(d) % 2 == (d.n + 1) % 2


@given(diagrams(10))
def test_seifert_matches_tracing_oracle(d):
    assert seifert_circle_count(d) == seifert_by_tracing(list(d.word))


@given(diagrams(10))
def test_flipped_half_negates_indices(d):
    table = index_table(d)
    assert index_table(d, flip=True) == {c: -v for c, v in table.items()}
    assert ht_polynomial(d, flip=True) == ht_polynomial(d)


@given(diagrams(8), st.integers(0, 40))
def test_ht_depends_only_on_canonical_form(d, k):
    assert ht_polynomial(d.rotate(k)) == ht_polynomial(d) == ht_polynomial(canonical_form(d))


@given(diagrams(6), diagrams(6), st.data())
def test_connected_sum_additivity(d1, d2, data):
    c1 = data.draw(st.integers(0, max(len(d1.word), 1) - 1))
    c2 = data.draw(st.integers(0, max(len(d2.word), 1) - 1))
    assert ht_polynomial(connected_sum(d1, d2, c1, c2)) == ht_polynomial(d1) + ht_polynomial(d2)


@given(diagrams(10))
def test_index_parity_matches_interlacement(d):
    # each interlacing chord contributes +-1, so index and interlacement degree agree mod 2
    pairs = interlacement(d)
    for c, v in index_table(d).items():
        degree = sum(1 for p in pairs if c in p)
        assert (v - degree) % 2 == 0 and abs(v) <= degree


FROZEN_CODE = "O1- O4- O5- U1- O6+ U6+ U3+ U2- O3+ U5- O2- U4-"


def test_frozen_six_chord_values():
    # values agreed on by the library and the naive oracles in tests/oracles.py
    d = parse_gauss_code(FROZEN_CODE)
    assert ht_polynomial(d) == HTPolynomial({2: -3})
    assert index_table(d) == index_by_walking(list(d.word), dict(d.signs))
    assert seifert_circle_count(d) == 3 == seifert_by_tracing(list(d.word))


@given(diagrams(10))
def test_index_matches_walking_oracle(d):
    assert index_table(d) == index_by_walking(list(d.word), dict(d.signs))


class TestPolynomial:
    def test_zero(self):
        assert str(HTPolynomial()) == "0"
        assert HTPolynomial({1: 0}).is_zero()
        assert not HTPolynomial()

    def test_str_and_parse(self):
        p = HTPolynomial({3: -1, 1: 2})
        assert str(p) == "2t^1 - 1t^3"
        assert HTPolynomial.parse(str(p)) == p
        assert HTPolynomial.parse("0") == HTPolynomial()
        assert str(HTPolynomial({2: -8})) == "-8t^2"

    def test_parse_rejects_junk(self):
        for bad in ("", "t", "2t^1 +", "2x^1"):
            with pytest.raises(ValueError):
                HTPolynomial.parse(bad)

    def test_no_constant_terms(self):
        with pytest.raises(ValueError):
            HTPolynomial({0: 1})

    def test_arithmetic(self):
        p = HTPolynomial({1: 2, 2: 1})
        q = HTPolynomial({2: -1})
        assert p + q == HTPolynomial({1: 2})
        assert p - p == HTPolynomial()
        assert p.scale(4) == HTPolynomial({1: 8, 2: 4})

    def test_substitute_power(self):
        p = HTPolynomial({1: 2, 3: -1})
        assert p.substitute_power(2) == HTPolynomial({2: 2, 6: -1})
        assert p.substitute_power(1) == p
        assert p.substitute_power(0).is_zero()
        with pytest.raises(ValueError):
            p.substitute_power(-1)

    def test_json(self):
        p = HTPolynomial({1: 2, 3: -1})
        assert p.to_json() == {"1": 2, "3": -1}
        assert HTPolynomial.from_json(p.to_json()) == p
        assert hash(p) == hash(HTPolynomial.from_json(p.to_json()))

    @given(st.dictionaries(st.integers(1, 9), st.integers(-5, 5)))
    def test_str_round_trip(self, coeffs):
        p = HTPolynomial(coeffs)
        assert HTPolynomial.parse(str(p)) == p


@given(diagrams(12))
def test_fast_table_matches_definition(d):
    for flip in (False, True):
        assert index_table(d, flip) == {c: chord_index(d, c, flip) for c in d.chord_ids()}
