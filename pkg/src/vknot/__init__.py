"""Concordance invariants of virtual knots computed from Gauss diagrams."""
from .gauss import (
    Chord,
    Endpoint,
    GaussCodeError,
    GaussDiagram,
    canonical_form,
    connected_sum,
    interlacement,
    parse_gauss_code,
    random_diagram,
    serialize,
)
from .invariants import (
    HTPolynomial,
    chord_index,
    ht_polynomial,
    index_table,
    is_positive,
    seifert_circle_count,
    slice_genus_positive,
)

__version__ = "0.1.0"
