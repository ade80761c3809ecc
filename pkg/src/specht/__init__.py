# src/specht/__init__.py
from .polynomials import (
    all_tableaux_span_check,
    commutant_dimension,
    coordinates,
    coxeter_relations_hold,
    g_polynomial,
    hook_length_dimension,
    membership_in_span,
    positive_roots_product,
    representation_matrices,
    representation_matrix,
    specht_basis,
    specht_dimension,
    specht_suite,
)
