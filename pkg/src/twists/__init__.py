# src/twists/__init__.py
from .braids import (
    braid_image,
    eigenvalue_separation_check,
    embed,
    external_product,
    full_twist,
    half_twist,
    jm_element,
    jm_product,
    longest_times_cell,
    thick_crossing_identity,
    thick_crossing_index,
)
from .idempotents import (
    RationalHeckeElement,
    TableauPath,
    all_paths,
    central_idempotent,
    dominance_leq_tableau,
    gamma,
    idempotent_suite,
    quasi_idempotent,
    young_idempotent,
    young_idempotent_series,
)
from .relative import (
    coset_prefix_check,
    geck_check,
    relative_action_check,
    relative_suite,
    sh_L_k,
)
