# src/shapes/__init__.py
from .complexes import (
    ComplexShape,
    Summand,
    euler_characteristic,
    half_twist_shape,
    ht_support_stats,
    minimal_cell_degrees,
    rouquier_shape,
)
from .fixtures import expected_element, fixture_euler_checks, load_fixtures
