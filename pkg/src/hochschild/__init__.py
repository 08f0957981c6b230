"""
Hochschild cochains and their calculus.
"""
from src.hochschild.calculus import (
    bracket,
    bv_delta,
    circ,
    circ_i,
    coboundary,
    cup,
    degeneracy,
    delta_i,
    delta_prime,
    homogeneous_component,
    is_normalized_at,
    normalize,
    normalize_with_witness,
    nu_average,
    twist,
)
from src.hochschild.cochain import Cochain, linear_combination
from src.hochschild.random_cochains import (
    random_cochain,
    random_element,
    random_homogeneous_cochain,
    sample_tuples,
)

__all__ = [
    'Cochain',
    'linear_combination',
    'bracket',
    'bv_delta',
    'circ',
    'circ_i',
    'coboundary',
    'cup',
    'degeneracy',
    'delta_i',
    'delta_prime',
    'homogeneous_component',
    'is_normalized_at',
    'normalize',
    'normalize_with_witness',
    'nu_average',
    'twist',
    'random_cochain',
    'random_element',
    'random_homogeneous_cochain',
    'sample_tuples',
]
