"""
Minimal bimodule resolution of R(n, r): summand shapes, the contracting
homotopy, the comparison map Psi and the generator cocycles.
"""
from src.resolution.generators import (
    KINDS,
    GeneratorSpec,
    check_generator_bracket,
    expected_length_degree,
    generator_catalogue,
    generator_spec,
    nu_conjugate_average,
    realize_generator,
)
from src.resolution.homotopy import (
    CASES,
    Case,
    HomotopyTable,
    ResolutionElement,
    augmentation,
    homotopy_D,
    homotopy_Dminus1,
)
from src.resolution.psi import PsiMap, psi
from src.resolution.shapes import SummandIndex, qt_shape, shape_lookup, split_degree

__all__ = [
    'KINDS',
    'GeneratorSpec',
    'check_generator_bracket',
    'expected_length_degree',
    'generator_catalogue',
    'generator_spec',
    'nu_conjugate_average',
    'realize_generator',
    'CASES',
    'Case',
    'HomotopyTable',
    'ResolutionElement',
    'augmentation',
    'homotopy_D',
    'homotopy_Dminus1',
    'PsiMap',
    'psi',
    'SummandIndex',
    'qt_shape',
    'shape_lookup',
    'split_degree',
]
