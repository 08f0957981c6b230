"""
Algebra zoo: R(n, r), small Frobenius fixtures and the JSON file format.
"""
from src.zoo.algebra_file import algebra_from_document, algebra_to_document, load_algebra, save_algebra
from src.zoo.bundle import ZooAlgebra
from src.zoo.dnr import (
    BasisPath,
    DnrPresentation,
    build_dnr,
    build_sigma,
    gamma_grading,
    length_grading,
    nu_closed_form,
    vertex_gradings,
)
from src.zoo.small import ground_field, matrix_algebra, nakayama_cycle, truncated_poly

__all__ = [
    'ZooAlgebra',
    'BasisPath',
    'DnrPresentation',
    'build_dnr',
    'build_sigma',
    'gamma_grading',
    'length_grading',
    'vertex_gradings',
    'nu_closed_form',
    'ground_field',
    'matrix_algebra',
    'nakayama_cycle',
    'truncated_poly',
    'algebra_from_document',
    'algebra_to_document',
    'load_algebra',
    'save_algebra',
]
