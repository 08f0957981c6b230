"""
Finite-dimensional algebras, their elements, automorphisms and gradings.
"""
from src.algebra.algebra import (
    AlgebraElement,
    FiniteDimAlgebra,
    center,
    commutator_matrix,
    multiply,
    validate,
)
from src.algebra.automorphism import Automorphism
from src.algebra.grading import (
    Grading,
    check_grading,
    euler_derivation,
    preserves_grading,
    require_grading,
    zero_grading,
)

__all__ = [
    'AlgebraElement',
    'FiniteDimAlgebra',
    'center',
    'commutator_matrix',
    'multiply',
    'validate',
    'Automorphism',
    'Grading',
    'check_grading',
    'euler_derivation',
    'preserves_grading',
    'require_grading',
    'zero_grading',
]
