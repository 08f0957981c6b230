"""
Exact arithmetic: scalar fields and sparse linear algebra.
"""
from src.linalg.fields import QQ, Field, PrimeField, RationalField, Residue, Scalar, parse_field
from src.linalg.sparse import (
    EchelonForm,
    SparseMatrix,
    add_scaled,
    eliminate,
    inverse,
    kernel_basis,
    membership_solve,
    rank,
    scale_vector,
    to_dense_vector,
)

__all__ = [
    'QQ',
    'Field',
    'PrimeField',
    'RationalField',
    'Residue',
    'Scalar',
    'parse_field',
    'EchelonForm',
    'SparseMatrix',
    'add_scaled',
    'eliminate',
    'inverse',
    'kernel_basis',
    'membership_solve',
    'rank',
    'scale_vector',
    'to_dense_vector',
]
