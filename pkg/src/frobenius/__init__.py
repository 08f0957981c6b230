"""
Frobenius forms, dual bases and the Nakayama automorphism.
"""
from src.frobenius.frobenius import (
    FrobeniusData,
    build_frobenius,
    check_frobenius,
    is_symmetric,
    nakayama_order,
)

__all__ = [
    'FrobeniusData',
    'build_frobenius',
    'check_frobenius',
    'is_symmetric',
    'nakayama_order',
]
