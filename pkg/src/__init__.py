"""
hochschild-bv: exact Hochschild cohomology and BV structure of Frobenius algebras.
"""
__version__ = "1.0.0"
