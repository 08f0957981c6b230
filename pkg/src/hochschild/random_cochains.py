"""
Seeded random cochains and basis tuples for identity checks.

All draws come from a caller-supplied ``numpy.random.Generator`` so that a
run is reproducible from its seed.
"""
from typing import List, Optional, Sequence

import numpy as np

from src.algebra.algebra import AlgebraElement, FiniteDimAlgebra
from src.algebra.grading import Grading
from src.hochschild.cochain import BasisTuple, Cochain

DEFAULT_SCALAR_POOL = (-2, -1, 1, 2)


def _scalar(algebra: FiniteDimAlgebra, rng: np.random.Generator, pool: Sequence[int]):
    # A pool value may vanish in small characteristic; fall back to 1
    value = algebra.field(int(pool[rng.integers(len(pool))]))
    return value if value else algebra.field.one()


def sample_tuples(algebra: FiniteDimAlgebra, degree: int, count: int, rng: np.random.Generator) -> List[BasisTuple]:
    """``count`` basis tuples drawn uniformly (with repetition)."""
    if degree == 0:
        return [()]
    draws = rng.integers(algebra.dim, size=(count, degree))
    return [tuple(int(k) for k in row) for row in draws]


def random_element(algebra: FiniteDimAlgebra, rng: np.random.Generator,
                   pool: Sequence[int] = DEFAULT_SCALAR_POOL, support: int = 3) -> AlgebraElement:
    terms = {}
    for k in rng.integers(algebra.dim, size=support):
        terms[int(k)] = _scalar(algebra, rng, pool)
    return algebra.element(terms)


def random_cochain(
    algebra: FiniteDimAlgebra,
    degree: int,
    rng: np.random.Generator,
    support: Optional[int] = None,
    pool: Sequence[int] = DEFAULT_SCALAR_POOL,
    support_factor: int = 3,
    name: Optional[str] = None,
) -> Cochain:
    """
    A sparse table cochain with ``support`` (default support_factor * dim)
    random (tuple, output basis, scalar) entries.
    """
    if support is None:
        support = support_factor * algebra.dim
    table = {}
    for t in sample_tuples(algebra, degree, support, rng):
        value = table.setdefault(t, {})
        value[int(rng.integers(algebra.dim))] = _scalar(algebra, rng, pool)
    return Cochain(algebra, degree, table=table, name=name or f"r{degree}")


def random_homogeneous_cochain(
    algebra: FiniteDimAlgebra,
    degree: int,
    grading: Grading,
    q: int,
    rng: np.random.Generator,
    support: Optional[int] = None,
    pool: Sequence[int] = DEFAULT_SCALAR_POOL,
    support_factor: int = 3,
    max_attempts: int = 50,
) -> Cochain:
    """
    A random cochain of internal degree q: every value on t lies in degree
    deg(t) - q. Tuples whose target degree is empty are redrawn up to
    ``max_attempts`` rounds; the result may be zero when none exist.
    """
    if support is None:
        support = support_factor * algebra.dim
    by_degree = {}
    for k, d in enumerate(grading.degrees):
        by_degree.setdefault(d, []).append(k)
    table = {}
    placed = 0
    for _ in range(max_attempts):
        for t in sample_tuples(algebra, degree, support, rng):
            candidates = by_degree.get(grading.tuple_degree(t) - q)
            if not candidates:
                continue
            k = candidates[int(rng.integers(len(candidates)))]
            table.setdefault(t, {})[k] = _scalar(algebra, rng, pool)
            placed += 1
            if placed >= support:
                return Cochain(algebra, degree, table=table, name=f"h{degree}[{q}]")
    return Cochain(algebra, degree, table=table, name=f"h{degree}[{q}]")
