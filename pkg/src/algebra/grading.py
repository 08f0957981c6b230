"""
Integer gradings on a basis and the Euler derivations they define.
"""
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from src.algebra.algebra import FiniteDimAlgebra
from src.utils.errors import DimensionMismatchError, InvalidGradingError


@dataclass(frozen=True)
class Grading:
    """One integer degree per basis element."""

    name: str
    degrees: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'degrees', tuple(int(d) for d in self.degrees))

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def tuple_degree(self, indices: Sequence[int]) -> int:
        return sum(self.degrees[i] for i in indices)

    def is_zero(self) -> bool:
        return not any(self.degrees)


def zero_grading(algebra: FiniteDimAlgebra, name: str = "zero") -> Grading:
    return Grading(name, (0,) * algebra.dim)


def check_grading(algebra: FiniteDimAlgebra, grading: Grading) -> Dict:
    """
    Verify that every structure constant c[i][j] is supported on basis
    elements of degree deg(i) + deg(j), and that the unit is homogeneous
    of degree 0.
    """
    report = {'valid': True, 'errors': [], 'warnings': [], 'violations': [], 'unit_components': []}
    if len(grading.degrees) != algebra.dim:
        report['valid'] = False
        report['errors'].append(
            f"Grading '{grading.name}' has {len(grading.degrees)} degrees for dim {algebra.dim}"
        )
        return report

    deg = grading.degrees
    for i, j, k, _ in algebra.structure_constants():
        if deg[k] != deg[i] + deg[j]:
            report['violations'].append((i, j))
    for k in algebra.unit_vector:
        if deg[k] != 0:
            report['unit_components'].append(('unit', algebra.labels[k], deg[k]))

    if report['violations']:
        report['valid'] = False
        report['errors'].append(
            f"Grading '{grading.name}' is inhomogeneous on {len(report['violations'])} product(s)"
        )
    if report['unit_components']:
        report['valid'] = False
        report['errors'].append(
            f"Grading '{grading.name}' puts unit components outside degree 0: {report['unit_components']}"
        )
    return report


def require_grading(algebra: FiniteDimAlgebra, grading: Grading) -> None:
    """Raise InvalidGradingError unless check_grading passes."""
    if len(grading.degrees) != algebra.dim:
        raise DimensionMismatchError(algebra.dim, len(grading.degrees), f"grading '{grading.name}'")
    report = check_grading(algebra, grading)
    if not report['valid']:
        raise InvalidGradingError(grading.name, report['violations'] + report['unit_components'])


def euler_derivation(algebra: FiniteDimAlgebra, grading: Grading):
    """
    The degree-1 cochain b -> deg(b) * b.

    It is a derivation, hence a cocycle, for every valid grading.
    """
    from src.hochschild.cochain import Cochain

    require_grading(algebra, grading)
    field = algebra.field
    table = {}
    for i, d in enumerate(grading.degrees):
        if d:
            table[(i,)] = {i: field(d)}
    return Cochain(algebra, 1, table=table, name=f"euler[{grading.name}]")


def preserves_grading(automorphism, grading: Grading) -> bool:
    """True when the automorphism maps each basis element into its own degree."""
    deg = grading.degrees
    for j in range(automorphism.algebra.dim):
        for k in automorphism.image(j):
            if deg[k] != deg[j]:
                return False
    return True
