"""
Frobenius structure of a finite-dimensional algebra.

The form is <a, b> = eps(ab). Its Gram matrix G[i][j] = eps(b_i b_j) must be
invertible; the Nakayama automorphism is then the unique nu with
<a, b> = <b, nu(a)>, i.e. G N = G^T, and is solved rather than supplied.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Union

from src.algebra.algebra import FiniteDimAlgebra, Vector
from src.algebra.automorphism import Automorphism
from src.linalg.sparse import SparseMatrix, add_scaled, inverse, rank
from src.utils.errors import (
    DimensionMismatchError,
    InconsistentStructureError,
    InvalidAutomorphismError,
    NotFrobeniusError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FrobeniusData:
    """
    Counit, Gram matrix, dual basis and Nakayama automorphism.

    ``dual_basis[k]`` is the element d_k with <d_k, b_i> = [i = k], so every
    a satisfies a = sum_k <d_k, a> b_k and the functional c -> <c, b_k>
    is represented by d_k.
    """

    algebra: FiniteDimAlgebra
    eps: Vector
    gram: SparseMatrix
    gram_inverse: SparseMatrix
    dual_basis: List[Vector]
    nakayama: Automorphism

    def epsilon(self, vector: Mapping[int, object]):
        """eps applied to a sparse vector."""
        total = self.algebra.field.zero()
        for k, c in vector.items():
            e = self.eps.get(k)
            if e:
                total = total + e * c
        return total

    def pairing(self, a: Mapping[int, object], b: Mapping[int, object]):
        """<a, b> = eps(ab)."""
        return self.epsilon(self.algebra.mul_vectors(a, b))


def build_frobenius(
    algebra: FiniteDimAlgebra,
    eps: Union[Sequence[object], Mapping[int, object]],
) -> FrobeniusData:
    """
    Build Frobenius data from a counit.

    Raises:
        NotFrobeniusError: the form is degenerate
        InconsistentStructureError: the solved nu is not an automorphism
    """
    field = algebra.field
    if not isinstance(eps, Mapping) and len(eps) != algebra.dim:
        raise DimensionMismatchError(algebra.dim, len(eps), "frobenius eps")
    eps_vector = algebra.element(eps).terms
    d = algebra.dim

    columns: Dict[int, Dict[int, object]] = {}
    for (i, j, k, c) in algebra.structure_constants():
        e = eps_vector.get(k)
        if e:
            column = columns.setdefault(j, {})
            column[i] = column.get(i, 0) + c * e
    gram = SparseMatrix(d, d, field, columns)

    try:
        gram_inverse = inverse(gram)
    except ZeroDivisionError:
        raise NotFrobeniusError(rank(gram), d)

    rows_of_inverse = gram_inverse.transpose()
    dual_basis = [rows_of_inverse.column(k) for k in range(d)]

    nu_matrix = gram_inverse.matmul(gram.transpose())
    try:
        nakayama = Automorphism(algebra, nu_matrix, name="nu")
    except InvalidAutomorphismError as exc:
        raise InconsistentStructureError("Nakayama automorphism", str(exc))

    logger.debug(f"build_frobenius({algebra.name}): dim {d}, nu symmetric={nakayama.is_identity()}")
    return FrobeniusData(algebra, eps_vector, gram, gram_inverse, dual_basis, nakayama)


def nakayama_order(frobenius: FrobeniusData, bound: Optional[int] = None) -> Optional[int]:
    """Order of nu, or None when it exceeds the bound (default dim^2)."""
    return frobenius.nakayama.order(bound)


def is_symmetric(frobenius: FrobeniusData) -> bool:
    """nu = id for the given form."""
    return frobenius.nakayama.is_identity()


def check_frobenius(frobenius: FrobeniusData) -> Dict:
    """
    Guard checks on all basis pairs and triples:
    <ab, c> = <a, bc>, <a, b> = <b, nu(a)>, and a = sum_k <d_k, a> b_k.

    Returns:
        Report dict with 'valid', 'errors', 'warnings' and 'violations'
    """
    report = {'valid': True, 'errors': [], 'warnings': [], 'violations': []}
    algebra = frobenius.algebra
    d = algebra.dim
    one = algebra.field.one()

    for i, j, k in itertools.product(range(d), repeat=3):
        left = frobenius.pairing(algebra.basis_product(i, j), {k: one})
        right = frobenius.pairing({i: one}, algebra.basis_product(j, k))
        if left != right:
            report['violations'].append(('form_associativity', i, j, k))

    nu = frobenius.nakayama
    for i, j in itertools.product(range(d), repeat=2):
        if frobenius.gram.get(i, j) != frobenius.pairing({j: one}, nu.image(i)):
            report['violations'].append(('nakayama', i, j))

    for i in range(d):
        rebuilt: Vector = {}
        for k in range(d):
            c = frobenius.pairing(frobenius.dual_basis[k], {i: one})
            if c:
                add_scaled(rebuilt, {k: c}, 1)
        if rebuilt != {i: one}:
            report['violations'].append(('dual_basis', i))

    if report['violations']:
        report['valid'] = False
        kinds = sorted({v[0] for v in report['violations']})
        report['errors'].append(f"Frobenius data fails {', '.join(kinds)}")
    return report
