"""
Finite-dimensional associative unital algebras given by structure constants.

Vectors in an algebra are sparse dicts ``{basis_index: scalar}``. The
structure constants are stored sparsely as ``(i, j) -> {k: c}`` meaning
b_i * b_j = sum_k c * b_k.
"""
import itertools
import logging
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.linalg.fields import Field, Scalar
from src.linalg.sparse import SparseMatrix, add_scaled, kernel_basis, scale_vector
from src.utils.errors import (
    AlgebraStructureError,
    DimensionMismatchError,
    ParentMismatchError,
)

logger = logging.getLogger(__name__)

Vector = Dict[int, Scalar]
EMPTY: Vector = {}


class FiniteDimAlgebra:
    """
    An algebra over an exact field, given by a sparse multiplication table.

    Args:
        field: Ground field
        labels: One label per basis element
        unit: Coefficients of the unit (sequence of length dim, or sparse mapping)
        mul: Mapping (i, j) -> {k: c}; unlisted products are zero
        name: Display name
    """

    def __init__(
        self,
        field: Field,
        labels: Sequence[str],
        unit: Union[Sequence[object], Mapping[int, object]],
        mul: Mapping[Tuple[int, int], Mapping[int, object]],
        name: str = "A",
    ):
        if len(labels) == 0:
            raise AlgebraStructureError("dimension 0 admits no unit")
        if len(set(labels)) != len(labels):
            raise AlgebraStructureError("basis labels must be distinct")
        self.field = field
        self.name = name
        self.labels = tuple(str(label) for label in labels)
        self.dim = len(self.labels)
        self._index = {label: i for i, label in enumerate(self.labels)}

        self.unit_vector = self._clean(unit, "unit")
        self._table: Dict[Tuple[int, int], Vector] = {}
        for (i, j), product in mul.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionMismatchError(f"indices < {self.dim}", (i, j), "multiplication table")
            clean = self._clean(product, f"product ({i}, {j})")
            if clean:
                self._table[(i, j)] = clean

        self._right_of: Dict[int, List[Tuple[int, Vector]]] = {i: [] for i in range(self.dim)}
        self._left_of: Dict[int, List[Tuple[int, Vector]]] = {j: [] for j in range(self.dim)}
        for (i, j), product in sorted(self._table.items()):
            self._right_of[i].append((j, product))
            self._left_of[j].append((i, product))
        self._preimages: Optional[Dict[int, List[Tuple[int, int, Scalar]]]] = None

    def _clean(self, vector: Union[Sequence[object], Mapping[int, object]], what: str) -> Vector:
        if isinstance(vector, Mapping):
            items = vector.items()
        else:
            if len(vector) != self.dim:
                raise DimensionMismatchError(self.dim, len(vector), what)
            items = enumerate(vector)
        clean: Vector = {}
        for k, value in items:
            if not 0 <= k < self.dim:
                raise DimensionMismatchError(f"index < {self.dim}", k, what)
            scalar = self.field(value)
            if scalar:
                clean[k] = scalar
        return clean

    def index(self, label: str) -> int:
        return self._index[label]

    def basis_product(self, i: int, j: int) -> Vector:
        """b_i * b_j as a shared read-only vector."""
        return self._table.get((i, j), EMPTY)

    def structure_constants(self) -> Iterable[Tuple[int, int, int, Scalar]]:
        """Nonzero structure constants (i, j, k, c), sorted."""
        for (i, j) in sorted(self._table):
            product = self._table[(i, j)]
            for k in sorted(product):
                yield i, j, k, product[k]

    def mul_vectors(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vector:
        result: Vector = {}
        if not u or not v:
            return result
        for i, a in u.items():
            for j, product in self._right_of[i]:
                b = v.get(j)
                if b:
                    add_scaled(result, product, a * b)
        return result

    def left_basis(self, i: int, v: Mapping[int, Scalar]) -> Vector:
        """b_i * v"""
        result: Vector = {}
        for j, product in self._right_of[i]:
            b = v.get(j)
            if b:
                add_scaled(result, product, b)
        return result

    def right_basis(self, v: Mapping[int, Scalar], j: int) -> Vector:
        """v * b_j"""
        result: Vector = {}
        for i, product in self._left_of[j]:
            a = v.get(i)
            if a:
                add_scaled(result, product, a)
        return result

    def product_preimages(self, k: int) -> List[Tuple[int, int, Scalar]]:
        """All (i, j, c) with the b_k coefficient of b_i * b_j equal to c != 0."""
        if self._preimages is None:
            preimages: Dict[int, List[Tuple[int, int, Scalar]]] = {m: [] for m in range(self.dim)}
            for i, j, m, c in self.structure_constants():
                preimages[m].append((i, j, c))
            self._preimages = preimages
        return self._preimages[k]

    def element(self, coeffs: Union[Sequence[object], Mapping[int, object]]) -> "AlgebraElement":
        return AlgebraElement(self, self._clean(coeffs, "element"))

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {i: self.field.one()})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, dict(self.unit_vector))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def __eq__(self, other):
        if not isinstance(other, FiniteDimAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.labels == other.labels
            and self.unit_vector == other.unit_vector
            and self._table == other._table
        )

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"FiniteDimAlgebra({self.name}, dim={self.dim}, field={self.field.name})"


class AlgebraElement:
    """An element of a FiniteDimAlgebra, stored as a sparse coefficient dict."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent: FiniteDimAlgebra, terms: Vector):
        self.parent = parent
        self.terms = terms

    @property
    def coeffs(self) -> Tuple[Scalar, ...]:
        zero = self.parent.field.zero()
        return tuple(self.terms.get(i, zero) for i in range(self.parent.dim))

    def _check(self, other: "AlgebraElement", operation: str) -> None:
        if not isinstance(other, AlgebraElement) or other.parent is not self.parent:
            raise ParentMismatchError(operation)

    def __add__(self, other):
        self._check(other, "addition")
        result = dict(self.terms)
        add_scaled(result, other.terms, 1)
        return AlgebraElement(self.parent, result)

    def __sub__(self, other):
        self._check(other, "subtraction")
        result = dict(self.terms)
        add_scaled(result, other.terms, -1)
        return AlgebraElement(self.parent, result)

    def __neg__(self):
        return AlgebraElement(self.parent, scale_vector(self.terms, -1))

    def scale(self, scalar) -> "AlgebraElement":
        return AlgebraElement(self.parent, scale_vector(self.terms, self.parent.field(scalar)))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.parent is other.parent and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            parts.append(f"{c}*{self.parent.labels[k]}")
        return " + ".join(parts)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Product of two elements of the same algebra."""
    if not isinstance(b, AlgebraElement) or a.parent is not b.parent:
        raise ParentMismatchError("multiply")
    return AlgebraElement(a.parent, a.parent.mul_vectors(a.terms, b.terms))


def validate(algebra: FiniteDimAlgebra) -> Dict:
    """
    Check associativity on all basis triples and the unit axioms on all
    basis elements.

    Returns:
        Report dict with 'valid', 'errors', 'warnings' and 'violations'
    """
    report = {'valid': True, 'errors': [], 'warnings': [], 'violations': []}
    d = algebra.dim

    for i, j, k in itertools.product(range(d), repeat=3):
        left = algebra.right_basis(algebra.basis_product(i, j), k)
        right = algebra.left_basis(i, algebra.basis_product(j, k))
        if left != right:
            report['violations'].append(('associativity', i, j, k))

    unit = algebra.unit_vector
    for i in range(d):
        basis = {i: algebra.field.one()}
        if algebra.mul_vectors(unit, basis) != basis:
            report['violations'].append(('left_unit', i))
        if algebra.mul_vectors(basis, unit) != basis:
            report['violations'].append(('right_unit', i))

    if report['violations']:
        report['valid'] = False
        kinds = sorted({v[0] for v in report['violations']})
        report['errors'].append(
            f"{len(report['violations'])} axiom violation(s) of kind {', '.join(kinds)}"
        )
    logger.debug(f"validate({algebra.name}): {len(report['violations'])} violations")
    return report


def commutator_matrix(algebra: FiniteDimAlgebra) -> SparseMatrix:
    """
    The stacked map z -> (z b_j - b_j z)_j as a (dim*dim) x dim matrix;
    row index j*dim + k.
    """
    d = algebra.dim
    columns: Dict[int, Dict[int, Scalar]] = {}
    for i in range(d):
        column: Dict[int, Scalar] = {}
        for j in range(d):
            diff = dict(algebra.basis_product(i, j))
            add_scaled(diff, algebra.basis_product(j, i), -1)
            for k, value in diff.items():
                column[j * d + k] = value
        columns[i] = column
    return SparseMatrix._trusted(d * d, d, algebra.field, columns)


def center(algebra: FiniteDimAlgebra) -> List[AlgebraElement]:
    """Basis of the center, as the kernel of the stacked commutator maps."""
    return [AlgebraElement(algebra, v) for v in kernel_basis(commutator_matrix(algebra))]
