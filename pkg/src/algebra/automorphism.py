"""
Algebra automorphisms given by matrices (column j = image of basis j).
"""
import itertools
from typing import Dict, List, Mapping, Optional, Sequence

from src.algebra.algebra import AlgebraElement, FiniteDimAlgebra, Vector
from src.linalg.sparse import SparseMatrix, add_scaled, inverse
from src.utils.errors import InvalidAutomorphismError, ParentMismatchError


class Automorphism:
    """
    A validated automorphism of a FiniteDimAlgebra.

    Construction checks invertibility, unitality and multiplicativity on all
    basis pairs and raises InvalidAutomorphismError otherwise.

    Args:
        algebra: The algebra acted on
        matrix: dim x dim matrix, column j holds the image of basis element j
        name: Display name used in diagnostics
    """

    def __init__(self, algebra: FiniteDimAlgebra, matrix: SparseMatrix, name: str = "sigma", _inverse: Optional[SparseMatrix] = None):
        if matrix.shape != (algebra.dim, algebra.dim):
            raise InvalidAutomorphismError(name, f"matrix shape {matrix.shape} != ({algebra.dim}, {algebra.dim})")
        if matrix.field != algebra.field:
            raise InvalidAutomorphismError(name, "matrix field differs from the algebra field")
        self.algebra = algebra
        self.matrix = matrix
        self.name = name
        self._images: List[Vector] = [matrix.column(j) for j in range(algebra.dim)]
        if _inverse is None:
            try:
                _inverse = inverse(matrix)
            except ZeroDivisionError:
                raise InvalidAutomorphismError(name, "matrix is not invertible")
            self._validate()
        self.inverse_matrix = _inverse
        self._inverse_images: List[Vector] = [_inverse.column(j) for j in range(algebra.dim)]

    def _validate(self) -> None:
        algebra = self.algebra
        if self.apply(algebra.unit_vector) != algebra.unit_vector:
            raise InvalidAutomorphismError(self.name, "does not fix the unit")
        for i, j in itertools.product(range(algebra.dim), repeat=2):
            lhs = self.apply(algebra.basis_product(i, j))
            rhs = algebra.mul_vectors(self._images[i], self._images[j])
            if lhs != rhs:
                raise InvalidAutomorphismError(
                    self.name, "not multiplicative",
                    witness=(algebra.labels[i], algebra.labels[j]),
                )

    @classmethod
    def from_images(cls, algebra: FiniteDimAlgebra, images: Sequence[Mapping[int, object]], name: str = "sigma") -> "Automorphism":
        columns = {j: dict(image) for j, image in enumerate(images)}
        return cls(algebra, SparseMatrix(algebra.dim, algebra.dim, algebra.field, columns), name)

    @classmethod
    def identity(cls, algebra: FiniteDimAlgebra, name: str = "id") -> "Automorphism":
        eye = SparseMatrix.identity(algebra.dim, algebra.field)
        return cls(algebra, eye, name, _inverse=eye)

    def image(self, j: int) -> Vector:
        """sigma(b_j), shared read-only."""
        return self._images[j]

    def inverse_image(self, j: int) -> Vector:
        return self._inverse_images[j]

    def apply(self, vector: Mapping[int, object]) -> Vector:
        result: Vector = {}
        for j, c in vector.items():
            if c:
                add_scaled(result, self._images[j], c)
        return result

    def apply_inverse(self, vector: Mapping[int, object]) -> Vector:
        result: Vector = {}
        for j, c in vector.items():
            if c:
                add_scaled(result, self._inverse_images[j], c)
        return result

    def __call__(self, element: AlgebraElement) -> AlgebraElement:
        if element.parent is not self.algebra:
            raise ParentMismatchError(f"applying {self.name}")
        return AlgebraElement(self.algebra, self.apply(element.terms))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        if other.algebra is not self.algebra:
            raise ParentMismatchError("automorphism composition")
        return Automorphism(
            self.algebra,
            self.matrix.matmul(other.matrix),
            name=f"{self.name}*{other.name}",
            _inverse=other.inverse_matrix.matmul(self.inverse_matrix),
        )

    def inverse(self) -> "Automorphism":
        return Automorphism(self.algebra, self.inverse_matrix, name=f"{self.name}^-1", _inverse=self.matrix)

    def power(self, k: int) -> "Automorphism":
        if k < 0:
            return self.inverse().power(-k)
        result = Automorphism.identity(self.algebra)
        base, remaining = self, k
        while remaining:
            if remaining & 1:
                result = base.compose(result)
            base = base.compose(base)
            remaining >>= 1
        result.name = f"{self.name}^{k}"
        return result

    def is_identity(self) -> bool:
        return all(image == {j: self.algebra.field.one()} for j, image in enumerate(self._images))

    def order(self, bound: Optional[int] = None) -> Optional[int]:
        """Least t <= bound with sigma^t = id, or None (default bound dim^2)."""
        if bound is None:
            bound = self.algebra.dim ** 2
        current = self
        for t in range(1, bound + 1):
            if current.is_identity():
                return t
            current = self.compose(current)
        return None

    def is_signed_permutation(self) -> bool:
        return all(len(image) == 1 for image in self._images)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.algebra is other.algebra and self.matrix == other.matrix

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"Automorphism({self.name} on {self.algebra.name})"
