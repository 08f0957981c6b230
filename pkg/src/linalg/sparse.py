"""
Sparse exact linear algebra over Q and F_p.

Matrices are stored column-major as ``{col: {row: value}}`` with no zero
entries. Elimination is column-incremental: each column is reduced against
the pivots found so far, and either becomes a new pivot (normalized to 1
at its pivot row) or yields a kernel relation. Every pivot remembers which
combination of input columns produced it, so the same pass answers rank,
kernel and membership questions with exact witnesses.
"""
import heapq
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.linalg.fields import Field, Scalar
from src.utils.errors import DimensionMismatchError, FieldMismatchError

Vector = Dict[int, Scalar]


def add_scaled(target: Dict, source: Mapping, coefficient) -> None:
    """target += coefficient * source, dropping cancelled entries."""
    for key, value in source.items():
        new = target.get(key, 0) + coefficient * value
        if new:
            target[key] = new
        elif key in target:
            del target[key]


def scale_vector(vector: Mapping, coefficient) -> Dict:
    if not coefficient:
        return {}
    return {key: coefficient * value for key, value in vector.items()}


class SparseMatrix:
    """
    Immutable exact sparse matrix.

    Args:
        nrows: Number of rows
        ncols: Number of columns
        field: Scalar field; every entry is coerced into it
        columns: Mapping col -> {row: value}
    """

    def __init__(
        self,
        nrows: int,
        ncols: int,
        field: Field,
        columns: Optional[Mapping[int, Mapping[int, object]]] = None,
    ):
        if nrows < 0 or ncols < 0:
            raise DimensionMismatchError("non-negative shape", (nrows, ncols), "matrix")
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self._columns: Dict[int, Vector] = {}
        for col, entries in (columns or {}).items():
            if not 0 <= col < ncols:
                raise DimensionMismatchError(f"column < {ncols}", col, "matrix index")
            clean = {}
            for row, value in entries.items():
                if not 0 <= row < nrows:
                    raise DimensionMismatchError(f"row < {nrows}", row, "matrix index")
                scalar = field(value)
                if scalar:
                    clean[row] = scalar
            if clean:
                self._columns[col] = clean

    @classmethod
    def _trusted(cls, nrows: int, ncols: int, field: Field, columns: Dict[int, Vector]) -> "SparseMatrix":
        # Columns already coerced and zero-free
        matrix = cls.__new__(cls)
        matrix.nrows = nrows
        matrix.ncols = ncols
        matrix.field = field
        matrix._columns = {c: v for c, v in columns.items() if v}
        return matrix

    @classmethod
    def from_entries(
        cls, nrows: int, ncols: int, field: Field, entries: Mapping[Tuple[int, int], object]
    ) -> "SparseMatrix":
        columns: Dict[int, Dict[int, object]] = {}
        for (row, col), value in entries.items():
            columns.setdefault(col, {})[row] = value
        return cls(nrows, ncols, field, columns)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], field: Field) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        columns: Dict[int, Dict[int, object]] = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatchError(ncols, len(row), f"row {i}")
            for j, value in enumerate(row):
                columns.setdefault(j, {})[i] = value
        return cls(nrows, ncols, field, columns)

    @classmethod
    def identity(cls, n: int, field: Field) -> "SparseMatrix":
        one = field.one()
        return cls._trusted(n, n, field, {i: {i: one} for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: Field) -> "SparseMatrix":
        return cls._trusted(nrows, ncols, field, {})

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(v) for v in self._columns.values())

    def column(self, col: int) -> Vector:
        return dict(self._columns.get(col, {}))

    def get(self, row: int, col: int) -> Scalar:
        return self._columns.get(col, {}).get(row, self.field.zero())

    def entries(self) -> Iterable[Tuple[int, int, Scalar]]:
        """Nonzero entries as (row, col, value), sorted by (col, row)."""
        for col in sorted(self._columns):
            entries = self._columns[col]
            for row in sorted(entries):
                yield row, col, entries[row]

    def matvec(self, x: Mapping[int, object]) -> Vector:
        result: Vector = {}
        for col, coefficient in x.items():
            if coefficient and col in self._columns:
                add_scaled(result, self._columns[col], coefficient)
        return result

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatchError(self.ncols, other.nrows, "matrix product")
        if self.field != other.field:
            raise FieldMismatchError(self.field.name, other.field.name, "matrix product")
        columns = {col: self.matvec(vec) for col, vec in other._columns.items()}
        return SparseMatrix._trusted(self.nrows, other.ncols, self.field, columns)

    def transpose(self) -> "SparseMatrix":
        columns: Dict[int, Vector] = {}
        for col, entries in self._columns.items():
            for row, value in entries.items():
                columns.setdefault(row, {})[col] = value
        return SparseMatrix._trusted(self.ncols, self.nrows, self.field, columns)

    def subtract(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(self.shape, other.shape, "matrix difference")
        columns = {c: dict(v) for c, v in self._columns.items()}
        for col, entries in other._columns.items():
            target = columns.setdefault(col, {})
            add_scaled(target, entries, -1)
        return SparseMatrix._trusted(self.nrows, self.ncols, self.field, columns)

    def to_dense(self) -> List[List[Scalar]]:
        zero = self.field.zero()
        dense = [[zero] * self.ncols for _ in range(self.nrows)]
        for row, col, value in self.entries():
            dense[row][col] = value
        return dense

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.field == other.field
            and self._columns == other._columns
        )

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols} over {self.field.name}, nnz={self.nnz})"


class EchelonForm:
    """
    Column-incremental echelon form with provenance tracking.

    Columns are fed one at a time with a hashable tag. A column independent
    of everything before it becomes a pivot; a dependent column produces the
    relation ``tag - sum(coef * earlier_tag)`` (a kernel vector in tag
    coordinates).

    Args:
        field: Scalar field
        row_weight: Optional row -> weight map; among the candidate pivot rows
            of a new column the lightest row wins (ties: lowest row). This is
            the Markowitz-style choice that keeps fill-in down.
        track: Keep combination histories (needed for kernels and witnesses)
    """

    def __init__(self, field: Field, row_weight: Optional[Mapping[int, int]] = None, track: bool = True):
        self.field = field
        self.row_weight = row_weight or {}
        self.track = track
        self._pivots: Dict[Hashable, Dict] = {}
        self._order: Dict[Hashable, int] = {}
        self._history: Dict[Hashable, Dict[Hashable, Scalar]] = {}
        self.pivot_tags: List[Hashable] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vector: Mapping) -> Tuple[Dict, Dict[Hashable, Scalar]]:
        """
        Reduce a vector against the current pivots.

        Returns:
            (residual, used) with vector = residual + sum(used[tag] * column(tag))
        """
        residual = dict(vector)
        used: Dict[Hashable, Scalar] = {}
        heap = [(self._order[row], row) for row in residual if row in self._pivots]
        heapq.heapify(heap)
        while heap:
            _, row = heapq.heappop(heap)
            coefficient = residual.get(row)
            if not coefficient:
                continue
            pivot = self._pivots[row]
            for other_row, value in pivot.items():
                new = residual.get(other_row, 0) - coefficient * value
                if new:
                    if other_row not in residual and other_row in self._pivots:
                        heapq.heappush(heap, (self._order[other_row], other_row))
                    residual[other_row] = new
                elif other_row in residual:
                    del residual[other_row]
            if self.track:
                add_scaled(used, self._history[row], coefficient)
        return residual, used

    def add(self, vector: Mapping, tag: Hashable) -> Optional[Dict[Hashable, Scalar]]:
        """
        Feed a column.

        Returns:
            None if the column became a pivot, otherwise the kernel relation
            {tag: 1, earlier_tag: -coef, ...}
        """
        residual, used = self.reduce(vector)
        if not residual:
            relation = {tag: self.field.one()}
            add_scaled(relation, used, -1)
            return relation
        pivot_row = min(residual, key=lambda r: (self.row_weight.get(r, 0), r))
        inverse = self.field.one() / residual[pivot_row]
        self._pivots[pivot_row] = scale_vector(residual, inverse)
        self._order[pivot_row] = len(self._order)
        if self.track:
            history = {tag: inverse}
            add_scaled(history, used, -inverse)
            self._history[pivot_row] = history
        self.pivot_tags.append(tag)
        return None

    def solve(self, vector: Mapping) -> Optional[Dict[Hashable, Scalar]]:
        """Coefficients over tags reproducing ``vector``, or None if not in the span."""
        residual, used = self.reduce(vector)
        if residual:
            return None
        return used


def _markowitz_order(matrix: SparseMatrix) -> Tuple[List[int], Dict[int, int]]:
    row_weight: Dict[int, int] = {}
    for entries in matrix._columns.values():
        for row in entries:
            row_weight[row] = row_weight.get(row, 0) + 1
    order = sorted(range(matrix.ncols), key=lambda c: (len(matrix._columns.get(c, ())), c))
    return order, row_weight


def eliminate(matrix: SparseMatrix, track: bool = True) -> Tuple[EchelonForm, List[Dict[int, Scalar]]]:
    """
    Run the elimination over all columns of ``matrix``.

    Returns:
        (echelon form tagged by column index, kernel relations in column order)
    """
    order, row_weight = _markowitz_order(matrix)
    echelon = EchelonForm(matrix.field, row_weight=row_weight, track=track)
    relations = []
    for col in order:
        relation = echelon.add(matrix._columns.get(col, {}), col)
        if relation is not None:
            relations.append(relation)
    return echelon, relations


def rank(matrix: SparseMatrix) -> int:
    """Rank over the matrix's field."""
    echelon, _ = eliminate(matrix, track=False)
    return echelon.rank


def kernel_basis(matrix: SparseMatrix) -> List[Dict[int, Scalar]]:
    """
    Basis of the null space, one vector per non-pivot column.

    Each vector has coefficient 1 at its own free column and is otherwise
    supported on pivot columns processed before it.
    """
    _, relations = eliminate(matrix)
    return [dict(sorted(v.items())) for v in relations]


def _as_vector(v: Union[Mapping[int, object], Sequence[object]], length: int, field: Field) -> Vector:
    if isinstance(v, Mapping):
        items = v.items()
    else:
        if len(v) != length:
            raise DimensionMismatchError(length, len(v), "right-hand side")
        items = enumerate(v)
    vector: Vector = {}
    for index, value in items:
        if not 0 <= index < length:
            raise DimensionMismatchError(f"index < {length}", index, "right-hand side")
        scalar = field(value)
        if scalar:
            vector[index] = scalar
    return vector


def membership_solve(
    matrix: SparseMatrix, v: Union[Mapping[int, object], Sequence[object]]
) -> Optional[Dict[int, Scalar]]:
    """
    Solve M x = v exactly.

    Returns:
        x as a sparse {col: value} vector, or None when v is not in the image
    """
    target = _as_vector(v, matrix.nrows, matrix.field)
    echelon, _ = eliminate(matrix)
    solution = echelon.solve(target)
    if solution is None:
        return None
    return dict(sorted(solution.items()))


def inverse(matrix: SparseMatrix) -> SparseMatrix:
    """Inverse of a square matrix; raises ZeroDivisionError when singular."""
    if matrix.nrows != matrix.ncols:
        raise DimensionMismatchError("square matrix", matrix.shape, "inverse")
    echelon, relations = eliminate(matrix)
    if relations:
        raise ZeroDivisionError(f"matrix is singular (rank {echelon.rank} < {matrix.ncols})")
    one = matrix.field.one()
    columns = {}
    for i in range(matrix.nrows):
        columns[i] = echelon.solve({i: one})
    return SparseMatrix._trusted(matrix.nrows, matrix.ncols, matrix.field, columns)


def to_dense_vector(v: Mapping[int, Scalar], length: int, field: Field) -> List[Scalar]:
    zero = field.zero()
    return [v.get(i, zero) for i in range(length)]
