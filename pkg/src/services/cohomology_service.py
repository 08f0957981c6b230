"""
Cohomology engine: cochain spaces as coordinate vectors, the delta
matrices, HH^n and its sigma-twisted variant HH^n(A)^{sigma up}, the
comparison map Theta, class arithmetic and the induced BV operator.

Coordinates. A degree-n cochain f is the vector with entry f(t)_v at
ravel(t) * dim + v, where ravel numbers basis tuples lexicographically.
Each space is split into blocks of constant internal multidegree
deg(v) - deg(t) over the gradings that the relevant automorphism
preserves. delta and the twists map blocks to blocks, so every rank,
kernel and membership question is answered block by block.

Budget. Touching C^k (its coordinates, or rows of a delta matrix landing
in it) needs dim^(k+1) <= engine.budget.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from src.algebra.automorphism import Automorphism
from src.algebra.grading import preserves_grading
from src.hochschild import calculus
from src.hochschild.calculus import bracket, bv_delta, cup, nu_average
from src.hochschild.cochain import BasisTuple, Cochain, linear_combination
from src.hochschild.random_cochains import sample_tuples
from src.linalg.fields import Scalar
from src.linalg.sparse import EchelonForm, SparseMatrix, add_scaled, scale_vector
from src.utils.errors import (
    AveragingUndefinedError,
    DegreeTooLargeError,
    HochschildError,
    InapplicableError,
    InconsistentStructureError,
    MissingFrobeniusError,
    NotACocycleError,
    NotInvariantError,
    ParentMismatchError,
)
from src.utils.logging_utils import LoggerContext
from src.zoo.bundle import ZooAlgebra

Vector = Dict[int, Scalar]
BlockKey = Tuple[int, ...]

DEFAULT_BUDGET = 2 ** 24
PARALLEL_MIN_COLUMNS = 2048


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _members(classes: np.ndarray, count: int) -> List[np.ndarray]:
    order = np.argsort(classes, kind='stable')
    bounds = np.cumsum(np.bincount(classes, minlength=count))[:-1]
    return np.split(order, bounds)


def _combine(vectors: Sequence[Mapping[int, Scalar]], coefficients: Mapping[int, Scalar]) -> Vector:
    result: Vector = {}
    for j, c in coefficients.items():
        add_scaled(result, vectors[j], c)
    return dict(sorted(result.items()))


class _GradedSpace:
    """Block structure of C^k for one tuple of gradings."""

    def __init__(self, degrees: np.ndarray, k: int):
        dim, width = degrees.shape
        self.dim = dim
        self.degree = k
        tuple_degrees = np.zeros((1, width), dtype=np.int64)
        for _ in range(k):
            tuple_degrees = (tuple_degrees[:, None, :] + degrees[None, :, :]).reshape(-1, width)
        tuple_keys, tuple_class = np.unique(tuple_degrees, axis=0, return_inverse=True)
        out_keys, out_class = np.unique(degrees, axis=0, return_inverse=True)
        self.tuple_class = np.asarray(tuple_class).reshape(-1)
        self.out_class = np.asarray(out_class).reshape(-1)
        self._tuple_members = _members(self.tuple_class, len(tuple_keys))
        self._out_members = _members(self.out_class, len(out_keys))

        self._pair_key: Dict[Tuple[int, int], BlockKey] = {}
        self.blocks: Dict[BlockKey, List[Tuple[int, int]]] = {}
        for c, tuple_key in enumerate(tuple_keys):
            for o, out_key in enumerate(out_keys):
                key = tuple(int(x) for x in out_key - tuple_key)
                self._pair_key[(c, o)] = key
                self.blocks.setdefault(key, []).append((c, o))

    def keys(self) -> List[BlockKey]:
        return sorted(self.blocks)

    def key_of(self, coordinate: int) -> BlockKey:
        t_index, out = divmod(coordinate, self.dim)
        return self._pair_key[(int(self.tuple_class[t_index]), int(self.out_class[out]))]

    def coordinates(self, key: BlockKey) -> List[int]:
        parts = [
            (self._tuple_members[c][:, None] * self.dim + self._out_members[o][None, :]).ravel()
            for c, o in self.blocks.get(key, ())
        ]
        if not parts:
            return []
        return sorted(int(x) for x in np.concatenate(parts))

    def split(self, vector: Mapping[int, Scalar]) -> Dict[BlockKey, Vector]:
        parts: Dict[BlockKey, Vector] = {}
        for coordinate, value in vector.items():
            parts.setdefault(self.key_of(coordinate), {})[coordinate] = value
        return parts


@dataclass(eq=False)
class CohomologyBasis:
    """
    A basis of HH^n (sigma None) or of HH^n(A)^{sigma up}.

    Every representative is a cocycle of the (sigma-fixed) complex, and the
    representatives are independent modulo coboundaries. The per-block
    reduction data expresses any cocycle as class coordinates plus the
    coboundary of an explicit witness.
    """

    engine: "CohomologyEngine" = field(repr=False)
    degree: int
    sigma: Optional[Automorphism]
    vectors: List[Vector]
    keys: List[BlockKey]
    kernel_dim: int
    image_dim: int
    reduction: Dict[BlockKey, Tuple[EchelonForm, List[Vector]]] = field(repr=False, default_factory=dict)
    _representatives: Optional[List[Cochain]] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def representatives(self) -> List[Cochain]:
        if self._representatives is None:
            self._representatives = [
                self.engine.vector_cochain(v, self.degree, name=f"z{self.degree}_{i}")
                for i, v in enumerate(self.vectors)
            ]
        return self._representatives

    @property
    def label(self) -> str:
        suffix = "" if self.sigma is None else f"^{self.sigma.name}"
        return f"HH^{self.degree}{suffix}"

    def element(self, coordinates: Sequence[object]) -> "CohomologyClass":
        field_ = self.engine.field
        if len(coordinates) != self.dim:
            raise InapplicableError("class coordinates", f"{self.label} has dimension {self.dim}")
        return CohomologyClass(self, tuple(field_(c) for c in coordinates))

    def basis_class(self, i: int) -> "CohomologyClass":
        return self.element([1 if j == i else 0 for j in range(self.dim)])

    def zero(self) -> "CohomologyClass":
        return self.element([0] * self.dim)


@dataclass(eq=False)
class CohomologyClass:
    """A class given by coordinates in a CohomologyBasis."""

    basis: CohomologyBasis
    coordinates: Tuple[Scalar, ...]

    @property
    def degree(self) -> int:
        return self.basis.degree

    @property
    def engine(self) -> "CohomologyEngine":
        return self.basis.engine

    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def vector(self) -> Vector:
        return _combine(self.basis.vectors, {i: c for i, c in enumerate(self.coordinates) if c})

    def representative(self) -> Cochain:
        return self.engine.vector_cochain(self.vector(), self.degree, name=f"rep({self.basis.label})")

    def _check_same(self, other: "CohomologyClass", operation: str) -> None:
        if other.basis is not self.basis:
            raise ParentMismatchError(f"class {operation} across {self.basis.label} and {other.basis.label}")

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        self._check_same(other, "addition")
        return CohomologyClass(self.basis, tuple(a + b for a, b in zip(self.coordinates, other.coordinates)))

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + other.scale(-1)

    def scale(self, scalar) -> "CohomologyClass":
        c = self.engine.field(scalar)
        return CohomologyClass(self.basis, tuple(c * x for x in self.coordinates))

    def __neg__(self) -> "CohomologyClass":
        return self.scale(-1)

    def cup(self, other: "CohomologyClass") -> "CohomologyClass":
        return self.engine.cup_classes(self, other)

    def bracket(self, other: "CohomologyClass") -> "CohomologyClass":
        return self.engine.bracket_classes(self, other)

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.basis is other.basis and self.coordinates == other.coordinates

    def __hash__(self):
        return hash((id(self.basis), self.coordinates))

    def __repr__(self):
        coords = ", ".join(str(c) for c in self.coordinates)
        return f"CohomologyClass({self.basis.label}: [{coords}])"


@dataclass(eq=False)
class ThetaMap:
    """
    Theta: HH^n(A)^{sigma up} -> HH^n(A) in the two computed bases.

    ``columns[j]`` holds the target coordinates of source class j;
    ``fixed_dim`` is the dimension of the sigma-fixed classes of HH^n.
    """

    source: CohomologyBasis
    target: CohomologyBasis
    columns: List[Tuple[Scalar, ...]]
    rank: int
    fixed_dim: int

    @property
    def injective(self) -> bool:
        return self.rank == self.source.dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.fixed_dim

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


@dataclass(eq=False)
class BvMatrix:
    """Induced Delta: HH^n(A)^{nu up} -> HH^{n-1}(A)^{nu up}; rows index target classes."""

    source: CohomologyBasis
    target: Optional[CohomologyBasis]
    rows: List[List[Scalar]]

    @property
    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)


class CohomologyEngine:
    """
    Exact Hochschild cohomology of one zoo algebra.

    Results (bases, fixed subspaces, image echelon forms) are cached per
    (automorphism, degree, block) and never mutated after construction.

    Args:
        zoo: The algebra with its Frobenius data, automorphisms and gradings
        config: Toolkit configuration (engine and sampling sections)
        logger: Logger for progress messages
    """

    def __init__(self, zoo: ZooAlgebra, config: Optional[Dict] = None, logger: Optional[logging.Logger] = None):
        self.zoo = zoo
        self.algebra = zoo.algebra
        self.field = self.algebra.field
        self.dim = self.algebra.dim
        self.config = config or {}
        self.logger = logger or logging.getLogger(__name__)

        engine_config = self.config.get('engine', {})
        self.budget = int(engine_config.get('budget', DEFAULT_BUDGET))
        self.n_jobs = int(engine_config.get('n_jobs', 1))
        self.check_samples = int(engine_config.get('cocycle_check_samples', 25))
        self.exhaustive_limit = int(engine_config.get('exhaustive_check_limit', 2 ** 16))
        self.order_bound = engine_config.get('order_bound')
        self.seed = int(self.config.get('sampling', {}).get('seed', 0))

        self._spaces: Dict[Tuple, _GradedSpace] = {}
        self._bases: Dict[Tuple, CohomologyBasis] = {}
        self._fixed: Dict[Tuple, List[Vector]] = {}
        self._images: Dict[Tuple, Tuple[EchelonForm, List[Vector]]] = {}
        self._preimage_rows: Dict[int, List[List[Tuple[int, Scalar]]]] = {}
        self._pinned: Dict[int, Automorphism] = {}

    # Coordinates

    def require_budget(self, k: int) -> None:
        """Raise DegreeTooLargeError unless C^k fits the budget."""
        size = self.dim ** (k + 1)
        if size > self.budget:
            raise DegreeTooLargeError(k, size, self.budget)

    def _ravel(self, t: BasisTuple) -> int:
        index = 0
        for k in t:
            index = index * self.dim + k
        return index

    def _unravel(self, index: int, k: int) -> BasisTuple:
        digits = []
        for _ in range(k):
            index, digit = divmod(index, self.dim)
            digits.append(digit)
        return tuple(reversed(digits))

    def coordinate_of(self, t: BasisTuple, out: int) -> int:
        return self._ravel(t) * self.dim + out

    def tuple_of(self, coordinate: int, k: int) -> BasisTuple:
        return self._unravel(coordinate // self.dim, k)

    def cochain_vector(self, f: Cochain) -> Vector:
        """Coordinates of f; rule cochains are evaluated on every tuple."""
        if f.parent is not self.algebra:
            raise ParentMismatchError("cochain_vector")
        self.require_budget(f.degree)
        tuples = f.support() if f.is_table else itertools.product(range(self.dim), repeat=f.degree)
        vector: Vector = {}
        for t in tuples:
            base = self._ravel(t) * self.dim
            for v, c in f.evaluate(t).items():
                if c:
                    vector[base + v] = c
        return vector

    def vector_cochain(self, vector: Mapping[int, Scalar], degree: int, name: Optional[str] = None) -> Cochain:
        table: Dict[BasisTuple, Vector] = {}
        for coordinate, c in vector.items():
            if c:
                t_index, out = divmod(coordinate, self.dim)
                table.setdefault(self._unravel(t_index, degree), {})[out] = c
        return Cochain(self.algebra, degree, table=table, name=name)

    # Context and blocks

    def _context(self, sigma: Optional[Automorphism]) -> Optional[Automorphism]:
        if sigma is None:
            return None
        if sigma.algebra is not self.algebra:
            raise ParentMismatchError(f"automorphism {sigma.name}")
        if sigma.is_identity():
            return None
        # caches are keyed by id; keep the automorphism alive
        self._pinned[id(sigma)] = sigma
        return sigma

    def block_gradings(self, sigma: Optional[Automorphism] = None) -> Tuple[str, ...]:
        """Names of the gradings splitting the (sigma-fixed) complex."""
        names = sorted(self.zoo.gradings)
        if sigma is not None:
            names = [n for n in names if preserves_grading(sigma, self.zoo.gradings[n])]
        return tuple(names)

    def _space(self, sigma: Optional[Automorphism], k: int) -> _GradedSpace:
        names = self.block_gradings(sigma)
        key = (names, k)
        space = self._spaces.get(key)
        if space is None:
            if names:
                degrees = np.array([self.zoo.gradings[n].degrees for n in names], dtype=np.int64).T
            else:
                degrees = np.zeros((self.dim, 1), dtype=np.int64)
            space = _GradedSpace(degrees, k)
            self._spaces[key] = space
        return space

    # delta

    def _delta_column(self, k: int, coordinate: int) -> Vector:
        """delta_k applied to the unit cochain at coordinate (t, out)."""
        d = self.dim
        algebra = self.algebra
        t_index, out = divmod(coordinate, d)
        t = self._unravel(t_index, k)
        column: Vector = {}

        shift = d ** k
        for a in range(d):
            product = algebra.basis_product(a, out)
            if product:
                add_scaled(column, {((a * shift + t_index) * d + v): c for v, c in product.items()}, 1)

        for i in range(1, k + 1):
            sign = _sign(i)
            head = self._ravel(t[:i - 1])
            tail_length = k - i
            tail = self._ravel(t[i:])
            tail_shift = d ** tail_length
            for x, y, c in algebra.product_preimages(t[i - 1]):
                u_index = ((head * d + x) * d + y) * tail_shift + tail
                add_scaled(column, {u_index * d + out: c}, sign)

        sign = _sign(k + 1)
        for a in range(d):
            product = algebra.basis_product(out, a)
            if product:
                add_scaled(column, {((t_index * d + a) * d + v): c for v, c in product.items()}, sign)
        return column

    def _delta_columns(self, k: int, coordinates: Sequence[int]) -> List[Vector]:
        if self.n_jobs == 1 or len(coordinates) < PARALLEL_MIN_COLUMNS:
            return [self._delta_column(k, c) for c in coordinates]
        return Parallel(n_jobs=self.n_jobs, prefer='threads')(
            delayed(self._delta_column)(k, c) for c in coordinates
        )

    def delta_vector(self, vector: Mapping[int, Scalar], k: int) -> Vector:
        """delta_k on a coordinate vector of C^k (sparse, no budget needed)."""
        result: Vector = {}
        for coordinate, c in vector.items():
            add_scaled(result, self._delta_column(k, coordinate), c)
        return result

    def delta_matrix(self, n: int) -> SparseMatrix:
        """
        The matrix of delta_n: C^n -> C^{n+1} in tuple-times-basis coordinates.

        Raises:
            DegreeTooLargeError: C^{n+1} exceeds the budget
        """
        self.require_budget(n + 1)
        ncols = self.dim ** (n + 1)
        with LoggerContext(self.logger, f"delta matrix n={n} ({ncols} columns)"):
            columns = self._delta_columns(n, range(ncols))
        return SparseMatrix(self.dim ** (n + 2), ncols, self.field, dict(enumerate(columns)))

    # Twists and fixed subspaces

    def _rows_of(self, sigma: Automorphism) -> List[List[Tuple[int, Scalar]]]:
        rows = self._preimage_rows.get(id(sigma))
        if rows is None:
            rows = [[] for _ in range(self.dim)]
            for u in range(self.dim):
                for s, c in sigma.image(u).items():
                    rows[s].append((u, c))
            self._preimage_rows[id(sigma)] = rows
        return rows

    def _twist_column(self, sigma: Automorphism, k: int, coordinate: int) -> Vector:
        """The twist f -> f^sigma on the unit cochain at coordinate (t, out)."""
        d = self.dim
        t_index, out = divmod(coordinate, d)
        rows = self._rows_of(sigma)
        partial = [(0, self.field.one())]
        for s in self._unravel(t_index, k):
            partial = [(index * d + u, c * value) for index, c in partial for u, value in rows[s]]
        tail = sigma.inverse_image(out)
        column: Vector = {}
        for index, c in partial:
            for v, w in tail.items():
                column[index * d + v] = c * w
        return column

    def twist_vector(self, sigma: Automorphism, vector: Mapping[int, Scalar], k: int) -> Vector:
        result: Vector = {}
        for coordinate, c in vector.items():
            add_scaled(result, self._twist_column(sigma, k, coordinate), c)
        return result

    def _cochain_basis(self, sigma: Optional[Automorphism], k: int, key: BlockKey) -> List[Vector]:
        """Basis of block ``key`` of C^k, or of its sigma-fixed part: the kernel of T - I."""
        coordinates = self._space(sigma, k).coordinates(key)
        one = self.field.one()
        if sigma is None:
            return [{c: one} for c in coordinates]
        cache_key = (id(sigma), k, key)
        basis = self._fixed.get(cache_key)
        if basis is None:
            echelon = EchelonForm(self.field)
            basis = []
            for c in coordinates:
                column = self._twist_column(sigma, k, c)
                add_scaled(column, {c: one}, -1)
                relation = echelon.add(column, c)
                if relation is not None:
                    basis.append(dict(sorted(relation.items())))
            self._fixed[cache_key] = basis
        return basis

    def _require_invariant(self, sigma: Automorphism, vector: Vector, k: int) -> None:
        twisted = self.twist_vector(sigma, vector, k)
        if twisted != vector:
            difference = dict(twisted)
            add_scaled(difference, vector, -1)
            raise NotInvariantError(sigma.name, self.tuple_of(min(difference), k))

    # Cohomology

    def _image_echelon(self, sigma: Optional[Automorphism], n: int, key: BlockKey) -> Tuple[EchelonForm, List[Vector]]:
        """Echelon form of delta_{n-1} on block ``key``, tagged by preimage index."""
        cache_key = (id(sigma), n, key)
        cached = self._images.get(cache_key)
        if cached is None:
            echelon = EchelonForm(self.field)
            preimages = self._cochain_basis(sigma, n - 1, key) if n > 0 else []
            columns = self._delta_image(preimages, n - 1)
            for j, column in enumerate(columns):
                echelon.add(column, j)
            cached = (echelon, preimages)
            self._images[cache_key] = cached
        return cached

    def _delta_image(self, vectors: List[Vector], k: int) -> List[Vector]:
        if vectors and all(len(v) == 1 for v in vectors):
            coordinates = [next(iter(v)) for v in vectors]
            scalars = [v[c] for v, c in zip(vectors, coordinates)]
            return [scale_vector(column, s) for column, s in zip(self._delta_columns(k, coordinates), scalars)]
        return [self.delta_vector(v, k) for v in vectors]

    def hh(self, n: int, sigma: Optional[Automorphism] = None) -> CohomologyBasis:
        """
        HH^n, or HH^n(A)^{sigma up} when ``sigma`` is given.

        Raises:
            DegreeTooLargeError: C^{n+1} exceeds the budget
        """
        context = self._context(sigma)
        cache_key = (id(context), n)
        cached = self._bases.get(cache_key)
        if cached is not None:
            return cached
        self.require_budget(n + 1)
        space = self._space(context, n)
        vectors: List[Vector] = []
        keys: List[BlockKey] = []
        reduction: Dict[BlockKey, Tuple[EchelonForm, List[Vector]]] = {}
        kernel_dim = image_dim = 0

        label = "HH" if context is None else f"HH^{context.name}"
        with LoggerContext(self.logger, f"{label} degree {n} on {self.algebra.name}"):
            for key in space.keys():
                basis = self._cochain_basis(context, n, key)
                if not basis:
                    continue
                kernel = EchelonForm(self.field)
                cocycles = []
                for j, column in enumerate(self._delta_image(basis, n)):
                    relation = kernel.add(column, j)
                    if relation is not None:
                        cocycles.append(_combine(basis, relation))
                if not cocycles:
                    continue
                kernel_dim += len(cocycles)

                classes = EchelonForm(self.field)
                preimages = self._cochain_basis(context, n - 1, key) if n > 0 else []
                for j, column in enumerate(self._delta_image(preimages, n - 1)):
                    if classes.add(column, ('im', j)) is None:
                        image_dim += 1
                for z in cocycles:
                    if classes.add(z, ('rep', len(vectors))) is None:
                        vectors.append(z)
                        keys.append(key)
                reduction[key] = (classes, preimages)

        if kernel_dim - image_dim != len(vectors):
            raise InconsistentStructureError(
                f"{label} degree {n}", f"kernel {kernel_dim} - image {image_dim} != {len(vectors)} classes"
            )
        result = CohomologyBasis(self, n, context, vectors, keys, kernel_dim, image_dim, reduction)
        self._bases[cache_key] = result
        self.logger.debug(f"{result.label}: dim {result.dim} (kernel {kernel_dim}, image {image_dim})")
        return result

    def hh_dim(self, n: int) -> int:
        return self.hh(n).dim

    def hh_up(self, sigma: Automorphism, n: int) -> CohomologyBasis:
        """Cohomology of the sigma-fixed subcomplex in degree n."""
        return self.hh(n, sigma)

    def _reduce_in(self, basis: CohomologyBasis, vector: Mapping[int, Scalar]) -> Tuple[List[Scalar], Vector]:
        """(class coordinates, witness w) with vector = sum c_i z_i + delta(w)."""
        n = basis.degree
        coordinates = [self.field.zero()] * basis.dim
        witness: Vector = {}
        space = self._space(basis.sigma, n)
        for key, part in space.split(vector).items():
            entry = basis.reduction.get(key)
            residual, used = part, {}
            if entry is not None:
                echelon, preimages = entry
                residual, used = echelon.reduce(part)
            if residual:
                delta = self.delta_vector(part, n)
                if delta:
                    raise NotACocycleError(n, self.tuple_of(min(delta), n + 1))
                if basis.sigma is not None:
                    self._require_invariant(basis.sigma, part, n)
                raise InconsistentStructureError(f"{basis.label} reduction", f"cocycle left a residual in block {key}")
            for (kind, j), c in used.items():
                if kind == 'rep':
                    coordinates[j] = coordinates[j] + c
                else:
                    add_scaled(witness, preimages[j], c)
        return coordinates, witness

    def class_of(self, f: Cochain, sigma: Optional[Automorphism] = None) -> CohomologyClass:
        """
        The class of a cocycle in hh(deg f, sigma).

        Raises:
            NotACocycleError, NotInvariantError
        """
        basis = self.hh(f.degree, sigma)
        vector = self.cochain_vector(f)
        if basis.sigma is not None:
            self._require_invariant(basis.sigma, vector, f.degree)
        coordinates, _ = self._reduce_in(basis, vector)
        return CohomologyClass(basis, tuple(coordinates))

    def is_coboundary(self, f: Cochain, sigma: Optional[Automorphism] = None) -> Optional[Cochain]:
        """
        A witness g with delta(g) = f (g sigma-fixed when sigma is given), or
        None when f is a cocycle outside the coboundaries.

        In degree 0 only the zero cochain is a coboundary; its witness is
        the zero cochain of degree 0.

        Raises:
            NotACocycleError: f is not a coboundary and delta(f) != 0
            NotInvariantError: sigma given and f^sigma != f
            DegreeTooLargeError: C^n exceeds the budget
        """
        n = f.degree
        context = self._context(sigma)
        vector = self.cochain_vector(f)
        if context is not None:
            self._require_invariant(context, vector, n)
        if n == 0:
            if not vector:
                return Cochain.zero(self.algebra, 0)
            delta = self.delta_vector(vector, 0)
            if delta:
                raise NotACocycleError(0, self.tuple_of(min(delta), 1))
            return None

        witness: Vector = {}
        for key, part in self._space(context, n).split(vector).items():
            echelon, preimages = self._image_echelon(context, n, key)
            solution = echelon.solve(part)
            if solution is None:
                delta = self.delta_vector(part, n)
                if delta:
                    raise NotACocycleError(n, self.tuple_of(min(delta), n + 1))
                return None
            for j, c in solution.items():
                add_scaled(witness, preimages[j], c)
        return self.vector_cochain(witness, n - 1, name=f"w({f.name})")

    def same_class(self, f: Cochain, g: Cochain, sigma: Optional[Automorphism] = None) -> bool:
        """Class equality via is_coboundary of the difference."""
        return self.is_coboundary(linear_combination([(1, f), (-1, g)]), sigma) is not None

    # Theta and the action of automorphisms on classes

    def _rank(self, columns: Sequence[Mapping[int, Scalar]]) -> int:
        echelon = EchelonForm(self.field, track=False)
        for j, column in enumerate(columns):
            echelon.add(column, j)
        return echelon.rank

    def twist_action(self, sigma: Automorphism, n: int) -> List[Tuple[Scalar, ...]]:
        """Columns of the matrix of [f] -> [f^sigma] on HH^n in the hh basis."""
        basis = self.hh(n)
        columns = []
        for z in basis.vectors:
            coordinates, _ = self._reduce_in(basis, self.twist_vector(sigma, z, n))
            columns.append(tuple(coordinates))
        return columns

    def theta(self, sigma: Automorphism, n: int) -> ThetaMap:
        """
        The class map HH^n(A)^{sigma up} -> HH^n(A) induced by inclusion,
        with its rank and the dimension of the sigma-fixed classes.
        """
        source = self.hh_up(sigma, n)
        target = self.hh(n)
        columns = [tuple(self._reduce_in(target, z)[0]) for z in source.vectors]
        rank = self._rank([{i: c for i, c in enumerate(col) if c} for col in columns])
        if self._context(sigma) is None:
            fixed_dim = target.dim
        else:
            shifted = []
            for j, column in enumerate(self.twist_action(sigma, n)):
                entries = {i: c for i, c in enumerate(column) if c}
                add_scaled(entries, {j: self.field.one()}, -1)
                shifted.append(entries)
            fixed_dim = target.dim - self._rank(shifted)
        self.logger.debug(f"Theta degree {n}: rank {rank}, source {source.dim}, fixed {fixed_dim}")
        return ThetaMap(source, target, columns, rank, fixed_dim)

    # Class arithmetic

    def _product_class(self, product: Cochain, sigma: Optional[Automorphism]) -> CohomologyClass:
        basis = self.hh(product.degree, sigma)
        coordinates, _ = self._reduce_in(basis, self.cochain_vector(product))
        return CohomologyClass(basis, tuple(coordinates))

    def cup_classes(self, x: CohomologyClass, y: CohomologyClass) -> CohomologyClass:
        if x.basis.sigma is not y.basis.sigma:
            raise ParentMismatchError("cup of classes from different complexes")
        return self._product_class(cup(x.representative(), y.representative()), x.basis.sigma)

    def bracket_classes(self, x: CohomologyClass, y: CohomologyClass) -> CohomologyClass:
        if x.basis.sigma is not y.basis.sigma:
            raise ParentMismatchError("bracket of classes from different complexes")
        if x.degree + y.degree == 0:
            raise InapplicableError("bracket of classes", "both classes have degree 0")
        return self._product_class(bracket(x.representative(), y.representative()), x.basis.sigma)

    # BV structure

    def _frobenius(self, operation: str):
        if self.zoo.frobenius is None:
            raise MissingFrobeniusError(operation)
        return self.zoo.frobenius

    def _check_tuples(self, degree: int) -> List[BasisTuple]:
        rng = np.random.default_rng(self.seed)
        return sample_tuples(self.algebra, degree, self.check_samples, rng)

    def invariant_representative(self, x: CohomologyClass) -> Cochain:
        """
        A nu-invariant table representative of x.

        Raises:
            InapplicableError: x has no nu-invariant representative at hand
                and nu-averaging is undefined
        """
        frobenius = self._frobenius("invariant_representative")
        nu = frobenius.nakayama
        representative = x.representative()
        if x.basis.sigma is not None and x.basis.sigma == nu:
            return representative
        vector = x.vector()
        if self.twist_vector(nu, vector, x.degree) == vector:
            return representative
        try:
            averaged = nu_average(representative, frobenius, self.order_bound)
        except AveragingUndefinedError as exc:
            raise InapplicableError("nu-invariant representative", str(exc))
        return self.vector_cochain(self.cochain_vector(averaged), x.degree, name=f"avg({representative.name})")

    def normalized_representative(self, x: CohomologyClass) -> Cochain:
        """Normalized nu-invariant representative, materialized as a table."""
        nu = self._frobenius("normalized_representative").nakayama
        f = self.invariant_representative(x)
        normalized = calculus.normalize(f, sigma=nu, tuples=self._check_tuples(x.degree),
                                        exhaustive_limit=self.exhaustive_limit)
        return self.vector_cochain(self.cochain_vector(normalized), x.degree, name=f"norm({f.name})")

    def induced_bv_on_class(self, x: CohomologyClass) -> CohomologyClass:
        """
        Delta: HH^n(A)^{nu up} -> HH^{n-1}(A)^{nu up} on one class.

        Raises:
            InapplicableError: degree 0, or no nu-invariant representative
            MissingFrobeniusError: the algebra carries no Frobenius form
        """
        frobenius = self._frobenius("induced_bv_on_class")
        n = x.degree
        if n == 0:
            raise InapplicableError("induced_bv_on_class", "Delta vanishes on degree 0 and has no target class")
        target = self.hh_up(frobenius.nakayama, n - 1)
        if x.is_zero():
            return target.zero()
        image = bv_delta(self.normalized_representative(x), frobenius)
        coordinates, _ = self._reduce_in(target, self.cochain_vector(image))
        return CohomologyClass(target, tuple(coordinates))

    def bv_matrix(self, n: int) -> BvMatrix:
        """The matrix of induced Delta on HH^n(A)^{nu up}; zero rows in degree 0."""
        nu = self._frobenius("bv_matrix").nakayama
        source = self.hh_up(nu, n)
        if n == 0:
            return BvMatrix(source, None, [])
        target = self.hh_up(nu, n - 1)
        columns = [self.induced_bv_on_class(source.basis_class(j)).coordinates for j in range(source.dim)]
        rows = [[columns[j][i] for j in range(source.dim)] for i in range(target.dim)]
        return BvMatrix(source, target, rows)

    def check_bv_identity(self, x: CohomologyClass, y: CohomologyClass) -> Dict:
        """
        Check [x, y] = -(-1)^{(n-1)m} (Delta(x u y) - Delta(x) u y - (-1)^n x u Delta(y))
        as an equality of classes in the nu-fixed complex.

        Returns:
            Report dict with 'valid', 'errors', 'warnings', 'degrees' and 'status'
        """
        frobenius = self._frobenius("check_bv_identity")
        nu = frobenius.nakayama
        n, m = x.degree, y.degree
        report = {'valid': True, 'errors': [], 'warnings': [], 'degrees': [n, m], 'status': 'PASS'}
        if n + m == 0:
            report['warnings'].append("both classes have degree 0; both sides vanish")
            return report

        f = self.normalized_representative(x)
        g = self.normalized_representative(y)
        terms = [(1, bv_delta(cup(f, g), frobenius))]
        if n > 0:
            terms.append((-1, cup(bv_delta(f, frobenius), g)))
        if m > 0:
            terms.append((-_sign(n), cup(f, bv_delta(g, frobenius))))
        rhs = linear_combination(terms, name="bv_rhs")
        difference = linear_combination([(1, bracket(f, g)), (_sign((n - 1) * m), rhs)], name="bv_defect")

        try:
            witness = self.is_coboundary(difference, sigma=nu)
        except HochschildError as exc:
            report.update(valid=False, status='FAIL', errors=[f"degrees ({n}, {m}): {exc}"])
            return report
        if witness is None:
            report.update(valid=False, status='FAIL',
                          errors=[f"degrees ({n}, {m}): bracket and BV expression differ in cohomology"])
        return report
