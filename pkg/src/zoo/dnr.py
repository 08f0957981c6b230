"""
The self-injective algebras R(n, r) of tree class D_n.

Quiver: vertices (i, j) with i in Z_r (written 1..r) and 1 <= j <= n;
arrows

    alpha(i, j): (i, j) -> (i, j+1)        1 <= j <= n-3
    gamma(i, p): (i, n-2) -> (i, p)        p in {n-1, n}
    beta(i, p):  (i, p) -> (i+1, 1)        p in {n-1, n}

Products are written right to left (``b a`` means a first). Relations:
beta(i,n-1)gamma(i,n-1) = beta(i,n)gamma(i,n) (= tau_i), the crossed paths
gamma(i,phi(p)) eta(i,1) beta(i-1,p) vanish, and so does every path of
length >= n. A nonzero path is therefore determined by its endpoints and
length, and equals the basis element with the same data.

Basis families and their labels (row indices taken mod r):

    e[i,j]        idempotent e_{i,j}
    w[i,k,j]      omega_{i,k,j} = alpha(i,k) ... alpha(i,j), (i,j) -> (i,k+1)
    mte[i,t,j]    mu_{i+1,t-1} tau_i eta_{i,j},  1 <= t <= j <= n-2
    ge[i,p,j]     gamma_{i,p} eta_{i,j}
    mb[i,j,p]     mu_{i+1,j-1} beta_{i,p}
    soc[i,p]      gamma_{i,p} eta_{i,1} beta_{i-1,p}

so dim R(n, r) = r (n^2 + n - 2).
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.algebra import FiniteDimAlgebra, validate
from src.algebra.automorphism import Automorphism
from src.algebra.grading import Grading, check_grading
from src.frobenius.frobenius import build_frobenius
from src.linalg.fields import QQ, Field
from src.linalg.sparse import SparseMatrix
from src.utils.errors import AlgebraStructureError, IndexRangeError, InconsistentStructureError
from src.zoo.bundle import ZooAlgebra

logger = logging.getLogger(__name__)

Vertex = Tuple[int, int]
Arrow = Tuple[str, int, int]


@dataclass(frozen=True)
class BasisPath:
    """A basis element of R(n, r) with a representative arrow word."""

    label: str
    kind: str
    key: Tuple[int, ...]
    source: Vertex
    target: Vertex
    arrows: Tuple[Arrow, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)


class DnrPresentation:
    """
    Combinatorial data of R(n, r): quiver, basis paths, path evaluation,
    the duality b -> bar(b), and the vertex actions of nu and sigma.

    Args:
        n: Tree class parameter, n >= 4
        r: Number of rows, r >= 1
    """

    def __init__(self, n: int, r: int):
        if n < 4:
            raise IndexRangeError("n", n, 4, 10 ** 9)
        if r < 1:
            raise IndexRangeError("r", r, 1, 10 ** 9)
        self.n = n
        self.r = r
        self.period = 2 * n - 3
        self.vertices: List[Vertex] = [(i, j) for i in range(1, r + 1) for j in range(1, n + 1)]
        self.arrows: List[Arrow] = (
            [('a', i, j) for i in range(1, r + 1) for j in range(1, n - 2)]
            + [('g', i, p) for i in range(1, r + 1) for p in (n - 1, n)]
            + [('b', i, p) for i in range(1, r + 1) for p in (n - 1, n)]
        )
        self.basis: List[BasisPath] = self._enumerate_basis()
        self._by_kind: Dict[Tuple, int] = {(b.kind,) + b.key: idx for idx, b in enumerate(self.basis)}
        self._by_endpoints: Dict[Tuple[Vertex, Vertex, int], int] = {}
        for idx, b in enumerate(self.basis):
            endpoint_key = (b.source, b.target, b.length)
            if endpoint_key in self._by_endpoints:
                raise InconsistentStructureError("R(n,r) basis", f"two basis paths share endpoints {endpoint_key}")
            self._by_endpoints[endpoint_key] = idx
        self.bar: List[int] = [self._bar_index(b) for b in self.basis]

    # Index arithmetic

    def row(self, i: int) -> int:
        return (i - 1) % self.r + 1

    def phi(self, j: int, power: int = 1) -> int:
        """Fixes 1..n-2 and swaps n-1 <-> n."""
        if j <= self.n - 2 or power % 2 == 0:
            return j
        return 2 * self.n - 1 - j

    def vertex(self, i: int, j: int) -> Vertex:
        return (self.row(i), j)

    def sigma_vertex(self, x: Vertex, power: int = 1) -> Vertex:
        """sigma^power on vertices: (i, j) -> (i + power(n-1), phi^{power n}(j))."""
        i, j = x
        return (self.row(i + power * (self.n - 1)), self.phi(j, power * self.n))

    def nu_vertex(self, x: Vertex, power: int = 1) -> Vertex:
        i, j = x
        return (self.row(i - power), j)

    def arrow_source(self, arrow: Arrow) -> Vertex:
        kind, i, j = arrow
        if kind == 'a':
            return (i, j)
        if kind == 'g':
            return (i, self.n - 2)
        return (i, j)

    def arrow_target(self, arrow: Arrow) -> Vertex:
        kind, i, j = arrow
        if kind == 'a':
            return (i, j + 1)
        if kind == 'g':
            return (i, j)
        return (self.row(i + 1), 1)

    # Basis

    def _alphas(self, i: int, first: int, last: int) -> Tuple[Arrow, ...]:
        return tuple(('a', self.row(i), k) for k in range(first, last + 1))

    def _enumerate_basis(self) -> List[BasisPath]:
        n = self.n
        basis: List[BasisPath] = []
        for i in range(1, self.r + 1):
            nxt, prv = self.row(i + 1), self.row(i - 1)
            for j in range(1, n + 1):
                basis.append(BasisPath(f"e[{i},{j}]", 'e', (i, j), (i, j), (i, j), ()))
            for j in range(1, n - 1):
                for t in range(j + 1, n - 1):
                    basis.append(BasisPath(
                        f"w[{i},{t - 1},{j}]", 'w', (i, t - 1, j), (i, j), (i, t),
                        self._alphas(i, j, t - 1),
                    ))
            for j in range(1, n - 1):
                for t in range(1, j + 1):
                    arrows = self._alphas(i, j, n - 3) + (('g', i, n), ('b', i, n)) + self._alphas(nxt, 1, t - 1)
                    basis.append(BasisPath(f"mte[{i},{t},{j}]", 'mte', (i, t, j), (i, j), (nxt, t), arrows))
            for p in (n - 1, n):
                for j in range(1, n - 1):
                    arrows = self._alphas(i, j, n - 3) + (('g', i, p),)
                    basis.append(BasisPath(f"ge[{i},{p},{j}]", 'ge', (i, p, j), (i, j), (i, p), arrows))
            for p in (n - 1, n):
                for j in range(1, n - 1):
                    arrows = (('b', i, p),) + self._alphas(nxt, 1, j - 1)
                    basis.append(BasisPath(f"mb[{i},{j},{p}]", 'mb', (i, j, p), (i, p), (nxt, j), arrows))
            for p in (n - 1, n):
                arrows = (('b', prv, p),) + self._alphas(i, 1, n - 3) + (('g', i, p),)
                basis.append(BasisPath(f"soc[{i},{p}]", 'soc', (i, p), (prv, p), (i, p), arrows))
        return basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, kind: str, *key: int) -> int:
        """Basis index of a family member; row indices are reduced mod r."""
        normalized = (kind, self.row(key[0])) + tuple(key[1:])
        try:
            return self._by_kind[normalized]
        except KeyError:
            raise InconsistentStructureError("R(n,r) basis", f"no basis element {kind}{list(key)}")

    def evaluate_path(self, source: Vertex, arrows: Sequence[Arrow]) -> Optional[int]:
        """
        Basis index equal to the path, or None when the path is zero.

        Raises:
            AlgebraStructureError: the word is not a path in the quiver, or a
                nonzero path has no basis element (table corruption)
        """
        current = source
        for arrow in arrows:
            if self.arrow_source(arrow) != current:
                raise AlgebraStructureError(f"arrow {arrow} does not start at {current}")
            current = self.arrow_target(arrow)
        length = len(arrows)
        if length > self.n - 1:
            return None
        if length == self.n - 1 and length > 0:
            first, last = arrows[0], arrows[-1]
            if first[0] == 'b' and last[0] == 'g' and first[2] != last[2]:
                return None
        idx = self._by_endpoints.get((source, current, length))
        if idx is None:
            raise AlgebraStructureError(f"nonzero path {list(arrows)} has no basis element")
        return idx

    def _bar_index(self, b: BasisPath) -> int:
        i, j = b.source
        partner = (self.row(i + 1), j)
        idx = self._by_endpoints.get((b.target, partner, self.n - 1 - b.length))
        if idx is None:
            raise InconsistentStructureError("duality table", f"no dual for {b.label}")
        return idx

    def multiplication_table(self) -> Dict[Tuple[int, int], Dict[int, int]]:
        """b_i * b_j (b_j first) for every composable pair."""
        by_source: Dict[Vertex, List[int]] = {}
        for idx, b in enumerate(self.basis):
            by_source.setdefault(b.source, []).append(idx)
        table = {}
        for j, first in enumerate(self.basis):
            for i in by_source.get(first.target, []):
                second = self.basis[i]
                product = self.evaluate_path(first.source, first.arrows + second.arrows)
                if product is not None:
                    table[(i, j)] = {product: 1}
        return table

    def vertex_of(self, idx: int) -> Optional[Vertex]:
        b = self.basis[idx]
        return b.source if b.kind == 'e' else None

    def arrow_count(self, idx: int, kind: str, row: Optional[int] = None) -> int:
        return sum(1 for a in self.basis[idx].arrows if a[0] == kind and (row is None or a[1] == row))

    def relation_paths(self) -> List[Tuple[str, Vertex, Tuple[Arrow, ...], Optional[Tuple[Arrow, ...]]]]:
        """
        The defining relations as (name, source, word, other_word); a zero
        relation has ``other_word = None``.
        """
        n = self.n
        relations = []
        for i in range(1, self.r + 1):
            nxt, prv = self.row(i + 1), self.row(i - 1)
            relations.append((
                f"tau[{i}]", (i, n - 2), (('g', i, n - 1), ('b', i, n - 1)), (('g', i, n), ('b', i, n)),
            ))
            for p in (n - 1, n):
                word = (('b', prv, p),) + self._alphas(i, 1, n - 3) + (('g', i, self.phi(p)),)
                relations.append((f"crossed[{i},{p}]", (prv, p), word, None))
            for j in range(1, n - 2):
                word = self._alphas(i, j, n - 3) + (('g', i, n), ('b', i, n)) + self._alphas(nxt, 1, j)
                relations.append((f"long[{i},{j}]", (i, j), word, None))
        return relations


def _element_of_word(presentation: DnrPresentation, algebra: FiniteDimAlgebra, source: Vertex, word) -> Dict[int, object]:
    """Multiply the arrows of a word inside the built algebra."""
    current = {presentation.index('e', *source): algebra.field.one()}
    for arrow in word:
        arrow_path = presentation.evaluate_path(presentation.arrow_source(arrow), (arrow,))
        current = algebra.mul_vectors({arrow_path: algebra.field.one()}, current)
    return current


def _check_relations(presentation: DnrPresentation, algebra: FiniteDimAlgebra) -> None:
    for name, source, word, other in presentation.relation_paths():
        value = _element_of_word(presentation, algebra, source, word)
        if other is not None:
            other_value = _element_of_word(presentation, algebra, source, other)
            if value != other_value:
                raise AlgebraStructureError(f"relation {name} fails")
        elif value:
            raise AlgebraStructureError(f"relation {name} does not vanish")


def _shift_matrix(presentation: DnrPresentation, field: Field, vertex_map, signed: bool, power: int) -> SparseMatrix:
    """Signed permutation sending each basis path to the path with mapped endpoints."""
    columns = {}
    for idx, b in enumerate(presentation.basis):
        key = (vertex_map(b.source, power), vertex_map(b.target, power), b.length)
        image = presentation._by_endpoints[key]
        sign = -1 if signed and (power % 2) and presentation.arrow_count(idx, 'g') % 2 else 1
        columns[idx] = {image: sign}
    return SparseMatrix(presentation.dim, presentation.dim, field, columns)


def nu_closed_form(presentation: DnrPresentation, algebra: FiniteDimAlgebra) -> Automorphism:
    """nu shifts every row index by -1."""
    matrix = _shift_matrix(presentation, algebra.field, presentation.nu_vertex, False, 1)
    return Automorphism(algebra, matrix, name="nu_closed")


def build_sigma(presentation: DnrPresentation, algebra: FiniteDimAlgebra) -> Automorphism:
    """sigma(e_{i,j}) = e_{i+n-1, phi^n(j)} with gamma arrows picking up a sign."""
    matrix = _shift_matrix(presentation, algebra.field, presentation.sigma_vertex, True, 1)
    return Automorphism(algebra, matrix, name="sigma")


def gamma_grading(presentation: DnrPresentation, row: Optional[int] = 1) -> Grading:
    """
    Number of gamma arrows of the given row (all rows when ``row`` is None)
    in each basis path.
    """
    name = "gamma" if row is None else f"gamma{row}"
    degrees = tuple(presentation.arrow_count(idx, 'g', row) for idx in range(presentation.dim))
    return Grading(name, degrees)


def length_grading(presentation: DnrPresentation) -> Grading:
    return Grading("length", tuple(b.length for b in presentation.basis))


def vertex_gradings(presentation: DnrPresentation) -> Dict[str, Grading]:
    """
    Peirce gradings deg_x(b) = [target(b) = x] - [source(b) = x] per vertex,
    and their sums over the rows of each column (invariant under nu).
    """
    gradings = {}
    for x in presentation.vertices:
        degrees = tuple(int(b.target == x) - int(b.source == x) for b in presentation.basis)
        gradings[f"vertex[{x[0]},{x[1]}]"] = Grading(f"vertex[{x[0]},{x[1]}]", degrees)
    for j in range(1, presentation.n + 1):
        degrees = tuple(int(b.target[1] == j) - int(b.source[1] == j) for b in presentation.basis)
        gradings[f"column[{j}]"] = Grading(f"column[{j}]", degrees)
    return gradings


def build_dnr(n: int, r: int, field: Field = QQ) -> ZooAlgebra:
    """
    Build R(n, r) with its Frobenius form, sigma and gradings.

    The multiplication table is generated from path evaluation and checked:
    associativity and unit axioms, every defining relation, the solved
    Nakayama automorphism against its closed form, and every grading.

    Returns:
        ZooAlgebra with automorphisms {'sigma'} and gradings gamma1, gamma,
        length plus the vertex gradings; presentation is the DnrPresentation
    """
    presentation = DnrPresentation(n, r)
    labels = [b.label for b in presentation.basis]
    unit = {presentation.index('e', *x): 1 for x in presentation.vertices}
    algebra = FiniteDimAlgebra(field, labels, unit, presentation.multiplication_table(), name=f"R({n},{r})")

    report = validate(algebra)
    if not report['valid']:
        raise AlgebraStructureError(f"R({n},{r}) table", report['violations'][:10])
    _check_relations(presentation, algebra)

    eps = {idx: 1 for idx, b in enumerate(presentation.basis) if b.length == n - 1}
    frobenius = build_frobenius(algebra, eps)
    if frobenius.nakayama != nu_closed_form(presentation, algebra):
        raise InconsistentStructureError("Nakayama automorphism", "solved nu differs from the row shift")

    sigma = build_sigma(presentation, algebra)
    gradings = {
        'gamma1': gamma_grading(presentation, 1),
        'gamma': gamma_grading(presentation, None),
        'length': length_grading(presentation),
    }
    gradings.update(vertex_gradings(presentation))
    for grading in gradings.values():
        grading_report = check_grading(algebra, grading)
        if not grading_report['valid']:
            raise InconsistentStructureError(f"grading {grading.name}", "; ".join(grading_report['errors']))

    logger.info(f"Built R({n},{r}) over {field.name}: dim {algebra.dim}")
    return ZooAlgebra(
        algebra,
        frobenius,
        automorphisms={'sigma': sigma},
        gradings=gradings,
        presentation=presentation,
        description=f"R({n},{r}) over {field.name}",
    )
