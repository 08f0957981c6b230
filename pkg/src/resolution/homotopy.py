"""
The contracting homotopy D_t of the minimal resolution of R(n, r).

Elements of Q_t are sums of c (x) d in summands P_[x][y] = R e_x (x) e_y R:
the left factor c starts at x and the right factor d ends at y. D_t is left
R-linear, so it is determined by its values on the left generators
e_x (x) d, d a basis path ending at y.

Those values are transcribed below as a case table. Every case names the
summand family it applies to, the basis family of d it matches, an optional
side condition and an output template. The table is expanded once per
degree of the first period and checked on construction:

- every output term c' (x) d' ends at x on the left, starts where d starts
  on the right, and lies in a summand of Q_{t+1};
- in a strict family every d matches exactly one case; the remaining
  families send unmatched d to zero.

Degrees beyond the first period reuse the expansion after sigma^l on the
left factors.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.algebra.algebra import Vector
from src.linalg.fields import Scalar
from src.linalg.sparse import add_scaled
from src.resolution.shapes import SummandIndex, qt_shape, shape_lookup, split_degree
from src.utils.errors import DimensionMismatchError, HochschildError, ResolutionTableError
from src.zoo.bundle import ZooAlgebra
from src.zoo.dnr import DnrPresentation, Vertex

logger = logging.getLogger(__name__)

ANY = None
Term = Tuple[int, int, int]


class ResolutionElement:
    """
    A finite sum of c (x) d in Q_degree, keyed by (c, d) basis indices.
    The summand of each term is (source(c), target(d)).
    """

    __slots__ = ('degree', 'terms')

    def __init__(self, degree: int, terms: Optional[Mapping[Tuple[int, int], Scalar]] = None):
        self.degree = degree
        self.terms: Dict[Tuple[int, int], Scalar] = {}
        for key, value in (terms or {}).items():
            if value:
                self.terms[key] = value

    def add(self, c: int, d: int, value: Scalar) -> None:
        key = (c, d)
        total = self.terms.get(key)
        total = value if total is None else total + value
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    def is_zero(self) -> bool:
        return not self.terms

    def right_multiply(self, zoo: ZooAlgebra, a: int) -> "ResolutionElement":
        """(c (x) d) a = c (x) (d a)"""
        algebra = zoo.algebra
        result = ResolutionElement(self.degree)
        for (c, d), value in self.terms.items():
            for d2, coefficient in algebra.basis_product(d, a).items():
                result.add(c, d2, value * coefficient)
        return result

    def left_multiply(self, zoo: ZooAlgebra, vector: Mapping[int, Scalar]) -> "ResolutionElement":
        """a (c (x) d) = (a c) (x) d"""
        algebra = zoo.algebra
        result = ResolutionElement(self.degree)
        for (c, d), value in self.terms.items():
            for c2, coefficient in algebra.mul_vectors(vector, {c: value}).items():
                result.add(c2, d, coefficient)
        return result

    def summands(self, presentation: DnrPresentation) -> List[Tuple[Vertex, Vertex]]:
        basis = presentation.basis
        return sorted({(basis[c].source, basis[d].target) for c, d in self.terms})

    def __add__(self, other: "ResolutionElement") -> "ResolutionElement":
        if other.degree != self.degree:
            raise DimensionMismatchError(self.degree, other.degree, "resolution degree")
        result = ResolutionElement(self.degree, self.terms)
        for (c, d), value in other.terms.items():
            result.add(c, d, value)
        return result

    def __eq__(self, other):
        if not isinstance(other, ResolutionElement):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self):
        return f"ResolutionElement(degree={self.degree}, terms={len(self.terms)})"


def augmentation(zoo: ZooAlgebra, element: ResolutionElement) -> Vector:
    """mu(c (x) d) = c d"""
    algebra = zoo.algebra
    result: Vector = {}
    for (c, d), value in element.terms.items():
        add_scaled(result, algebra.basis_product(c, d), value)
    return result


class _Paths:
    """Named paths of R(n, r) as basis indices, in the notation of the table."""

    def __init__(self, zoo: ZooAlgebra):
        self.zoo = zoo
        self.P: DnrPresentation = zoo.presentation
        self.n = self.P.n

    def phi(self, j: int, power: int = 1) -> int:
        return self.P.phi(j, power)

    def e(self, i: int, j: int) -> int:
        return self.P.index('e', i, j)

    def w(self, i: int, k: int, j: int) -> int:
        """omega_{i,k,j}: (i, j) -> (i, k+1); k = j-1 is the idempotent."""
        if k == j - 1:
            return self.e(i, j)
        return self.P.index('w', i, k, j)

    def mu(self, i: int, k: int) -> int:
        return self.w(i, k, 1)

    def eta(self, i: int, j: int) -> int:
        return self.w(i, self.n - 3, j)

    def tau(self, i: int) -> int:
        return self.P.index('mte', i, 1, self.n - 2)

    def gamma(self, i: int, p: int) -> int:
        return self.P.index('ge', i, p, self.n - 2)

    def beta(self, i: int, p: int) -> int:
        return self.P.index('mb', i, 1, p)

    def mb(self, i: int, j: int, p: int) -> int:
        return self.P.index('mb', i, j, p)

    def mte(self, i: int, t: int, j: int) -> int:
        return self.P.index('mte', i, t, j)

    def ge(self, i: int, p: int, j: int) -> int:
        return self.P.index('ge', i, p, j)

    def prod(self, *factors: int) -> int:
        """Product of basis paths, written right to left; must be a basis path."""
        algebra = self.zoo.algebra
        current = {factors[-1]: algebra.field.one()}
        for factor in reversed(factors[:-1]):
            current = algebra.mul_vectors({factor: algebra.field.one()}, current)
        if len(current) != 1 or next(iter(current.values())) != algebra.field.one():
            labels = [algebra.labels[f] for f in factors]
            raise ResolutionTableError(-1, "prod", f"{labels} is not a single basis path")
        return next(iter(current))

    def match(self, b: int, kind: str, pattern: Sequence[Optional[int]]) -> Optional[Tuple[int, ...]]:
        """
        Wildcard values when basis path b belongs to ``kind`` with the given
        key pattern (None = wildcard, first entry compared mod r).
        'omega' matches w[i,k,j] and the idempotents e[i,j], j <= n-2, as
        omega_{i,j-1,j}.
        """
        path = self.P.basis[b]
        if kind == 'omega':
            if path.kind == 'w':
                key = path.key
            elif path.kind == 'e' and path.key[1] <= self.n - 2:
                key = (path.key[0], path.key[1] - 1, path.key[1])
            else:
                return None
        elif path.kind == kind:
            key = path.key
        else:
            return None
        if len(key) != len(pattern):
            return None
        bound = []
        for position, (actual, wanted) in enumerate(zip(key, pattern)):
            if wanted is None:
                bound.append(actual)
            elif position == 0 and self.P.row(actual) != self.P.row(wanted):
                return None
            elif position > 0 and actual != wanted:
                return None
        return tuple(bound)


@dataclass(frozen=True)
class Case:
    """
    One line of the homotopy table.

    ``pattern(p, m, i, k)`` gives the key pattern of d inside ``kind``;
    ``when(p, m, i, k, bound)`` restricts the wildcard values;
    ``template(p, m, i, k, bound)`` lists (coefficient, c', d').
    Here (i, k) are the summand parameters, k being j or p.
    """

    name: str
    parity: str
    family: str
    kind: str
    pattern: Callable[..., Tuple[Optional[int], ...]]
    when: Optional[Callable[..., bool]]
    template: Callable[..., List[Term]]


# Degree 2m, m <= n-3.  A: x = (i+m, j+m); B: x = (i+m, j+m-(n-2)); C: x = (i+m, phi^m p)

def _even_a_leading(p: _Paths, m: int, i: int, j: int, right: Callable[[int], int], last: int) -> List[Term]:
    terms = [(1, p.w(i + m, j + m - 1, s + m + 1), right(s)) for s in range(1, j)]
    terms.append((1, p.w(i + m, j + m - 1, m + 1), last))
    return terms


def _even_a1(p, m, i, j, bound):
    (q,) = bound
    return [(1, p.w(i + m, j + m - 1, s + m + 1), p.w(i, s - 1, q)) for s in range(q, j)]


def _even_a2(p, m, i, j, bound):
    (k,) = bound
    return _even_a_leading(p, m, i, j, lambda s: p.prod(p.mu(i, s - 1), p.beta(i - 1, k)), p.e(i - 1, k))


def _even_a3(p, m, i, j, bound):
    (q,) = bound
    n = p.n
    terms = _even_a_leading(p, m, i, j, lambda s: p.mte(i - 1, s, q), p.ge(i - 1, n - 1, q))
    terms.append((-1, p.w(i + m, j + m - 1, q + m - (n - 2)), p.e(i - 1, q)))
    return terms


def _even_a4(p, m, i, j, bound):
    (q,) = bound
    n = p.n
    terms = _even_a_leading(p, m, i, j, lambda s: p.mte(i - 1, s, q), p.ge(i - 1, n - 1, q))
    terms.append((1, p.prod(p.mu(i + m, j + m - 1), p.beta(i + m - 1, p.phi(n - 1, m))), p.w(i - 1, n - 3 - m, q)))
    for s in range(q, n - 2 - m):
        left = p.prod(p.mu(i + m, j + m - 1), p.tau(i + m - 1), p.eta(i + m - 1, s + m + 1))
        terms.append((1, left, p.w(i - 1, s - 1, q)))
    return terms


def _even_b(p, m, i, j, bound):
    return [(-1, p.e(i + m, j + m - (p.n - 2)), p.e(i - 1, j))]


def _even_c1(p, m, i, k, bound):
    (q,) = bound
    n = p.n
    x = p.e(i + m, p.phi(k, m))
    terms = [(1, x, p.w(i, n - 3 - m, q))]
    for s in range(q, n - 2 - m):
        terms.append((1, p.prod(p.gamma(i + m, p.phi(k, m)), p.eta(i + m, s + m + 1)), p.w(i, s - 1, q)))
    return terms


def _even_c2(p, m, i, k, bound):
    n = p.n
    gamma = p.gamma(i + m, p.phi(k, m))
    terms = [(1, p.e(i + m, p.phi(k, m)), p.prod(p.mu(i, n - 3 - m), p.beta(i - 1, k)))]
    for s in range(1, n - 2 - m):
        terms.append((1, p.prod(gamma, p.eta(i + m, s + m + 1)), p.prod(p.mu(i, s - 1), p.beta(i - 1, k))))
    terms.append((1, p.prod(gamma, p.eta(i + m, m + 1)), p.e(i - 1, k)))
    return terms


# Degree 2m+1, m <= n-3.  A: x = (i+m, j+m+1); E: x = (i+m, phi^m p), y = (i, n-2-m);
# B: x = (i+m+1, j+m-(n-2)); C, C2: x = (i+m+1, m+1), y = (i, n-1) and (i, n)

def _odd_a(p, m, i, j, bound):
    return [(1, p.e(i + m, j + m + 1), p.e(i - 1, j))]


def _odd_e1(p, m, i, k, bound):
    return [(1, p.e(i + m, p.phi(k, m)), p.e(i - 1, p.phi(k)))]


def _odd_e2(p, m, i, k, bound):
    (q,) = bound
    return [(1, p.e(i + m, p.phi(k, m)), p.ge(i - 1, p.n - 1, q))]


def _odd_e3(p, m, i, k, bound):
    (q,) = bound
    n = p.n
    terms = [(1, p.e(i + m, p.phi(k, m)), p.ge(i - 1, n, q))]
    gamma = p.gamma(i + m, p.phi(n - 1, m))
    for s in range(q, n - 1):
        terms.append((1, p.prod(gamma, p.eta(i + m, s + m - (n - 3))), p.w(i - 1, s - 1, q)))
    return terms


def _odd_b_leading(p, m, i, j, right: Callable[[int], int]) -> List[Term]:
    n = p.n
    return [
        (1, p.w(i + m + 1, j + m - (n - 1), s + m - (n - 3)), right(s))
        for s in range(n - 2 - m, j)
    ]


def _odd_b1(p, m, i, j, bound):
    (q,) = bound
    n = p.n
    return [(1, p.w(i + m + 1, j + m - (n - 1), s + m - (n - 3)), p.w(i, s - 1, q)) for s in range(q, j)]


def _odd_b2(p, m, i, j, bound):
    (q,) = bound
    return _odd_b_leading(p, m, i, j, lambda s: p.w(i, s - 1, q))


def _odd_b_mu_beta(p, m, i, j, k):
    return p.prod(p.mu(i + m + 1, j + m - (p.n - 1)), p.beta(i + m, p.phi(k, m + 1)))


def _odd_b3(p, m, i, j, bound):
    n = p.n
    terms = _odd_b_leading(p, m, i, j, lambda s: p.mb(i - 1, s, n - 1))
    terms.append((1, _odd_b_mu_beta(p, m, i, j, n - 1), p.e(i - 1, n - 1)))
    return terms


def _odd_b4(p, m, i, j, bound):
    n = p.n
    terms = _odd_b_leading(p, m, i, j, lambda s: p.mb(i - 1, s, n))
    terms.append((-1, _odd_b_mu_beta(p, m, i, j, n), p.e(i - 1, n)))
    return terms


def _odd_b5(p, m, i, j, bound):
    (q,) = bound
    n = p.n
    terms = _odd_b_leading(p, m, i, j, lambda s: p.mte(i - 1, s, q))
    terms.append((-1, _odd_b_mu_beta(p, m, i, j, n), p.ge(i - 1, n, q)))
    terms.append((1, _odd_b_mu_beta(p, m, i, j, n - 1), p.ge(i - 1, n - 1, q)))
    for s in range(q, n - 1):
        left = p.prod(p.mu(i + m + 1, j + m - (n - 1)), p.tau(i + m), p.eta(i + m, s + m - (n - 3)))
        terms.append((-1, left, p.w(i - 1, s - 1, q)))
    return terms


def _odd_c_omega(p, m, i, s):
    return p.w(i + m + 1, m, s + m - (p.n - 3))


def _odd_c(p, m, i, k, bound):
    n = p.n
    terms = [(1, _odd_c_omega(p, m, i, s), p.mb(i - 1, s, n - 1)) for s in range(n - 2 - m, n - 1)]
    terms.append((1, p.prod(p.mu(i + m + 1, m), p.beta(i + m, p.phi(n - 1, m + 1))), p.e(i - 1, n - 1)))
    return terms


def _odd_c2_high(p, m, i, k, bound):
    (q,) = bound
    return [(-1, _odd_c_omega(p, m, i, s), p.w(i, s - 1, q)) for s in range(q, p.n - 1)]


def _odd_c2_low(p, m, i, k, bound):
    (q,) = bound
    return [(-1, _odd_c_omega(p, m, i, s), p.w(i, s - 1, q)) for s in range(p.n - 2 - m, p.n - 1)]


def _odd_c2_soc(p, m, i, k, bound):
    n = p.n
    terms = [(-1, _odd_c_omega(p, m, i, s), p.mb(i - 1, s, n)) for s in range(n - 2 - m, n - 1)]
    terms.append((1, p.prod(p.mu(i + m + 1, m), p.beta(i + m, p.phi(n, m + 1))), p.e(i - 1, n)))
    return terms


# Degree 2n-4.  B: x = (i+n-2, j); C: x = (i+n-2, phi^{n-2} p)

def _last_b(p, m, i, j, bound):
    return [(-1, p.e(i + m, j), p.e(i - 1, j))]


def _last_c(p, m, i, k, bound):
    sign = -1 if k == p.n - 1 else 1
    return [(sign, p.e(i + m, p.phi(k, m)), p.e(i - 1, k))]


def _nothing(p, m, i, k, bound):
    return []


CASES: Tuple[Case, ...] = (
    Case('even.A1', 'even', 'A', 'omega', lambda p, m, i, j: (i, j - 1, ANY), None, _even_a1),
    Case('even.A2', 'even', 'A', 'mb', lambda p, m, i, j: (i - 1, j, ANY), None, _even_a2),
    Case('even.A3', 'even', 'A', 'mte', lambda p, m, i, j: (i - 1, j, ANY),
         lambda p, m, i, j, b: b[0] >= p.n - 1 - m, _even_a3),
    Case('even.A4', 'even', 'A', 'mte', lambda p, m, i, j: (i - 1, j, ANY),
         lambda p, m, i, j, b: j <= b[0] <= p.n - 2 - m, _even_a4),
    Case('even.B', 'even', 'B', 'mte', lambda p, m, i, j: (i - 1, j, j), None, _even_b),
    Case('even.C0', 'even', 'C', 'e', lambda p, m, i, k: (i, k), None, _nothing),
    Case('even.C0q', 'even', 'C', 'ge', lambda p, m, i, k: (i, k, ANY),
         lambda p, m, i, k, b: b[0] >= p.n - 1 - m, _nothing),
    Case('even.C1', 'even', 'C', 'ge', lambda p, m, i, k: (i, k, ANY),
         lambda p, m, i, k, b: b[0] <= p.n - 2 - m, _even_c1),
    Case('even.C2', 'even', 'C', 'soc', lambda p, m, i, k: (i, k), None, _even_c2),

    Case('odd.A', 'odd', 'A', 'mte', lambda p, m, i, j: (i - 1, j, j), None, _odd_a),
    Case('odd.E0', 'odd', 'E', 'omega', lambda p, m, i, k: (i, p.n - 3 - m, ANY), None, _nothing),
    Case('odd.E0b', 'odd', 'E', 'mb', lambda p, m, i, k: (i - 1, p.n - 2 - m, k), None, _nothing),
    Case('odd.E1', 'odd', 'E', 'mb', lambda p, m, i, k: (i - 1, p.n - 2 - m, p.phi(k)), None, _odd_e1),
    Case('odd.E2', 'odd', 'E', 'mte', lambda p, m, i, k: (i - 1, p.n - 2 - m, ANY),
         lambda p, m, i, k, b: k == p.n, _odd_e2),
    Case('odd.E3', 'odd', 'E', 'mte', lambda p, m, i, k: (i - 1, p.n - 2 - m, ANY),
         lambda p, m, i, k, b: k == p.n - 1, _odd_e3),
    Case('odd.B1', 'odd', 'B', 'omega', lambda p, m, i, j: (i, j - 1, ANY),
         lambda p, m, i, j, b: b[0] >= p.n - 1 - m, _odd_b1),
    Case('odd.B2', 'odd', 'B', 'omega', lambda p, m, i, j: (i, j - 1, ANY),
         lambda p, m, i, j, b: b[0] <= p.n - 2 - m, _odd_b2),
    Case('odd.B3', 'odd', 'B', 'mb', lambda p, m, i, j: (i - 1, j, p.n - 1), None, _odd_b3),
    Case('odd.B4', 'odd', 'B', 'mb', lambda p, m, i, j: (i - 1, j, p.n), None, _odd_b4),
    Case('odd.B5', 'odd', 'B', 'mte', lambda p, m, i, j: (i - 1, j, ANY), None, _odd_b5),
    Case('odd.C', 'odd', 'C', 'soc', lambda p, m, i, k: (i, p.n - 1), None, _odd_c),
    Case('odd.C2e', 'odd', 'C2', 'e', lambda p, m, i, k: (i, p.n), None, _nothing),
    Case('odd.C2high', 'odd', 'C2', 'ge', lambda p, m, i, k: (i, p.n, ANY),
         lambda p, m, i, k, b: b[0] >= p.n - 1 - m, _odd_c2_high),
    Case('odd.C2low', 'odd', 'C2', 'ge', lambda p, m, i, k: (i, p.n, ANY),
         lambda p, m, i, k, b: b[0] <= p.n - 2 - m, _odd_c2_low),
    Case('odd.C2soc', 'odd', 'C2', 'soc', lambda p, m, i, k: (i, p.n), None, _odd_c2_soc),

    Case('last.B', 'last', 'B', 'mte', lambda p, m, i, j: (i - 1, j, j), None, _last_b),
    Case('last.C', 'last', 'C', 'soc', lambda p, m, i, k: (i, k), None, _last_c),
)

# Families whose unlisted generators go to zero
ZERO_DEFAULT = frozenset({('even', 'B'), ('odd', 'A'), ('odd', 'C'), ('last', 'B'), ('last', 'C')})


def _parity(presentation: DnrPresentation, base: int) -> Tuple[str, int]:
    if base == presentation.period - 1:
        return 'last', presentation.n - 2
    if base % 2 == 0:
        return 'even', base // 2
    return 'odd', (base - 1) // 2


class HomotopyTable:
    """
    The expanded and validated homotopy table of one R(n, r).

    Args:
        zoo: A bundle built by build_dnr (needs the presentation and sigma)
        cases: Case list, replaceable for tests
    """

    def __init__(self, zoo: ZooAlgebra, cases: Sequence[Case] = CASES):
        if zoo.presentation is None or zoo.sigma is None:
            raise ResolutionTableError(-1, "setup", "the homotopy table needs a built R(n,r)")
        self.zoo = zoo
        self.presentation: DnrPresentation = zoo.presentation
        self.algebra = zoo.algebra
        self.cases = tuple(cases)
        self._paths = _Paths(zoo)
        self._sigma_images: Dict[int, List[Vector]] = {}
        self.case_counts: Counter = Counter()
        self._tables: List[Dict[Tuple[Vertex, Vertex, int], Tuple[Tuple[Scalar, int, int], ...]]] = [
            self._expand(base) for base in range(self.presentation.period)
        ]
        logger.debug(
            f"Homotopy table for R({self.presentation.n},{self.presentation.r}): "
            f"{sum(len(t) for t in self._tables)} nonzero generator values"
        )

    def _ending_at(self) -> Dict[Vertex, List[int]]:
        ending: Dict[Vertex, List[int]] = {}
        for idx, path in enumerate(self.presentation.basis):
            ending.setdefault(path.target, []).append(idx)
        return ending

    def _expand(self, base: int) -> Dict[Tuple[Vertex, Vertex, int], Tuple[Tuple[Scalar, int, int], ...]]:
        P = self.presentation
        parity, m = _parity(P, base)
        field = self.algebra.field
        next_shape = shape_lookup(P, base + 1)
        ending = self._ending_at()
        family_cases: Dict[str, List[Case]] = {}
        for case in self.cases:
            if case.parity == parity:
                family_cases.setdefault(case.family, []).append(case)

        table = {}
        for summand in qt_shape(P, base):
            i, k = summand.params
            strict = (parity, summand.family) not in ZERO_DEFAULT
            for b in ending.get(summand.right, []):
                matched = []
                for case in family_cases.get(summand.family, []):
                    bound = self._paths.match(b, case.kind, case.pattern(self._paths, m, i, k))
                    if bound is None:
                        continue
                    if case.when is not None and not case.when(self._paths, m, i, k, bound):
                        continue
                    matched.append((case, bound))
                label = P.basis[b].label
                if len(matched) > 1:
                    names = [case.name for case, _ in matched]
                    raise ResolutionTableError(base, "/".join(names), f"generator {label} matches several cases")
                if not matched:
                    if strict:
                        raise ResolutionTableError(base, summand.family, f"no case covers {label}")
                    self.case_counts[f"{parity}.{summand.family}.zero"] += 1
                    continue
                case, bound = matched[0]
                self.case_counts[case.name] += 1
                try:
                    terms = case.template(self._paths, m, i, k, bound)
                except ResolutionTableError as exc:
                    raise ResolutionTableError(base, case.name, exc.detail)
                except HochschildError as exc:
                    raise ResolutionTableError(base, case.name, str(exc))
                clean = self._check_terms(base, case.name, summand, b, terms, next_shape)
                if clean:
                    table[(summand.left, summand.right, b)] = tuple((field(c), left, right) for c, left, right in clean)
        return table

    def _check_terms(self, base: int, case: str, summand: SummandIndex, b: int, terms: Iterable[Term],
                     next_shape: Mapping[Tuple[Vertex, Vertex], SummandIndex]) -> List[Term]:
        basis = self.presentation.basis
        merged: Dict[Tuple[int, int], int] = {}
        for coefficient, left, right in terms:
            where = f"{basis[left].label} (x) {basis[right].label} from {basis[b].label}"
            if basis[left].target != summand.left:
                raise ResolutionTableError(base, case, f"{where}: left factor does not end at {summand.left}")
            if basis[right].source != basis[b].source:
                raise ResolutionTableError(base, case, f"{where}: right factor does not start at {basis[b].source}")
            if (basis[left].source, basis[right].target) not in next_shape:
                raise ResolutionTableError(base, case, f"{where}: not a summand of Q_{base + 1}")
            merged[(left, right)] = merged.get((left, right), 0) + coefficient
        return [(c, left, right) for (left, right), c in merged.items() if c]

    def coverage_report(self) -> Dict:
        """Case usage per degree of the first period, in the project's report shape."""
        unused = [case.name for case in self.cases if not self.case_counts.get(case.name)]
        report = {
            'valid': True,
            'errors': [],
            'warnings': [f"case {name} never fired" for name in unused],
            'violations': [],
            'cases': dict(sorted(self.case_counts.items())),
        }
        return report

    def sigma_images(self, power: int) -> List[Vector]:
        """Images of the basis under sigma^power (sigma has order dividing 2r)."""
        key = power % (2 * self.presentation.r)
        if key not in self._sigma_images:
            automorphism = self.zoo.sigma.power(key)
            self._sigma_images[key] = [automorphism.image(j) for j in range(self.algebra.dim)]
        return self._sigma_images[key]

    def generator_value(self, t: int, x: Vertex, b: int) -> List[Tuple[Scalar, Vector, int]]:
        """D_t(e_x (x) b) as (coefficient, left vector, right index), b ending at y."""
        base, l = split_degree(self.presentation, t)
        y = self.presentation.basis[b].target
        x_base = self.presentation.sigma_vertex(x, -l)
        entries = self._tables[base].get((x_base, y, b), ())
        if not entries:
            return []
        twist = self.sigma_images(l)
        return [(c, twist[left], right) for c, left, right in entries]

    def apply(self, t: int, element: ResolutionElement) -> ResolutionElement:
        """D_t on an element of Q_t, extended left-linearly."""
        if element.degree != t:
            raise DimensionMismatchError(t, element.degree, "resolution degree")
        algebra = self.algebra
        basis = self.presentation.basis
        result = ResolutionElement(t + 1)
        for (c, d), value in element.terms.items():
            for coefficient, left, right in self.generator_value(t, basis[c].source, d):
                for c2, v in algebra.mul_vectors({c: value * coefficient}, left).items():
                    result.add(c2, right, v)
        return result

    def d_minus_one(self, vector: Mapping[int, Scalar]) -> ResolutionElement:
        """D_{-1}(a) = a (x) e_{source(a)} on basis paths, extended linearly."""
        basis = self.presentation.basis
        result = ResolutionElement(0)
        for k, value in vector.items():
            result.add(k, self.presentation.index('e', *basis[k].source), value)
        return result

    def left_generators(self, t: int) -> List[ResolutionElement]:
        """Every e_x (x) b spanning Q_t as a left module."""
        ending = self._ending_at()
        generators = []
        for summand in qt_shape(self.presentation, t):
            x = self.presentation.index('e', *summand.left)
            for b in ending.get(summand.right, []):
                generators.append(ResolutionElement(t, {(x, b): self.algebra.field.one()}))
        return generators


def homotopy_D(table: HomotopyTable, t: int, element: ResolutionElement) -> ResolutionElement:
    return table.apply(t, element)


def homotopy_Dminus1(table: HomotopyTable, a: Mapping[int, Scalar]) -> ResolutionElement:
    return table.d_minus_one(a)
