"""
Generators of HH*(R(n, r)) as homomorphisms Q_s -> R, realized as bar
cochains through Psi.

A generator is a sum of dual maps w*: the map on the summand
P_[target(w)][source(w)] sending e (x) e to the basis path w and every other
summand to zero. Its bar cochain is

    (a_1, ..., a_s) -> sum over c (x) d in Psi_s(a_1..a_s) of c w d

Kinds and their side conditions (s = base + l(2n-3), char = char k):

    eps1   s = 1
    f      s = 2m + lP, m <= n-2:  r | m + l(n-1), 2 | m + ln, char 2 or l even
    g      s = 2m+1 + lP, m <= n-3: r | m + l(n-1), m + ln odd, char 2 or l odd
    h      s = (l+1)P - 1:         r | (l+1)(n-1) - 1, (l+1)n odd
    p      s = (l+1)P - 1:         r | (l+1)(n-1) - 1, n even, char 2 or l even
    chi    s = lP, l >= 1:          r | l(n-1) - 1, ln even, char 2 or l odd
    xi     s = lP, l >= 1:          r | l(n-1) - 1, ln odd
    eps0   s = 0, r = 1, one per vertex column j (1 <= j <= n)
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.algebra.grading import euler_derivation
from src.hochschild.calculus import bracket, nu_average, twist
from src.hochschild.cochain import BasisTuple, Cochain, linear_combination
from src.linalg.sparse import add_scaled
from src.resolution.psi import PsiMap
from src.resolution.shapes import shape_lookup
from src.utils.errors import (
    DegreeTooLargeError,
    GeneratorConditionError,
    InconsistentStructureError,
)
from src.zoo.bundle import ZooAlgebra
from src.zoo.dnr import DnrPresentation

logger = logging.getLogger(__name__)

KINDS = ('eps1', 'f', 'g', 'h', 'p', 'chi', 'xi', 'eps0')


@dataclass(frozen=True)
class GeneratorSpec:
    """
    A generator with its parameters and dual-map encoding.

    Attributes:
        kind: One of KINDS
        degree: Cohomological degree s
        m, l: Degree parameters (None where the kind has none)
        index: Vertex column for eps0
        F: The value F(x), or None for eps0
        duals: (coefficient, basis index of w) per dual map w*
    """

    kind: str
    degree: int
    m: Optional[int]
    l: Optional[int]
    index: Optional[int]
    F: Optional[int]
    duals: Tuple[Tuple[int, int], ...]

    @property
    def name(self) -> str:
        if self.kind == 'eps1':
            return "eps1"
        if self.kind == 'eps0':
            return f"eps0[{self.index}]"
        return f"{self.kind}_{self.degree}"


def _require(kind: str, degree: int, condition: str, holds: bool) -> None:
    if not holds:
        raise GeneratorConditionError(kind, degree, condition)


def _parameters(P: DnrPresentation, kind: str, s: int, characteristic: int, index: Optional[int]):
    """Side conditions; returns (m, l, F)."""
    n, r, period = P.n, P.r, P.period
    char2 = characteristic == 2
    _require(kind, s, "degree >= 0", s >= 0)

    if kind == 'eps1':
        _require(kind, s, "s = 1", s == 1)
        return None, None, 0
    if kind == 'f':
        base, l = s % period, s // period
        _require(kind, s, "s = 2m + l(2n-3)", base % 2 == 0)
        m = base // 2
        F = m + l * (n - 1)
        _require(kind, s, "r | m + l(n-1)", F % r == 0)
        _require(kind, s, "2 | m + ln", (m + l * n) % 2 == 0)
        _require(kind, s, "char k = 2 or l even", char2 or l % 2 == 0)
        return m, l, F
    if kind == 'g':
        base, l = s % period, s // period
        _require(kind, s, "s = 2m + 1 + l(2n-3)", base % 2 == 1)
        m = (base - 1) // 2
        F = m + l * (n - 1)
        _require(kind, s, "r | m + l(n-1)", F % r == 0)
        _require(kind, s, "m + ln odd", (m + l * n) % 2 == 1)
        _require(kind, s, "char k = 2 or l odd", char2 or l % 2 == 1)
        return m, l, F
    if kind in ('h', 'p'):
        _require(kind, s, "s = (l+1)(2n-3) - 1", (s + 1) % period == 0)
        L = (s + 1) // period
        F = L * (n - 1) - 1
        _require(kind, s, "r | (l+1)(n-1) - 1", F % r == 0)
        if kind == 'h':
            _require(kind, s, "(l+1)n odd", (L * n) % 2 == 1)
        else:
            _require(kind, s, "n even", n % 2 == 0)
            _require(kind, s, "char k = 2 or l even", char2 or (L - 1) % 2 == 0)
        return None, L - 1, F
    if kind in ('chi', 'xi'):
        _require(kind, s, "s = l(2n-3), l >= 1", s % period == 0 and s > 0)
        l = s // period
        F = l * (n - 1) - 1
        _require(kind, s, "r | l(n-1) - 1", F % r == 0)
        if kind == 'chi':
            _require(kind, s, "ln even", (l * n) % 2 == 0)
            _require(kind, s, "char k = 2 or l odd", char2 or l % 2 == 1)
        else:
            _require(kind, s, "ln odd", (l * n) % 2 == 1)
        return None, l, F
    if kind == 'eps0':
        _require(kind, s, "r = 1", r == 1)
        _require(kind, s, "s = 0", s == 0)
        _require(kind, s, "1 <= j <= n", index is not None and 1 <= index <= n)
        return None, None, None
    raise GeneratorConditionError(kind, s, f"kind must be one of {', '.join(KINDS)}")


def _duals(P: DnrPresentation, kind: str, m, l, index) -> List[Tuple[int, int]]:
    n, r = P.n, P.r
    rows = range(1, r + 1)

    def w(i, k, j):
        return P.index('e', i, j) if k == j - 1 else P.index('w', i, k, j)

    if kind == 'eps1':
        return [(1, P.index('ge', 1, q, n - 2)) for q in (n - 1, n)]
    if kind == 'f':
        duals = []
        for i in rows:
            duals += [(1, w(i, j + m - 1, j)) for j in range(1, n - 1 - m)]
            duals += [(1, P.index('e', i, n - 1)), (1, P.index('e', i, n))]
        return duals
    if kind == 'g':
        duals = []
        for i in rows:
            duals += [(1, P.index('mte', i, j + m - (n - 2), j)) for j in range(n - 1 - m, n - 1)]
            duals += [(1, P.index('ge', i, n - 1, n - 2 - m)), (1, P.index('mb', i, m + 1, n - 1))]
        return duals
    if kind in ('h', 'p'):
        duals = [(-1 if j % 2 else 1, P.index('e', i, j)) for i in rows for j in range(1, n - 1)]
        if kind == 'p':
            duals += [(1, P.index('e', i, n - 1)) for i in rows]
        return duals
    if kind == 'chi':
        return [(1, P.index('soc', 1, n))]
    if kind == 'xi':
        return [(1, P.index('mte', r, 1, 1))]
    if index <= n - 2:
        return [(1, P.index('mte', 1, index, index))]
    return [(1, P.index('soc', 1, index))]


def generator_spec(P: DnrPresentation, kind: str, degree: int, characteristic: int,
                   index: Optional[int] = None) -> GeneratorSpec:
    """
    Build a spec after checking its side conditions.

    Raises:
        GeneratorConditionError: naming the first condition that fails
        InconsistentStructureError: a dual map lies outside Q_degree
    """
    m, l, F = _parameters(P, kind, degree, characteristic, index)
    duals = _duals(P, kind, m, l, index)
    shape = shape_lookup(P, degree)
    for _, w in duals:
        path = P.basis[w]
        if (path.target, path.source) not in shape:
            raise InconsistentStructureError(
                f"generator {kind} in degree {degree}", f"{path.label}* is not on a summand of Q_{degree}"
            )
    return GeneratorSpec(kind, degree, m, l, index, F, tuple(duals))


def generator_catalogue(P: DnrPresentation, max_degree: int, characteristic: int) -> List[GeneratorSpec]:
    """Every generator whose side conditions hold in degrees 0..max_degree."""
    catalogue = []
    for s in range(max_degree + 1):
        for kind in KINDS:
            indices = range(1, P.n + 1) if kind == 'eps0' else (None,)
            for index in indices:
                try:
                    catalogue.append(generator_spec(P, kind, s, characteristic, index))
                except GeneratorConditionError:
                    continue
    return catalogue


def expected_length_degree(P: DnrPresentation, spec: GeneratorSpec) -> Optional[int]:
    """Internal length degree (n-1) F(x) of the generator."""
    return None if spec.F is None else (P.n - 1) * spec.F


def realize_generator(psi_map: PsiMap, spec: GeneratorSpec) -> Cochain:
    """
    The bar cochain of a generator (a lazy rule through Psi).

    For eps1 the result is compared with the Euler derivation of the
    gamma_1-grading on every basis element.

    Raises:
        InconsistentStructureError: the eps1 realization and its closed form differ
    """
    zoo = psi_map.zoo
    algebra = zoo.algebra
    basis = zoo.presentation.basis
    field = algebra.field

    by_summand: Dict[Tuple, List[Tuple[object, int]]] = {}
    for coefficient, w in spec.duals:
        by_summand.setdefault((basis[w].target, basis[w].source), []).append((field(coefficient), w))

    def rule(t: BasisTuple):
        value = {}
        for (c, d), coefficient in psi_map(t).terms.items():
            duals = by_summand.get((basis[c].source, basis[d].target))
            if not duals:
                continue
            for k, w in duals:
                wd = algebra.basis_product(w, d)
                if wd:
                    add_scaled(value, algebra.mul_vectors({c: coefficient * k}, wd), field.one())
        return value

    cochain = Cochain.from_rule(algebra, spec.degree, rule, name=spec.name)
    if spec.kind == 'eps1':
        closed = euler_derivation(algebra, zoo.gradings['gamma1'])
        for b in range(algebra.dim):
            if cochain.evaluate((b,)) != closed.evaluate((b,)):
                raise InconsistentStructureError(
                    "eps1 realization", f"differs from the gamma_1 Euler derivation at {algebra.labels[b]}"
                )
    logger.debug(f"Realized {spec.name} on {algebra.name}")
    return cochain


def nu_conjugate_average(zoo: ZooAlgebra, cochain: Cochain, divide: bool = True) -> Cochain:
    """
    sum_i cochain^{nu^i} over one nu-orbit, divided by ord(nu) when asked.

    Raises:
        AveragingUndefinedError: division requested and char k | ord(nu)
    """
    nu = zoo.nu
    order = nu.order()
    if order == 1:
        return cochain
    if divide:
        return nu_average(cochain, zoo.frobenius)
    return linear_combination([(1, twist(cochain, nu.power(i))) for i in range(order)], name=f"sum_nu({cochain.name})")


def check_generator_bracket(engine, spec: GeneratorSpec, realized: Cochain, eps1_tilde: Cochain) -> Dict:
    """
    Compare [x, eps1~] with (F(x)/r) x up to a coboundary.

    Returns:
        Report dict with 'status' PASS, FAIL or SKIPPED and the reason
    """
    report = {'valid': True, 'errors': [], 'warnings': [], 'generator': spec.name, 'status': 'PASS'}
    field = realized.parent.field
    r = engine.zoo.presentation.r
    if spec.F is None:
        report.update(status='SKIPPED', warnings=["F(x) is not defined for this generator"])
        return report
    if field.characteristic and r % field.characteristic == 0:
        report.update(status='SKIPPED', warnings=[f"F(x)/r undefined: char {field.characteristic} divides r"])
        return report
    ratio = field(spec.F) / field(r)
    difference = linear_combination([(1, bracket(realized, eps1_tilde)), (-ratio, realized)])
    try:
        witness = engine.is_coboundary(difference)
    except DegreeTooLargeError as exc:
        report.update(status='SKIPPED', warnings=[str(exc)])
        return report
    if witness is None:
        report.update(valid=False, status='FAIL',
                      errors=[f"[{spec.name}, eps1] - {spec.F}/{r} {spec.name} is not a coboundary"])
    return report
