"""
The Hochschild cochain calculus.

Coboundary, cup product, the slot substitutions and the Gerstenhaber
bracket, twists by automorphisms, degeneracies and normalization, and the
BV operator of a Frobenius algebra together with its pieces.

Every operation returns a lazy cochain; nothing is materialized here.
Sign conventions:

    (df)(a_1..a_{n+1}) = a_1 f(a_2..) + sum_{i=1}^{n} (-1)^i f(..a_i a_{i+1}..)
                         + (-1)^{n+1} f(a_1..a_n) a_{n+1}
    f o g              = sum_{i=1}^{n} (-1)^{(m-1)(i-1)} f o_i g
    [f, g]             = f o g - (-1)^{(n-1)(m-1)} g o f
    Delta              = sum_{i=1}^{n} (-1)^{i(n-1)} Delta_i
"""
import logging
from typing import Optional, Sequence, Tuple

from src.algebra.algebra import Vector
from src.algebra.automorphism import Automorphism
from src.algebra.grading import Grading
from src.frobenius.frobenius import FrobeniusData
from src.hochschild.cochain import BasisTuple, Cochain, linear_combination
from src.linalg.sparse import add_scaled
from src.utils.errors import (
    AveragingUndefinedError,
    IndexRangeError,
    InapplicableError,
    MissingFrobeniusError,
    NotACocycleError,
    NotInvariantError,
    ParentMismatchError,
)

logger = logging.getLogger(__name__)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _same_parent(f: Cochain, g: Cochain, operation: str) -> None:
    if f.parent is not g.parent:
        raise ParentMismatchError(operation)


def coboundary(f: Cochain) -> Cochain:
    """The Hochschild differential, degree n -> n+1."""
    algebra = f.parent
    n = f.degree

    def rule(t: BasisTuple) -> Vector:
        result: Vector = {}
        value = f.evaluate(t[1:])
        if value:
            add_scaled(result, algebra.left_basis(t[0], value), 1)
        for i in range(1, n + 1):
            sign = _sign(i)
            head, tail = t[:i - 1], t[i + 1:]
            for k, c in algebra.basis_product(t[i - 1], t[i]).items():
                value = f.evaluate(head + (k,) + tail)
                if value:
                    add_scaled(result, value, sign * c)
        value = f.evaluate(t[:n])
        if value:
            add_scaled(result, algebra.right_basis(value, t[n]), _sign(n + 1))
        return result

    return Cochain.from_rule(algebra, n + 1, rule, name=f"d{f.name}")


def cup(f: Cochain, g: Cochain) -> Cochain:
    """(f u g)(a_1..a_{n+m}) = f(a_1..a_n) g(a_{n+1}..a_{n+m})"""
    _same_parent(f, g, "cup")
    algebra = f.parent
    n = f.degree

    def rule(t: BasisTuple) -> Vector:
        left = f.evaluate(t[:n])
        if not left:
            return {}
        return algebra.mul_vectors(left, g.evaluate(t[n:]))

    return Cochain.from_rule(algebra, n + g.degree, rule, name=f"({f.name}u{g.name})")


def circ_i(f: Cochain, g: Cochain, i: int) -> Cochain:
    """Substitute g into slot i (1-based) of f; degree n+m-1. Covers m = 0."""
    _same_parent(f, g, "circ_i")
    n, m = f.degree, g.degree
    if n == 0:
        raise IndexRangeError("slot", i, 1, 0)
    if not 1 <= i <= n:
        raise IndexRangeError("slot", i, 1, n)
    start, stop = i - 1, i - 1 + m

    def rule(t: BasisTuple) -> Vector:
        inner = g.evaluate(t[start:stop])
        result: Vector = {}
        head, tail = t[:start], t[stop:]
        for k, c in inner.items():
            value = f.evaluate(head + (k,) + tail)
            if value:
                add_scaled(result, value, c)
        return result

    return Cochain.from_rule(f.parent, n + m - 1, rule, name=f"({f.name}o{i}{g.name})")


def circ(f: Cochain, g: Cochain) -> Cochain:
    """f o g; the zero cochain of degree m-1 when f has degree 0."""
    _same_parent(f, g, "circ")
    n, m = f.degree, g.degree
    if n + m == 0:
        raise InapplicableError("circ", "both cochains have degree 0")
    if n == 0:
        return Cochain.zero(f.parent, m - 1)
    terms = [(_sign((m - 1) * (i - 1)), circ_i(f, g, i)) for i in range(1, n + 1)]
    return linear_combination(terms, name=f"({f.name}o{g.name})")


def bracket(f: Cochain, g: Cochain) -> Cochain:
    """The Gerstenhaber bracket, degree n+m-1."""
    _same_parent(f, g, "bracket")
    n, m = f.degree, g.degree
    if n + m == 0:
        raise InapplicableError("bracket", "both cochains have degree 0")
    terms = [(1, circ(f, g)), (-_sign((n - 1) * (m - 1)), circ(g, f))]
    return linear_combination(terms, name=f"[{f.name},{g.name}]")


def twist(f: Cochain, sigma: Automorphism) -> Cochain:
    """f^sigma(a_1..a_n) = sigma^{-1} f(sigma a_1 .. sigma a_n)"""
    if sigma.algebra is not f.parent:
        raise ParentMismatchError(f"twist by {sigma.name}")

    def rule(t: BasisTuple) -> Vector:
        value = f.evaluate_on([sigma.image(k) for k in t])
        if not value:
            return {}
        return sigma.apply_inverse(value)

    return Cochain.from_rule(f.parent, f.degree, rule, name=f"{f.name}^{sigma.name}")


def degeneracy(g: Cochain, i: int) -> Cochain:
    """s^i(g)(a_1..a_n) = (-1)^i g(a_1..a_i, 1, a_{i+1}..a_n), g of degree n+1."""
    n = g.degree - 1
    if n < 0 or not 0 <= i <= n:
        raise IndexRangeError("degeneracy index", i, 0, n)
    unit = g.parent.unit_vector
    sign = _sign(i)

    def rule(t: BasisTuple) -> Vector:
        result: Vector = {}
        head, tail = t[:i], t[i:]
        for u, c in unit.items():
            value = g.evaluate(head + (u,) + tail)
            if value:
                add_scaled(result, value, sign * c)
        return result

    return Cochain.from_rule(g.parent, n, rule, name=f"s{i}({g.name})")


def normalize_with_witness(f: Cochain) -> Tuple[Cochain, Optional[Cochain]]:
    """
    Normalize a cocycle: f' = f - du vanishes whenever an argument is 1.

    The correction iterates f_N = f_{N-1} - d s^{N-1}(f_{N-1}) for N = 1..n.
    It commutes with every twist, so sigma-invariant input gives
    sigma-invariant output. The cocycle property is the caller's concern.

    Returns:
        (f', u) with u of degree n-1, or (f, None) in degree 0
    """
    n = f.degree
    if n == 0:
        return f, None
    current = f
    corrections = []
    for N in range(1, n + 1):
        s = degeneracy(current, N - 1)
        corrections.append((1, s))
        current = linear_combination([(1, current), (-1, coboundary(s))], name=current.name)
    witness = linear_combination(corrections, name=f"u({f.name})")
    current.name = f"norm({f.name})"
    return current, witness


def normalize(
    f: Cochain,
    sigma: Optional[Automorphism] = None,
    tuples: Optional[Sequence[BasisTuple]] = None,
    exhaustive_limit: Optional[int] = None,
) -> Cochain:
    """
    Normalized representative of a cocycle.

    With ``sigma`` the input is first checked to be a sigma-invariant
    cocycle: invariance on ``tuples`` and the cocycle property on every
    one-slot extension of them (all basis tuples when ``tuples`` is None).
    Sampled ``tuples`` give way to every tuple when dim^(n+1) is at most
    ``exhaustive_limit``.

    Raises:
        NotInvariantError: f^sigma != f at a checked tuple
        NotACocycleError: df != 0 at a checked tuple
    """
    if sigma is not None:
        size = f.parent.dim ** (f.degree + 1)
        exhaustive = tuples is None or (exhaustive_limit is not None and size <= exhaustive_limit)
        checked = list(f.all_tuples()) if exhaustive else list(tuples)
        witness = f.differs_at(twist(f, sigma), checked)
        if witness is not None:
            raise NotInvariantError(sigma.name, witness)
        df = coboundary(f)
        for t in checked:
            for b in range(f.parent.dim):
                if df.evaluate(t + (b,)):
                    raise NotACocycleError(f.degree, t + (b,))
    return normalize_with_witness(f)[0]


def is_normalized_at(f: Cochain, t: BasisTuple) -> bool:
    """True when f vanishes on t with the unit inserted at every position."""
    unit = f.parent.unit_vector
    for position in range(f.degree):
        vectors = [{k: 1} for k in t[:position]] + [unit] + [{k: 1} for k in t[position:]]
        if f.evaluate_on(vectors):
            return False
    return True


def _require_frobenius(frobenius: Optional[FrobeniusData], f: Cochain, operation: str) -> FrobeniusData:
    if frobenius is None:
        raise MissingFrobeniusError(operation)
    if frobenius.algebra is not f.parent:
        raise ParentMismatchError(operation)
    return frobenius


def delta_i(f: Cochain, frobenius: FrobeniusData, i: int) -> Cochain:
    """
    Delta_i f, degree n-1, determined by
    <Delta_i f(a_1..a_{n-1}), a_n> = <f(a_i..a_{n-1}, a_n, nu a_1..nu a_{i-1}), 1>.
    """
    frobenius = _require_frobenius(frobenius, f, "delta_i")
    n = f.degree
    if not 1 <= i <= n:
        raise IndexRangeError("delta index", i, 1, n)
    nu = frobenius.nakayama
    dim = f.parent.dim

    def rule(t: BasisTuple) -> Vector:
        tail = [nu.image(k) for k in t[:i - 1]]
        head = [{k: 1} for k in t[i - 1:]]
        result: Vector = {}
        for b in range(dim):
            value = f.evaluate_on(head + [{b: 1}] + tail)
            if not value:
                continue
            c = frobenius.epsilon(value)
            if c:
                add_scaled(result, frobenius.dual_basis[b], c)
        return result

    return Cochain.from_rule(f.parent, n - 1, rule, name=f"D{i}({f.name})")


def bv_delta(f: Cochain, frobenius: Optional[FrobeniusData]) -> Cochain:
    """The BV operator; on degree 0 it is the zero cochain of degree 0."""
    frobenius = _require_frobenius(frobenius, f, "bv_delta")
    n = f.degree
    if n == 0:
        return Cochain.zero(f.parent, 0)
    terms = [(_sign(i * (n - 1)), delta_i(f, frobenius, i)) for i in range(1, n + 1)]
    return linear_combination(terms, name=f"D({f.name})")


def delta_prime(f: Cochain, g: Cochain, frobenius: Optional[FrobeniusData]) -> Cochain:
    """
    Delta'(f (x) g) = sum_{i=1}^{m} (-1)^{i(n+m-1)} Delta_i(f u g).

    Delta(f u g) = Delta'(f (x) g) + (-1)^{nm} Delta'(g (x) f) when g^nu = g.
    """
    _same_parent(f, g, "delta_prime")
    frobenius = _require_frobenius(frobenius, f, "delta_prime")
    n, m = f.degree, g.degree
    if n + m == 0:
        return Cochain.zero(f.parent, 0)
    if m == 0:
        return Cochain.zero(f.parent, n - 1)
    product = cup(f, g)
    terms = [(_sign(i * (n + m - 1)), delta_i(product, frobenius, i)) for i in range(1, m + 1)]
    return linear_combination(terms, name=f"D'({f.name},{g.name})")


def nu_average(f: Cochain, frobenius: Optional[FrobeniusData], bound: Optional[int] = None) -> Cochain:
    """
    (1/ord nu) sum_i f^{nu^i}.

    Raises:
        AveragingUndefinedError: nu has no order within the bound, or the
            characteristic divides it
    """
    frobenius = _require_frobenius(frobenius, f, "nu_average")
    nu = frobenius.nakayama
    order = nu.order(bound)
    characteristic = f.parent.field.characteristic
    if order is None or (characteristic and order % characteristic == 0):
        raise AveragingUndefinedError(order, characteristic)
    if order == 1:
        return f
    field = f.parent.field
    weight = field.one() / field(order)
    terms = [(weight, f)]
    power = nu
    for _ in range(1, order):
        terms.append((weight, twist(f, power)))
        power = nu.compose(power)
    return linear_combination(terms, name=f"avg({f.name})")


def homogeneous_component(f: Cochain, grading: Grading, q: int) -> Cochain:
    """
    The part of f of internal degree q: values on t keep only the basis
    elements of degree deg(t) - q.
    """
    degrees = grading.degrees

    def rule(t: BasisTuple) -> Vector:
        target = grading.tuple_degree(t) - q
        return {k: c for k, c in f.evaluate(t).items() if degrees[k] == target}

    return Cochain.from_rule(f.parent, f.degree, rule, name=f"{f.name}[{q}]")
