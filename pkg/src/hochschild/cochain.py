"""
Hochschild cochains in the reduced picture Hom_k(A^{(x)n}, A).

A cochain of degree n is determined by its values on n-tuples of basis
indices. It is stored either as a sparse table ``{tuple: vector}`` or as a
lazy rule ``tuple -> vector`` whose results are memoized. Vectors returned
by ``evaluate`` are shared and must never be mutated by callers.
"""
import itertools
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.algebra.algebra import EMPTY, AlgebraElement, FiniteDimAlgebra, Vector
from src.linalg.sparse import add_scaled, scale_vector
from src.utils.errors import DimensionMismatchError, ParentMismatchError

BasisTuple = Tuple[int, ...]
Rule = Callable[[BasisTuple], Vector]


class Cochain:
    """
    A multilinear map A^{(x)n} -> A.

    Args:
        parent: The algebra A
        degree: n >= 0
        table: Sparse values on basis tuples (exclusive with ``rule``)
        rule: Lazy evaluator on basis tuples
        name: Display name
        memo_cap: Maximum memoized tuples for a rule (None = unbounded);
            beyond the cap values are recomputed
    """

    def __init__(
        self,
        parent: FiniteDimAlgebra,
        degree: int,
        table: Optional[Mapping[BasisTuple, Mapping[int, object]]] = None,
        rule: Optional[Rule] = None,
        name: Optional[str] = None,
        memo_cap: Optional[int] = None,
    ):
        if degree < 0:
            raise DimensionMismatchError("degree >= 0", degree, "cochain degree")
        if (table is None) == (rule is None):
            raise ValueError("exactly one of table or rule must be given")
        self.parent = parent
        self.degree = degree
        self.name = name or f"f{degree}"
        self._rule = rule
        self._memo: Dict[BasisTuple, Vector] = {}
        self._memo_cap = memo_cap
        self._table: Optional[Dict[BasisTuple, Vector]] = None
        if table is not None:
            field = parent.field
            clean_table: Dict[BasisTuple, Vector] = {}
            for key, value in table.items():
                key = tuple(key)
                if len(key) != degree or any(not 0 <= k < parent.dim for k in key):
                    raise DimensionMismatchError(f"{degree}-tuple of basis indices", key, "cochain table key")
                clean = {}
                for k, c in value.items():
                    if not 0 <= k < parent.dim:
                        raise DimensionMismatchError(f"index < {parent.dim}", k, "cochain value")
                    scalar = field(c)
                    if scalar:
                        clean[k] = scalar
                if clean:
                    clean_table[key] = clean
            self._table = clean_table

    # Constructors

    @classmethod
    def zero(cls, parent: FiniteDimAlgebra, degree: int) -> "Cochain":
        return cls(parent, degree, table={}, name="0")

    @classmethod
    def from_element(cls, element: AlgebraElement, name: Optional[str] = None) -> "Cochain":
        return cls(element.parent, 0, table={(): element.terms}, name=name or "z")

    @classmethod
    def identity(cls, parent: FiniteDimAlgebra) -> "Cochain":
        one = parent.field.one()
        return cls(parent, 1, table={(i,): {i: one} for i in range(parent.dim)}, name="id")

    @classmethod
    def from_rule(cls, parent: FiniteDimAlgebra, degree: int, rule: Rule, name: Optional[str] = None,
                  memo_cap: Optional[int] = None) -> "Cochain":
        return cls(parent, degree, rule=rule, name=name, memo_cap=memo_cap)

    @classmethod
    def _from_clean_table(cls, parent: FiniteDimAlgebra, degree: int, table: Dict[BasisTuple, Vector],
                          name: Optional[str] = None) -> "Cochain":
        cochain = cls(parent, degree, table={}, name=name)
        cochain._table = {k: v for k, v in table.items() if v}
        return cochain

    # Evaluation

    @property
    def is_table(self) -> bool:
        return self._table is not None

    def evaluate(self, t: BasisTuple) -> Vector:
        """Value on a basis tuple (shared, read-only)."""
        if self._table is not None:
            return self._table.get(t, EMPTY)
        cached = self._memo.get(t)
        if cached is not None:
            return cached
        value = self._rule(t)
        if self._memo_cap is None or len(self._memo) < self._memo_cap:
            self._memo[t] = value
        return value

    def evaluate_on(self, vectors: Sequence[Mapping[int, object]]) -> Vector:
        """Multilinear evaluation on a sequence of vectors."""
        if len(vectors) != self.degree:
            raise DimensionMismatchError(self.degree, len(vectors), "cochain arguments")
        result: Vector = {}
        supports = [list(v.items()) for v in vectors]
        for combo in itertools.product(*supports):
            coefficient = 1
            for _, c in combo:
                coefficient = coefficient * c
            if not coefficient:
                continue
            add_scaled(result, self.evaluate(tuple(k for k, _ in combo)), coefficient)
        return result

    def __call__(self, *elements: AlgebraElement) -> AlgebraElement:
        for element in elements:
            if not isinstance(element, AlgebraElement) or element.parent is not self.parent:
                raise ParentMismatchError(f"evaluating {self.name}")
        return AlgebraElement(self.parent, dict(self.evaluate_on([e.terms for e in elements])))

    @property
    def value(self) -> AlgebraElement:
        """The element a degree-0 cochain represents."""
        if self.degree != 0:
            raise DimensionMismatchError(0, self.degree, "cochain degree")
        return AlgebraElement(self.parent, dict(self.evaluate(())))

    def support(self) -> List[BasisTuple]:
        """Tuples with a nonzero value (tables, or memoized rule values)."""
        source = self._table if self._table is not None else self._memo
        return sorted(t for t, v in source.items() if v)

    def all_tuples(self) -> Iterable[BasisTuple]:
        return itertools.product(range(self.parent.dim), repeat=self.degree)

    def materialize(self, tuples: Optional[Iterable[BasisTuple]] = None) -> "Cochain":
        """Table cochain with the values on ``tuples`` (default: every tuple)."""
        if tuples is None:
            tuples = self.all_tuples()
        table = {}
        for t in tuples:
            value = self.evaluate(t)
            if value:
                table[t] = dict(value)
        return Cochain._from_clean_table(self.parent, self.degree, table, name=self.name)

    def differs_at(self, other: "Cochain", tuples: Iterable[BasisTuple]) -> Optional[BasisTuple]:
        """First tuple where the two cochains disagree, or None."""
        _check_compatible(self, other, "comparison")
        for t in tuples:
            if self.evaluate(t) != other.evaluate(t):
                return t
        return None

    # Linear structure

    def __add__(self, other: "Cochain") -> "Cochain":
        return linear_combination([(1, self), (1, other)], name=f"({self.name}+{other.name})")

    def __sub__(self, other: "Cochain") -> "Cochain":
        return linear_combination([(1, self), (-1, other)], name=f"({self.name}-{other.name})")

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def scale(self, scalar) -> "Cochain":
        coefficient = self.parent.field(scalar)
        if self._table is not None:
            table = {t: scale_vector(v, coefficient) for t, v in self._table.items()}
            return Cochain._from_clean_table(self.parent, self.degree, table, name=f"{scalar}*{self.name}")
        return linear_combination([(coefficient, self)], name=f"{scalar}*{self.name}")

    def __rmul__(self, scalar) -> "Cochain":
        return self.scale(scalar)

    def __repr__(self):
        kind = "table" if self._table is not None else "rule"
        return f"Cochain({self.name}, degree={self.degree}, {kind}, on {self.parent.name})"


def _check_compatible(f: Cochain, g: Cochain, operation: str) -> None:
    if f.parent is not g.parent:
        raise ParentMismatchError(operation)
    if f.degree != g.degree:
        raise DimensionMismatchError(f.degree, g.degree, f"cochain degree in {operation}")


def linear_combination(terms: Sequence[Tuple[object, Cochain]], name: Optional[str] = None) -> Cochain:
    """sum(c * f) over cochains of a common degree."""
    if not terms:
        raise ValueError("empty linear combination")
    first = terms[0][1]
    for _, f in terms[1:]:
        _check_compatible(first, f, "linear combination")
    field = first.parent.field
    scaled = [(field(c), f) for c, f in terms]
    scaled = [(c, f) for c, f in scaled if c]

    if all(f.is_table for _, f in scaled):
        table: Dict[BasisTuple, Vector] = {}
        for c, f in scaled:
            for t, v in f._table.items():
                target = table.setdefault(t, {})
                add_scaled(target, v, c)
        return Cochain._from_clean_table(first.parent, first.degree, table, name=name)

    def rule(t: BasisTuple) -> Vector:
        result: Vector = {}
        for c, f in scaled:
            value = f.evaluate(t)
            if value:
                add_scaled(result, value, c)
        return result

    return Cochain.from_rule(first.parent, first.degree, rule, name=name)
