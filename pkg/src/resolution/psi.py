"""
The comparison map Psi from the bar resolution to Q_*:

    Psi_0(1 (x) 1) = sum_x e_x (x) e_x
    Psi_t(1 (x) a_1 ... a_t (x) 1) = D_{t-1}(Psi_{t-1}(a_1 ... a_{t-1}) a_t)
"""
import logging
import threading
from typing import Dict, Mapping, Sequence, Tuple

from src.linalg.fields import Scalar
from src.resolution.homotopy import HomotopyTable, ResolutionElement

logger = logging.getLogger(__name__)

DEFAULT_CACHE_CAP = 400000


class PsiMap:
    """
    Memoized Psi on basis tuples.

    The memo never evicts; once it holds ``cache_cap`` entries further values
    are recomputed on demand. Reads and writes go through a lock so one map
    can serve parallel evaluations.
    """

    def __init__(self, table: HomotopyTable, cache_cap: int = DEFAULT_CACHE_CAP):
        self.table = table
        self.zoo = table.zoo
        self.cache_cap = cache_cap
        self._memo: Dict[Tuple[int, ...], ResolutionElement] = {}
        self._lock = threading.Lock()
        self.overflowed = False
        self._psi0 = table.d_minus_one(self.zoo.algebra.unit_vector)

    def __len__(self) -> int:
        return len(self._memo)

    def __call__(self, t: Tuple[int, ...]) -> ResolutionElement:
        """Psi on a basis tuple (shared read-only result)."""
        if not t:
            return self._psi0
        with self._lock:
            cached = self._memo.get(t)
        if cached is not None:
            return cached
        previous = self(t[:-1])
        value = self.table.apply(len(t) - 1, previous.right_multiply(self.zoo, t[-1]))
        with self._lock:
            if len(self._memo) < self.cache_cap:
                self._memo[t] = value
            elif not self.overflowed:
                self.overflowed = True
                logger.warning(f"Psi cache reached {self.cache_cap} entries; recomputing beyond it")
        return value

    def on_vectors(self, vectors: Sequence[Mapping[int, Scalar]]) -> ResolutionElement:
        """Multilinear extension of Psi to tuples of vectors."""
        result = ResolutionElement(len(vectors))
        partial = [((), self.zoo.algebra.field.one())]
        for vector in vectors:
            partial = [(prefix + (k,), c * v) for prefix, c in partial for k, v in vector.items() if v]
        for t, coefficient in partial:
            for (c, d), value in self(t).terms.items():
                result.add(c, d, coefficient * value)
        return result

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()
            self.overflowed = False


def psi(psi_map: PsiMap, t: int, basis_tuple: Tuple[int, ...]) -> ResolutionElement:
    """Psi_t on a tuple of t basis indices."""
    if len(basis_tuple) != t:
        raise ValueError(f"Psi_{t} needs {t} basis elements, got {len(basis_tuple)}")
    return psi_map(tuple(basis_tuple))
