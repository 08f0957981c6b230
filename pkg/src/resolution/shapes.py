"""
Summand shapes of the minimal bimodule resolution Q_* of R(n, r).

Q_t is a direct sum of P_[x][y] = R e_x (x) e_y R. The shapes repeat with
period 2n-3 up to sigma on the left vertex:
Q_{t + l(2n-3)} has a summand [sigma^l x][y] for every summand [x][y] of Q_t.
"""
from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.zoo.dnr import DnrPresentation, Vertex


@dataclass(frozen=True)
class SummandIndex:
    """
    One summand P_[left][right] of Q_degree.

    ``family`` and ``params`` name the line of the displayed direct sum the
    summand comes from (with the row index before any sigma twist); the
    homotopy table is keyed on them.
    """

    degree: int
    position: int
    left: Vertex
    right: Vertex
    family: str
    params: Tuple[int, ...]


def split_degree(presentation: DnrPresentation, t: int) -> Tuple[int, int]:
    """t = base + l * period with 0 <= base < period; returns (base, l)."""
    return t % presentation.period, t // presentation.period


def _base_shape(presentation: DnrPresentation, base: int) -> List[Tuple[str, Tuple[int, ...], Vertex, Vertex]]:
    P, n = presentation, presentation.n
    entries = []
    if base % 2 == 0:
        m = base // 2
        for i in range(1, P.r + 1):
            for j in range(1, n - 1 - m):
                entries.append(('A', (i, j), P.vertex(i + m, j + m), (i, j)))
            for j in range(n - 1 - m, n - 1):
                entries.append(('B', (i, j), P.vertex(i + m, j + m - (n - 2)), (i, j)))
            for p in (n - 1, n):
                entries.append(('C', (i, p), P.vertex(i + m, P.phi(p, m)), (i, p)))
    else:
        m = (base - 1) // 2
        for i in range(1, P.r + 1):
            for j in range(1, n - 2 - m):
                entries.append(('A', (i, j), P.vertex(i + m, j + m + 1), (i, j)))
            for column in (n - 1, n):
                p = P.phi(column, m)
                entries.append(('E', (i, p), P.vertex(i + m, column), (i, n - 2 - m)))
            for j in range(n - 1 - m, n - 1):
                entries.append(('B', (i, j), P.vertex(i + m + 1, j + m - (n - 2)), (i, j)))
            entries.append(('C', (i, n - 1), P.vertex(i + m + 1, m + 1), (i, n - 1)))
            entries.append(('C2', (i, n), P.vertex(i + m + 1, m + 1), (i, n)))
    return entries


def qt_shape(presentation: DnrPresentation, t: int) -> List[SummandIndex]:
    """Ordered summands of Q_t, in the order of the displayed direct sums."""
    if t < 0:
        raise ValueError(f"resolution degree must be >= 0, got {t}")
    base, l = split_degree(presentation, t)
    return [
        SummandIndex(t, position, presentation.sigma_vertex(x, l), y, family, params)
        for position, (family, params, x, y) in enumerate(_base_shape(presentation, base))
    ]


def shape_lookup(presentation: DnrPresentation, t: int) -> Dict[Tuple[Vertex, Vertex], SummandIndex]:
    """(left, right) -> summand; the pairs are distinct within each Q_t."""
    lookup = {}
    for summand in qt_shape(presentation, t):
        key = (summand.left, summand.right)
        if key in lookup:
            raise ValueError(f"Q_{t} repeats the summand {key}")
        lookup[key] = summand
    return lookup
