"""
Small Frobenius fixtures: truncated polynomial rings and self-injective
Nakayama algebras on a cyclic quiver.
"""
from typing import Dict, List, Tuple

from src.algebra.algebra import FiniteDimAlgebra
from src.algebra.grading import Grading
from src.frobenius.frobenius import build_frobenius
from src.linalg.fields import QQ, Field
from src.utils.errors import IndexRangeError
from src.zoo.bundle import ZooAlgebra


def ground_field(field: Field = QQ) -> ZooAlgebra:
    """k itself, with eps = id."""
    algebra = FiniteDimAlgebra(field, ["1"], [1], {(0, 0): {0: 1}}, name="k")
    return ZooAlgebra(algebra, build_frobenius(algebra, [1]), description=f"k over {field.name}")


def truncated_poly(m: int, field: Field = QQ) -> ZooAlgebra:
    """
    k[x]/(x^m) with eps(x^{m-1}) = 1 and eps = 0 on lower powers.

    Symmetric, so nu = id. Carries the x-degree grading.
    """
    if m < 2:
        raise IndexRangeError("m", m, 2, 10 ** 9)
    labels = ["1", "x"] + [f"x^{k}" for k in range(2, m)]
    mul = {}
    for i in range(m):
        for j in range(m - i):
            mul[(i, j)] = {i + j: 1}
    algebra = FiniteDimAlgebra(field, labels, {0: 1}, mul, name=f"k[x]/(x^{m})")
    eps = {m - 1: 1}
    frobenius = build_frobenius(algebra, eps)
    gradings = {'x_degree': Grading('x_degree', tuple(range(m)))}
    return ZooAlgebra(algebra, frobenius, gradings=gradings, description=f"k[x]/(x^{m}) over {field.name}")


def _cycle_paths(v: int, loewy_length: int) -> List[Tuple[int, int]]:
    return [(k, length) for length in range(loewy_length) for k in range(v)]


def nakayama_cycle(v: int, field: Field = QQ, loewy_length: int = 2) -> ZooAlgebra:
    """
    Path algebra of the cyclic quiver 0 -> 1 -> ... -> v-1 -> 0 modulo all
    paths of length ``loewy_length``.

    Basis: paths p(k, l) from k to k+l (mod v) of length l < loewy_length;
    dim = v * loewy_length. eps is 1 on the longest paths, and nu rotates
    the vertices by -(loewy_length - 1). Carries the length grading and one
    Peirce grading per vertex.
    """
    if v < 2:
        raise IndexRangeError("v", v, 2, 10 ** 9)
    if loewy_length < 2:
        raise IndexRangeError("loewy_length", loewy_length, 2, 10 ** 9)
    paths = _cycle_paths(v, loewy_length)
    index = {path: i for i, path in enumerate(paths)}

    def label(k: int, length: int) -> str:
        if length == 0:
            return f"e{k}"
        if length == 1:
            return f"a{k}"
        return f"p{k}^{length}"

    mul: Dict[Tuple[int, int], Dict[int, int]] = {}
    # Products are written right to left: p * q means q first
    for (k, length), i in index.items():
        for (k2, length2), j in index.items():
            if (k2 + length2) % v == k and length + length2 < loewy_length:
                mul[(i, j)] = {index[(k2, length + length2)]: 1}

    unit = {index[(k, 0)]: 1 for k in range(v)}
    name = f"N({v},{loewy_length})"
    algebra = FiniteDimAlgebra(field, [label(k, length) for k, length in paths], unit, mul, name=name)
    eps = {index[(k, loewy_length - 1)]: 1 for k in range(v)}
    frobenius = build_frobenius(algebra, eps)

    gradings = {'length': Grading('length', tuple(length for _, length in paths))}
    for x in range(v):
        degrees = tuple(
            int((k + length) % v == x) - int(k == x) for k, length in paths
        )
        gradings[f'vertex_{x}'] = Grading(f'vertex_{x}', degrees)
    return ZooAlgebra(algebra, frobenius, gradings=gradings, description=f"{name} over {field.name}")


def matrix_algebra(size: int, field: Field = QQ) -> ZooAlgebra:
    """M_size(k) with the trace form (symmetric)."""
    if size < 1:
        raise IndexRangeError("size", size, 1, 10 ** 9)
    units = [(a, b) for a in range(size) for b in range(size)]
    index = {u: i for i, u in enumerate(units)}
    mul = {}
    for (a, b), i in index.items():
        for (c, d), j in index.items():
            if b == c:
                mul[(i, j)] = {index[(a, d)]: 1}
    unit = {index[(a, a)]: 1 for a in range(size)}
    labels = [f"E{a}{b}" for a, b in units]
    algebra = FiniteDimAlgebra(field, labels, unit, mul, name=f"M{size}")
    frobenius = build_frobenius(algebra, unit)
    return ZooAlgebra(algebra, frobenius, description=f"M_{size}(k) over {field.name}")
