"""
JSON algebra files: the interchange format for every zoo algebra.

    {
      "name": "R(4,1)",                        optional
      "field": "Q" | {"Fp": p},
      "dim": d,
      "basis": [labels],
      "unit": [scalars],
      "mul": [[i, j, k, scalar], ...],         unlisted products are 0
      "frobenius_eps": [scalars],              optional
      "automorphisms": {name: [[row-major]]},  optional, "nu" is cross-checked
      "gradings": {name: [ints]}               optional
    }

Rational scalars are ints or reduced "a/b" strings; F_p scalars are ints in
0..p-1. Unknown keys are rejected.
"""
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from src.algebra.algebra import FiniteDimAlgebra, validate
from src.algebra.automorphism import Automorphism
from src.algebra.grading import Grading, check_grading
from src.frobenius.frobenius import build_frobenius
from src.linalg.fields import Field, PrimeField, parse_field
from src.linalg.sparse import SparseMatrix
from src.utils.errors import AlgebraFileError, HochschildError
from src.utils.logging_utils import log_function
from src.zoo.bundle import ZooAlgebra

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ('field', 'dim', 'basis', 'unit', 'mul')
OPTIONAL_KEYS = ('name', 'frobenius_eps', 'automorphisms', 'gradings')


def validate_algebra_structure(document: Any) -> Tuple[bool, List[str]]:
    """
    Check the document shape before any scalar is parsed.

    Returns:
        Tuple of (is_valid, list_of_errors)
    """
    errors = []
    if not isinstance(document, dict):
        return False, ["root must be a JSON object"]

    unknown = sorted(set(document) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS))
    for key in unknown:
        errors.append(f"unknown key '{key}'")
    for key in REQUIRED_KEYS:
        if key not in document:
            errors.append(f"missing required key '{key}'")
    if errors:
        return False, errors

    dim = document['dim']
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        errors.append("'dim' must be a positive integer")
        return False, errors
    if not isinstance(document['basis'], list) or len(document['basis']) != dim:
        errors.append(f"'basis' must list {dim} labels")
    if not isinstance(document['unit'], list) or len(document['unit']) != dim:
        errors.append(f"'unit' must list {dim} scalars")
    if not isinstance(document['mul'], list):
        errors.append("'mul' must be a list of [i, j, k, scalar]")
    else:
        for position, entry in enumerate(document['mul']):
            if not isinstance(entry, list) or len(entry) != 4:
                errors.append(f"mul[{position}] must have the form [i, j, k, scalar]")
                continue
            for index in entry[:3]:
                if isinstance(index, bool) or not isinstance(index, int) or not 0 <= index < dim:
                    errors.append(f"mul[{position}] index {index!r} outside 0..{dim - 1}")
    if 'frobenius_eps' in document:
        eps = document['frobenius_eps']
        if not isinstance(eps, list) or len(eps) != dim:
            errors.append(f"'frobenius_eps' must list {dim} scalars")
    for name, rows in (document.get('automorphisms') or {}).items():
        if not isinstance(rows, list) or len(rows) != dim or any(
            not isinstance(row, list) or len(row) != dim for row in rows
        ):
            errors.append(f"automorphism '{name}' must be a {dim}x{dim} matrix")
    for name, degrees in (document.get('gradings') or {}).items():
        if not isinstance(degrees, list) or len(degrees) != dim or any(
            isinstance(d, bool) or not isinstance(d, int) for d in degrees
        ):
            errors.append(f"grading '{name}' must list {dim} integers")

    return len(errors) == 0, errors


def _line_of(text: str, key: str) -> Optional[int]:
    """1-based line of the first occurrence of a JSON key, if present."""
    position = text.find(f'"{key}"')
    if position < 0:
        return None
    return text.count('\n', 0, position) + 1


class _ScalarReader:
    """Parses file scalars for one field, naming the offending entry on failure."""

    def __init__(self, field: Field, path: str, text: str):
        self.field = field
        self.path = path
        self.text = text

    def __call__(self, value: Any, where: str, key: str):
        if isinstance(self.field, PrimeField):
            if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < self.field.p:
                raise AlgebraFileError(
                    self.path, f"expected an integer in 0..{self.field.p - 1}, got {value!r}",
                    field=where, line=_line_of(self.text, key),
                )
            return self.field(value)
        if isinstance(value, str):
            try:
                parsed = Fraction(value.strip())
            except ValueError:
                raise AlgebraFileError(self.path, f"cannot parse scalar {value!r}", field=where,
                                       line=_line_of(self.text, key))
            if value.strip() != f"{parsed.numerator}/{parsed.denominator}" and parsed.denominator != 1:
                raise AlgebraFileError(self.path, f"rational {value!r} is not reduced", field=where,
                                       line=_line_of(self.text, key))
            return parsed
        if isinstance(value, bool) or not isinstance(value, int):
            raise AlgebraFileError(self.path, f"expected an int or 'a/b' string, got {value!r}",
                                   field=where, line=_line_of(self.text, key))
        return self.field(value)


def algebra_from_document(document: Dict, path: str = "<memory>", text: str = "") -> ZooAlgebra:
    """
    Build and validate a ZooAlgebra from a parsed document.

    Raises:
        AlgebraFileError: schema, scalar or axiom failures, with the field
            (and line when the source text is known)
    """
    is_valid, errors = validate_algebra_structure(document)
    if not is_valid:
        raise AlgebraFileError(path, "; ".join(errors))

    try:
        field = parse_field(document['field'])
    except HochschildError as exc:
        raise AlgebraFileError(path, str(exc), field='field', line=_line_of(text, 'field'))
    read = _ScalarReader(field, path, text)
    dim = document['dim']

    unit = [read(value, f"unit[{k}]", 'unit') for k, value in enumerate(document['unit'])]
    mul: Dict[Tuple[int, int], Dict[int, object]] = {}
    for position, (i, j, k, value) in enumerate(document['mul']):
        scalar = read(value, f"mul[{position}]", 'mul')
        product = mul.setdefault((i, j), {})
        if k in product:
            raise AlgebraFileError(path, f"duplicate structure constant ({i}, {j}, {k})",
                                   field=f"mul[{position}]", line=_line_of(text, 'mul'))
        product[k] = scalar

    try:
        algebra = FiniteDimAlgebra(field, document['basis'], unit, mul, name=document.get('name', Path(path).stem))
    except HochschildError as exc:
        raise AlgebraFileError(path, str(exc), field='basis')
    report = validate(algebra)
    if not report['valid']:
        raise AlgebraFileError(path, "; ".join(report['errors']), field='mul', line=_line_of(text, 'mul'))

    frobenius = None
    if 'frobenius_eps' in document:
        eps = [read(value, f"frobenius_eps[{k}]", 'frobenius_eps') for k, value in enumerate(document['frobenius_eps'])]
        try:
            frobenius = build_frobenius(algebra, eps)
        except HochschildError as exc:
            raise AlgebraFileError(path, str(exc), field='frobenius_eps', line=_line_of(text, 'frobenius_eps'))

    automorphisms: Dict[str, Automorphism] = {}
    for name, rows in (document.get('automorphisms') or {}).items():
        where = f"automorphisms.{name}"
        parsed = [[read(value, where, name) for value in row] for row in rows]
        try:
            automorphism = Automorphism(algebra, SparseMatrix.from_rows(parsed, field), name=name)
        except HochschildError as exc:
            raise AlgebraFileError(path, str(exc), field=where, line=_line_of(text, name))
        if name == 'nu':
            if frobenius is None:
                raise AlgebraFileError(path, "'nu' given without 'frobenius_eps'", field=where)
            if automorphism != frobenius.nakayama:
                raise AlgebraFileError(path, "differs from the Nakayama automorphism of the form",
                                       field=where, line=_line_of(text, name))
            continue
        automorphisms[name] = automorphism

    gradings: Dict[str, Grading] = {}
    for name, degrees in (document.get('gradings') or {}).items():
        grading = Grading(name, tuple(degrees))
        grading_report = check_grading(algebra, grading)
        if not grading_report['valid']:
            raise AlgebraFileError(path, "; ".join(grading_report['errors']), field=f"gradings.{name}",
                                   line=_line_of(text, name))
        gradings[name] = grading

    return ZooAlgebra(algebra, frobenius, automorphisms=automorphisms, gradings=gradings,
                      description=f"{algebra.name} over {field.name} (from {path})")


@log_function(logger)
def load_algebra(path: Union[str, Path]) -> ZooAlgebra:
    """
    Read an algebra file.

    Raises:
        AlgebraFileError: unreadable file, JSON syntax error (with line) or
            any validation failure
    """
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise AlgebraFileError(str(path), f"cannot read file: {exc.strerror or exc}")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(str(path), exc.msg, line=exc.lineno)
    zoo = algebra_from_document(document, str(path), text)
    logger.info(f"Loaded {zoo.algebra.name} (dim {zoo.algebra.dim}) from {path}")
    return zoo


def algebra_to_document(zoo: ZooAlgebra) -> Dict[str, Any]:
    """Serialize a bundle; the Nakayama automorphism is written as 'nu'."""
    algebra = zoo.algebra
    field = algebra.field
    dim = algebra.dim

    def dense(vector) -> List[Any]:
        return [field.serialize(vector.get(k, field.zero())) for k in range(dim)]

    def rows(automorphism: Automorphism) -> List[List[Any]]:
        images = [automorphism.image(j) for j in range(dim)]
        return [[field.serialize(images[j].get(i, field.zero())) for j in range(dim)] for i in range(dim)]

    document: Dict[str, Any] = {
        'name': algebra.name,
        'field': field.descriptor(),
        'dim': dim,
        'basis': list(algebra.labels),
        'unit': dense(algebra.unit_vector),
        'mul': [[i, j, k, field.serialize(c)] for i, j, k, c in algebra.structure_constants()],
    }
    if zoo.frobenius is not None:
        document['frobenius_eps'] = dense(zoo.frobenius.eps)
    automorphisms = {name: rows(a) for name, a in zoo.automorphisms.items()}
    if zoo.frobenius is not None:
        automorphisms['nu'] = rows(zoo.frobenius.nakayama)
    if automorphisms:
        document['automorphisms'] = automorphisms
    if zoo.gradings:
        document['gradings'] = {name: list(g.degrees) for name, g in zoo.gradings.items()}
    return document


@log_function(logger)
def save_algebra(zoo: ZooAlgebra, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(algebra_to_document(zoo), indent=2) + "\n", encoding='utf-8')
    logger.info(f"Saved {zoo.algebra.name} to {path}")
    return path
