"""
Algebra pipeline: turns a family request or an algebra file into a
ready-to-use bundle (zoo algebra, cohomology engine, and for R(n,r) the
homotopy table and the Psi map).
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Any
import logging

from src.linalg.fields import Field, parse_field
from src.resolution import HomotopyTable, PsiMap
from src.services.cohomology_service import CohomologyEngine
from src.utils.errors import InapplicableError
from src.zoo import (
    ZooAlgebra,
    build_dnr,
    ground_field,
    load_algebra,
    matrix_algebra,
    nakayama_cycle,
    truncated_poly,
)

FAMILIES = ('dnr', 'truncated', 'nakayama', 'k', 'matrix')


@dataclass
class AlgebraRequest:
    """
    Encapsulates where an algebra comes from.

    Exactly one of ``family`` and ``input_path`` is set.

    Attributes:
        family: 'dnr' (R(n,r)), 'truncated' (k[x]/(x^m)), 'nakayama'
            (cyclic Nakayama algebra), 'k' (ground field) or 'matrix' (M_size(k))
        n, r: R(n,r) parameters
        m: Truncation degree for k[x]/(x^m)
        v, loewy_length: Vertices and Loewy length of the Nakayama cycle
        size: Matrix size
        field: 'Q' or 'Fp:<p>' (ignored for files, which name their field)
        input_path: Algebra file in the JSON format
    """
    family: Optional[str] = None
    n: int = 4
    r: int = 1
    m: int = 2
    v: int = 2
    loewy_length: int = 2
    size: int = 2
    field: str = 'Q'
    input_path: Optional[str] = None

    def __post_init__(self):
        """Validate inputs."""
        if (self.family is None) == (self.input_path is None):
            raise ValueError("Exactly one of family and input_path must be given")
        if self.family is not None and self.family not in FAMILIES:
            raise ValueError(f"Invalid family: '{self.family}'. Must be one of {', '.join(FAMILIES)}")

    @property
    def parsed_field(self) -> Field:
        return parse_field(self.field)

    def describe(self) -> Dict[str, Any]:
        """Source description recorded in reports."""
        if self.input_path is not None:
            return {'input': self.input_path}
        params = {
            'dnr': {'n': self.n, 'r': self.r},
            'truncated': {'m': self.m},
            'nakayama': {'v': self.v, 'loewy_length': self.loewy_length},
            'k': {},
            'matrix': {'size': self.size},
        }[self.family]
        return {'family': self.family, **params, 'field': self.field}

    def with_field(self, field_name: str) -> "AlgebraRequest":
        """Same family over another field."""
        if self.family is None:
            raise InapplicableError("field change", "algebras loaded from a file carry their own field")
        data = dict(self.__dict__)
        data['field'] = field_name
        return AlgebraRequest(**data)


@dataclass(eq=False)
class AlgebraBundle:
    """
    A built algebra with its engine and, for R(n,r), the resolution machinery.

    Attributes:
        request: The request it was built from
        zoo: The algebra and its attached structure
        engine: Cohomology engine bound to ``zoo``
    """
    request: AlgebraRequest
    zoo: ZooAlgebra
    engine: CohomologyEngine
    config: Dict[str, Any] = field(default_factory=dict, repr=False)
    _table: Optional[HomotopyTable] = field(default=None, repr=False)
    _psi: Optional[PsiMap] = field(default=None, repr=False)

    @property
    def description(self) -> str:
        return self.zoo.description or self.zoo.algebra.name

    @property
    def is_dnr(self) -> bool:
        return self.zoo.presentation is not None

    @property
    def homotopy_table(self) -> HomotopyTable:
        if not self.is_dnr:
            raise InapplicableError("homotopy table", f"{self.description} is not an R(n,r)")
        if self._table is None:
            self._table = HomotopyTable(self.zoo)
        return self._table

    @property
    def psi_map(self) -> PsiMap:
        if self._psi is None:
            cap = int(self.config.get('resolution', {}).get('psi_cache_cap', 400000))
            self._psi = PsiMap(self.homotopy_table, cache_cap=cap)
        return self._psi


class AlgebraPipeline:
    """
    Builds algebra bundles from requests.

    Args:
        config: Toolkit configuration
        logger: Logger shared with the engines it creates
    """

    def __init__(self, config: dict, logger: Optional[logging.Logger] = None):
        self.config = config
        self.logger = logger or logging.getLogger(__name__)

    def build_zoo(self, request: AlgebraRequest) -> ZooAlgebra:
        """
        Build or load the algebra of a request.

        Raises:
            AlgebraFileError: the file cannot be read or fails validation
            InvalidFieldError: bad field descriptor
        """
        if request.input_path is not None:
            self.logger.info(f"Loading algebra from {request.input_path}")
            return load_algebra(request.input_path)
        field_ = request.parsed_field
        if request.family == 'dnr':
            return build_dnr(request.n, request.r, field_)
        if request.family == 'truncated':
            return truncated_poly(request.m, field_)
        if request.family == 'nakayama':
            return nakayama_cycle(request.v, field_, loewy_length=request.loewy_length)
        if request.family == 'matrix':
            return matrix_algebra(request.size, field_)
        return ground_field(field_)

    def build(self, request: AlgebraRequest) -> AlgebraBundle:
        zoo = self.build_zoo(request)
        engine = CohomologyEngine(zoo, self.config, self.logger)
        self.logger.info(f"Algebra ready: {zoo.description or zoo.algebra.name} (dim {zoo.algebra.dim})")
        return AlgebraBundle(request, zoo, engine, self.config)
