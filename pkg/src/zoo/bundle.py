"""
The bundle every zoo builder and the file loader return.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from src.algebra.algebra import FiniteDimAlgebra
from src.algebra.automorphism import Automorphism
from src.algebra.grading import Grading
from src.frobenius.frobenius import FrobeniusData


@dataclass(eq=False)
class ZooAlgebra:
    """
    An algebra with its optional attached structure.

    Attributes:
        algebra: The algebra
        frobenius: Frobenius data, when a form is known
        automorphisms: Named automorphisms (R(n,r) carries 'sigma')
        gradings: Named valid gradings
        presentation: DnrPresentation for R(n,r), else None
        description: Short human-readable origin, e.g. "R(4,1) over Q"
    """

    algebra: FiniteDimAlgebra
    frobenius: Optional[FrobeniusData] = None
    automorphisms: Dict[str, Automorphism] = field(default_factory=dict)
    gradings: Dict[str, Grading] = field(default_factory=dict)
    presentation: Optional[Any] = None
    description: str = ""

    @property
    def sigma(self) -> Optional[Automorphism]:
        return self.automorphisms.get('sigma')

    @property
    def nu(self) -> Optional[Automorphism]:
        return self.frobenius.nakayama if self.frobenius is not None else None
