"""
Services: the cohomology engine, algebra pipeline, verification suites
and report export.
"""

from src.services.cohomology_service import (
    BvMatrix,
    CohomologyBasis,
    CohomologyClass,
    CohomologyEngine,
    ThetaMap,
)
from src.services.pipeline_service import AlgebraBundle, AlgebraPipeline, AlgebraRequest, FAMILIES
from src.services.verification_service import IDENTITIES, VerificationService
from src.services.export_service import ExportService

__all__ = [
    'BvMatrix',
    'CohomologyBasis',
    'CohomologyClass',
    'CohomologyEngine',
    'ThetaMap',
    'AlgebraBundle',
    'AlgebraPipeline',
    'AlgebraRequest',
    'FAMILIES',
    'IDENTITIES',
    'VerificationService',
    'ExportService',
]
