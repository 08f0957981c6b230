"""
Provenance package initialization.
"""

from src.provenance.run_manifest import (
    RunManifest,
    RunConfig,
    ManifestStatus,
    SuiteResult,
    combine_status,
    create_manifest,
    compute_file_hash
)

__all__ = [
    'RunManifest',
    'RunConfig',
    'ManifestStatus',
    'SuiteResult',
    'combine_status',
    'create_manifest',
    'compute_file_hash'
]
