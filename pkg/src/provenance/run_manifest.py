"""
Run manifests for verification reports.

A manifest records what was verified (input algebra, effective settings,
seed) and the ordered suite results. It holds no wall-clock values, so a
seeded rerun on the same input serializes byte-identically.
"""

from dataclasses import dataclass, field, asdict
from typing import Dict, List, Optional, Any
from enum import Enum
import json
from pathlib import Path
import hashlib


class ManifestStatus(Enum):
    """Status of a suite or of a whole run."""
    PASS = "PASS"
    FAIL = "FAIL"
    PARTIAL = "PARTIAL"  # some checks skipped, none failed
    SKIPPED = "SKIPPED"


@dataclass
class RunConfig:
    """Effective settings of a run (configuration file, env and CLI flags merged)."""
    source: Dict[str, Any]
    field: str
    max_degree: int
    budget: int
    seed: int
    sample_counts: Dict[str, int] = field(default_factory=dict)
    output_format: str = 'text'
    suites: List[str] = field(default_factory=list)
    stretch: bool = False

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError(f"max_degree must be >= 0, got {self.max_degree}")


@dataclass
class SuiteResult:
    """Outcome of one verification suite."""
    name: str
    identity: str
    status: ManifestStatus
    algebra: str = ""
    samples: int = 0
    seed: Optional[int] = None
    checks: List[Dict[str, Any]] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status in (ManifestStatus.PASS, ManifestStatus.PARTIAL, ManifestStatus.SKIPPED)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['status'] = self.status.value
        return data


def combine_status(statuses: List[ManifestStatus]) -> ManifestStatus:
    """FAIL dominates; all SKIPPED stays SKIPPED; any skip among passes is PARTIAL."""
    if not statuses:
        return ManifestStatus.SKIPPED
    if ManifestStatus.FAIL in statuses:
        return ManifestStatus.FAIL
    if all(s == ManifestStatus.SKIPPED for s in statuses):
        return ManifestStatus.SKIPPED
    if all(s == ManifestStatus.PASS for s in statuses):
        return ManifestStatus.PASS
    return ManifestStatus.PARTIAL


@dataclass
class RunManifest:
    """
    Complete record of a verification run.

    ``run_id`` is derived from the seed and the input description, so it
    is stable across reruns.
    """
    run_id: str
    input_description: str
    config: RunConfig
    input_sha256: Optional[str] = None
    suites: List[SuiteResult] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def add_suite(self, result: SuiteResult):
        """Append a suite result (callers add them in report order)."""
        self.suites.append(result)

    def add_warning(self, message: str):
        self.warnings.append(message)

    @property
    def status(self) -> ManifestStatus:
        return combine_status([s.status for s in self.suites])

    @property
    def exit_code(self) -> int:
        return 1 if self.status == ManifestStatus.FAIL else 0

    def to_dict(self) -> Dict[str, Any]:
        """Convert manifest to dictionary."""
        return {
            'run_id': self.run_id,
            'status': self.status.value,
            'input': self.input_description,
            'input_sha256': self.input_sha256,
            'config': asdict(self.config),
            'suites': [s.to_dict() for s in self.suites],
            'warnings': self.warnings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, sort_keys=False)

    def save(self, output_dir: str = 'outputs') -> str:
        """Save manifest to JSON file."""
        output_path = Path(output_dir) / f"verify_{self.run_id}.json"
        output_path.parent.mkdir(parents=True, exist_ok=True)

        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(self.to_json())

        return str(output_path)


def compute_file_hash(file_path: str) -> str:
    """Compute SHA256 hash of a file."""
    sha256_hash = hashlib.sha256()
    with open(file_path, "rb") as f:
        for byte_block in iter(lambda: f.read(4096), b""):
            sha256_hash.update(byte_block)
    return sha256_hash.hexdigest()


def create_manifest(input_description: str, config: RunConfig, input_path: Optional[str] = None) -> RunManifest:
    """Create a manifest whose run id depends only on the seed and the input."""
    digest = hashlib.sha256(f"{config.seed}|{input_description}".encode('utf-8')).hexdigest()[:12]
    return RunManifest(
        run_id=digest,
        input_description=input_description,
        config=config,
        input_sha256=compute_file_hash(input_path) if input_path else None,
    )
