"""
Validators for run options, in the report-dict shape used across the toolkit.
"""
from typing import Any, Dict, Optional, Sequence

from src.linalg.fields import parse_field
from src.utils.errors import InvalidFieldError

OUTPUT_FORMATS = ('text', 'json')
MAX_SEED = 2 ** 64 - 1


def validate_run_options(
    max_degree: int,
    budget: int,
    seed: int,
    output_format: str,
    field: Optional[str] = None,
    suites: Optional[Sequence[str]] = None,
    known_suites: Sequence[str] = (),
) -> Dict[str, Any]:
    """
    Check the effective CLI/config options of a run.

    Returns:
        Dict with 'valid', 'errors' and 'warnings'
    """
    results = {
        'valid': True,
        'errors': [],
        'warnings': []
    }

    if max_degree < 0:
        results['errors'].append(f"max degree must be >= 0, got {max_degree}")
    elif max_degree > 8:
        results['warnings'].append(f"max degree {max_degree} will mostly exceed the budget")

    if budget <= 0:
        results['errors'].append(f"budget must be positive, got {budget}")

    if not 0 <= seed <= MAX_SEED:
        results['errors'].append(f"seed must be an unsigned 64-bit integer, got {seed}")

    if not validate_output_format(output_format):
        results['errors'].append(f"unknown output format '{output_format}' (use {' or '.join(OUTPUT_FORMATS)})")

    if field is not None:
        try:
            parse_field(field)
        except InvalidFieldError as exc:
            results['errors'].append(str(exc))

    unknown = [s for s in (suites or []) if s not in known_suites]
    if unknown:
        results['errors'].append(f"unknown suite(s): {', '.join(unknown)}")

    results['valid'] = not results['errors']
    return results


def validate_output_format(format_name: str) -> bool:
    return format_name.lower() in OUTPUT_FORMATS
