"""
Shared fixtures: project root on sys.path, zoo algebras and a small config.
"""
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.append(str(Path(__file__).parent.parent))

from src.config import get_default_config  # noqa: E402
from src.linalg.fields import QQ, PrimeField  # noqa: E402
from src.zoo import build_dnr, nakayama_cycle, truncated_poly  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture(scope="session")
def f2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def f3():
    return PrimeField(3)


@pytest.fixture(scope="session")
def dual_numbers():
    """k[x]/(x^2) over Q."""
    return truncated_poly(2, QQ)


@pytest.fixture(scope="session")
def cubic():
    """k[x]/(x^3) over Q."""
    return truncated_poly(3, QQ)


@pytest.fixture(scope="session")
def nakayama2():
    """The dim-4 self-injective Nakayama cycle (2 vertices, Loewy length 2)."""
    return nakayama_cycle(2, QQ)


@pytest.fixture(scope="session")
def dnr41():
    return build_dnr(4, 1, QQ)


@pytest.fixture(scope="session")
def dnr42():
    return build_dnr(4, 2, QQ)


@pytest.fixture
def small_config():
    """Defaults with reduced sample counts for quick suite runs."""
    config = get_default_config()
    config['sampling']['random_cochains'] = 8
    config['verify'].update({
        'twist_homotopy_cochains': 6,
        'twist_homotopy_max_degree': 3,
        'hh_nu_cocycles': 6,
        'euler_cases': 12,
        'gerstenhaber_cases': 3,
        'theta_samples': 2,
        'bv_total_degree': 2,
        'delta_squared_degree': 2,
        'max_degree': 2,
    })
    return config
