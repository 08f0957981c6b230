"""
Configuration package for hochschild-bv.

Unified configuration system with:
- Complete default configuration
- YAML file overlay (config/config.yaml)
- Environment variable merging (.env support)
- Validation
"""
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from src.utils.errors import ConfigurationError

# Load environment variables
load_dotenv()

DEFAULT_SUITES = [
    "structure",
    "twist_homotopy",
    "homotopy",
    "euler_bracket",
    "gerstenhaber",
    "delta_prime",
    "hh_nu",
    "bv_identity",
    "delta_squared",
    "delta_eps1",
    "delta_generators",
    "theta",
    "char_robustness",
]


def get_default_config() -> Dict[str, Any]:
    """
    Get complete default configuration with all required keys

    This ensures the toolkit works even without config.yaml
    """
    return {
        'app': {
            'name': 'hochschild-bv',
            'version': '1.0.0',
            'log_level': 'WARNING'
        },
        'engine': {
            'budget': 2 ** 24,
            'n_jobs': 1,
            'cocycle_check_samples': 25,
            'exhaustive_check_limit': 2 ** 16,
            'order_bound': None
        },
        'sampling': {
            'seed': 20240611,
            'random_cochains': 40,
            'tuples_per_cochain': 4,
            'support_factor': 3,
            'scalar_pool': [-2, -1, 1, 2]
        },
        'resolution': {
            'psi_cache_cap': 400000
        },
        'verify': {
            'suites': list(DEFAULT_SUITES),
            'max_degree': 4,
            'twist_homotopy_max_degree': 4,
            'bv_total_degree': 3,
            'delta_squared_degree': 3,
            'delta_degree_cases': 20,
            'theta_degree': 2,
            'twist_homotopy_cochains': 50,
            'hh_nu_degree': 2,
            'hh_nu_cocycles': 50,
            'gerstenhaber_degree': 2,
            'gerstenhaber_cases': 10,
            'theta_samples': 6,
            'char_robustness_degree': 2,
            'euler_cases': 100,
            'stretch': False
        },
        'paths': {
            'logs': None
        }
    }


ENV_OVERRIDES = {
    'HBV_LOG_LEVEL': ('app', 'log_level', str),
    'HBV_BUDGET': ('engine', 'budget', int),
    'HBV_SEED': ('sampling', 'seed', int),
    'HBV_N_JOBS': ('engine', 'n_jobs', int),
    'HBV_PSI_CACHE_CAP': ('resolution', 'psi_cache_cap', int),
}


def merge_env_variables(config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Merge environment variables into configuration

    Supports HBV_LOG_LEVEL, HBV_BUDGET, HBV_SEED, HBV_N_JOBS, HBV_PSI_CACHE_CAP.
    """
    for env_name, (section, key, cast) in ENV_OVERRIDES.items():
        if env_name not in os.environ:
            continue
        raw = os.getenv(env_name, '')
        try:
            value = cast(raw)
        except ValueError:
            raise ConfigurationError(f"{section}.{key}", f"{env_name}={raw!r} is not a valid {cast.__name__}")
        if key == 'log_level':
            value = value.upper()
        config.setdefault(section, {})[key] = value

    return config


def validate_config(config: Dict[str, Any]) -> tuple[bool, list[str]]:
    """
    Validate configuration for required keys

    Returns:
        (is_valid, warnings_list)
    """
    warnings = []

    required_keys = {
        'app.name': lambda c: 'app' in c and 'name' in c['app'],
        'engine.budget': lambda c: 'engine' in c and 'budget' in c['engine'],
        'sampling.seed': lambda c: 'sampling' in c and 'seed' in c['sampling'],
        'resolution.psi_cache_cap': lambda c: 'resolution' in c and 'psi_cache_cap' in c['resolution'],
        'verify.suites': lambda c: 'verify' in c and 'suites' in c['verify'],
    }

    for key, check in required_keys.items():
        if not check(config):
            warnings.append(f"Missing configuration: {key}")

    engine = config.get('engine', {})
    if isinstance(engine.get('budget'), int) and engine['budget'] <= 0:
        warnings.append("engine.budget must be positive")
    if isinstance(engine.get('n_jobs'), int) and engine['n_jobs'] == 0:
        warnings.append("engine.n_jobs must be nonzero")
    unknown = set(config.get('verify', {}).get('suites', [])) - set(DEFAULT_SUITES)
    if unknown:
        warnings.append(f"Unknown verification suites: {sorted(unknown)}")

    return len(warnings) == 0, warnings


def _load_file_config(config_path: Path, config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Load configuration from file and merge with base config.

    Args:
        config_path: Path to config file
        config: Base configuration dictionary

    Returns:
        Merged configuration dictionary
    """
    if not config_path.exists():
        return config
    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            file_config = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(str(config_path), f"invalid YAML: {e}")
    if file_config is None:
        return config
    if not isinstance(file_config, dict):
        raise ConfigurationError(str(config_path), "top level must be a mapping")
    return deep_merge(config, file_config)


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration with fallback and environment variable merging

    Priority (later wins):
    1. Default configuration
    2. Specified config_path, or config/config.yaml if it exists
    3. Environment variable overlay

    Args:
        config_path: Optional path to config file

    Returns:
        Complete configuration dictionary

    Raises:
        ConfigurationError: on unreadable files, bad overrides or failed validation
    """
    config = get_default_config()

    if config_path is None:
        path = Path(__file__).parent.parent.parent / "config" / "config.yaml"
    else:
        path = Path(config_path)
        if not path.exists():
            raise ConfigurationError(str(path), "config file does not exist")

    config = _load_file_config(path, config)
    config = merge_env_variables(config)

    is_valid, warnings = validate_config(config)
    if not is_valid:
        raise ConfigurationError("config", "; ".join(warnings))

    return config


def deep_merge(base: Dict, override: Dict) -> Dict:
    """
    Deep merge two dictionaries

    Args:
        base: Base dictionary
        override: Dictionary with overriding values

    Returns:
        Merged dictionary
    """
    result = base.copy()

    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value

    return result
