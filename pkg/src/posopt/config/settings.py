"""Application configuration settings."""

import os
from typing import Any, Dict, Optional

from dotenv import dotenv_values, load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_float(name: str, default: float) -> float:
    return float(os.environ.get(name, default))


def _env_int(name: str, default: int) -> int:
    return int(os.environ.get(name, default))


class Config:
    """Base configuration class."""

    # Flask settings
    SECRET_KEY = os.environ.get('SECRET_KEY') or 'dev-secret-key-change-in-production'
    JSON_SORT_KEYS = False

    # Randomized searches (witness search, property sampling)
    POSOPT_SEED = _env_int('POSOPT_SEED', 0)

    # Solver tolerances
    POSOPT_FEAS_TOL = _env_float('POSOPT_FEAS_TOL', 1e-8)
    POSOPT_GAP_TOL = _env_float('POSOPT_GAP_TOL', 1e-7)
    POSOPT_PSD_TOL = _env_float('POSOPT_PSD_TOL', 1e-9)
    POSOPT_RANK_TOL = _env_float('POSOPT_RANK_TOL', 1e-7)
    POSOPT_MAX_ITER = _env_int('POSOPT_MAX_ITER', 100)
    POSOPT_STEP_FRACTION = _env_float('POSOPT_STEP_FRACTION', 0.98)
    POSOPT_LMI_MARGIN = _env_float('POSOPT_LMI_MARGIN', 1e-7)

    # Batch mode
    POSOPT_WORKERS = _env_int('POSOPT_WORKERS', 4)

    # Logging
    POSOPT_LOG_LEVEL = os.environ.get('POSOPT_LOG_LEVEL', 'WARNING')


class DevelopmentConfig(Config):
    """Development configuration."""
    DEBUG = True
    TESTING = False
    POSOPT_LOG_LEVEL = os.environ.get('POSOPT_LOG_LEVEL', 'INFO')


class ProductionConfig(Config):
    """Production configuration."""
    DEBUG = False
    TESTING = False


class TestingConfig(Config):
    """Testing configuration."""
    DEBUG = True
    TESTING = True
    POSOPT_SEED = 1234
    POSOPT_WORKERS = 2


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': ProductionConfig
}

_NUMERIC_KEYS = {
    'POSOPT_SEED': int,
    'POSOPT_FEAS_TOL': float,
    'POSOPT_GAP_TOL': float,
    'POSOPT_PSD_TOL': float,
    'POSOPT_RANK_TOL': float,
    'POSOPT_MAX_ITER': int,
    'POSOPT_STEP_FRACTION': float,
    'POSOPT_LMI_MARGIN': float,
    'POSOPT_WORKERS': int,
    'POSOPT_LOG_LEVEL': str,
}


def load_config_file(path: str, base: type = Config) -> type:
    """Return a config class overriding ``base`` with values from a key=value file.

    Keys may be given with or without the ``POSOPT_`` prefix and in any case.
    Unknown keys are rejected so that typos do not silently fall back to defaults.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f'Config file not found: {path}')

    overrides: Dict[str, Any] = {}
    for raw_key, raw_value in dotenv_values(path).items():
        if raw_value is None:
            continue
        key = raw_key.strip().upper()
        if not key.startswith('POSOPT_'):
            key = f'POSOPT_{key}'
        if key not in _NUMERIC_KEYS:
            raise ValueError(f'Unknown configuration key: {raw_key}')
        try:
            overrides[key] = _NUMERIC_KEYS[key](raw_value)
        except ValueError:
            raise ValueError(f'Invalid value for {raw_key}: {raw_value!r}')

    return type(f'{base.__name__}FromFile', (base,), overrides)


def with_overrides(base: type, overrides: Optional[Dict[str, Any]]) -> type:
    """Return a config class with command-line overrides applied on top of ``base``."""
    values = {k: v for k, v in (overrides or {}).items() if v is not None}
    if not values:
        return base
    return type(f'{base.__name__}Override', (base,), values)


def get_config(name: Optional[str] = None) -> type:
    """Resolve the active config class from a name, ``POSOPT_CONFIG`` and ``POSOPT_ENV``."""
    base = config.get(name or os.environ.get('POSOPT_ENV', 'default'), ProductionConfig)
    config_path = os.environ.get('POSOPT_CONFIG')
    if config_path:
        return load_config_file(config_path, base)
    return base
