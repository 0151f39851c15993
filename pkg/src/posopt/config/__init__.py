"""Configuration for posopt."""

from .settings import (
    Config,
    DevelopmentConfig,
    ProductionConfig,
    TestingConfig,
    config,
    get_config,
    load_config_file,
    with_overrides,
)

__all__ = [
    'Config',
    'DevelopmentConfig',
    'ProductionConfig',
    'TestingConfig',
    'config',
    'get_config',
    'load_config_file',
    'with_overrides',
]
