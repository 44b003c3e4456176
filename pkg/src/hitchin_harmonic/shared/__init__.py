"""
Shared infrastructure: configuration, hashing, logging, errors and reports.
"""

from .config import RunConfig, Tolerances
from .errors import (
    HitchinError,
    DomainError,
    RangeError,
    TransversalityError,
    PositivityViolation,
    DegenerateQuadrupleError,
    UnsupportedSizeError,
    ConvergenceError,
    ConfigError,
)
from .hash_manager import HashManager, config_hash

__all__ = [
    'RunConfig',
    'Tolerances',
    'HashManager',
    'config_hash',
    'HitchinError',
    'DomainError',
    'RangeError',
    'TransversalityError',
    'PositivityViolation',
    'DegenerateQuadrupleError',
    'UnsupportedSizeError',
    'ConvergenceError',
    'ConfigError',
]

__version__ = '1.0.0'
