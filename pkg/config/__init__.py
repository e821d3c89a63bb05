"""
Configuration Package
Settings, numeric constants and message templates
"""

from .constants import (
    TOLERANCES,
    MP_DEFAULTS,
    ENSEMBLE_DEFAULTS,
    FLOAT_FORMAT
)

from .messages import (
    ERROR_MESSAGES,
    LOG_MESSAGES,
    REPORT_NOTES
)

from .settings import Settings, get_settings

__all__ = [
    # Constants
    'TOLERANCES',
    'MP_DEFAULTS',
    'ENSEMBLE_DEFAULTS',
    'FLOAT_FORMAT',

    # Messages
    'ERROR_MESSAGES',
    'LOG_MESSAGES',
    'REPORT_NOTES',

    # Settings
    'Settings',
    'get_settings'
]
