"""
Settings for the umbilic_atlas project.

Every tunable is read from the environment (a .env file is loaded first) and
falls back to the default documented next to it. Run generate_env.py to
write a .env listing all of them.
"""

from pathlib import Path
import logging.config
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def _env_bool(name: str, default: str) -> bool:
    return os.environ.get(name, default).strip().lower() in ('1', 'true', 'yes', 'on')


# Tolerances
UMBILIC_TOL = float(os.environ.get('UMBILIC_TOL', '1e-9'))
CLASS_EPS = float(os.environ.get('CLASS_EPS', '1e-10'))
CLUSTER_RADIUS = float(os.environ.get('CLUSTER_RADIUS', '1e-8'))
ROOT_WIDTH_BITS = int(os.environ.get('ROOT_WIDTH_BITS', '60'))

# Search region for finite umbilics
DEFAULT_BOX = tuple(float(v) for v in os.environ.get('DEFAULT_BOX', '-10,10,-10,10').split(','))
MAX_BOX_HALF_WIDTH = float(os.environ.get('MAX_BOX_HALF_WIDTH', '80'))

# Winding numbers
WINDING_SAMPLES = int(os.environ.get('WINDING_SAMPLES', '1024'))
WINDING_MIN_SAMPLES = int(os.environ.get('WINDING_MIN_SAMPLES', '256'))
WINDING_MAX_SAMPLES = int(os.environ.get('WINDING_MAX_SAMPLES', '1000000'))
WINDING_RADIUS = float(os.environ.get('WINDING_RADIUS', '0.1'))

# Streamlines
R_STOP = float(os.environ.get('R_STOP', '1e-3'))
STREAMLINE_ATOL = float(os.environ.get('STREAMLINE_ATOL', '1e-8'))
STREAMLINE_MAX_STEP_FRACTION = float(os.environ.get('STREAMLINE_MAX_STEP_FRACTION', '1e-2'))
STREAMLINE_MAX_LENGTH = float(os.environ.get('STREAMLINE_MAX_LENGTH', '4.0'))
SEEDS = int(os.environ.get('SEEDS', '64'))

# Concurrency
MAX_WORKERS = int(os.environ.get('MAX_WORKERS', '4'))

# Reporting
REPORT_TIMING = _env_bool('REPORT_TIMING', 'False')
METRICS_TEXTFILE = os.environ.get('METRICS_TEXTFILE') or None

# Logging Configuration
LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO').upper()
LOG_FILE = os.environ.get('LOG_FILE') or None

APP_LOGGERS = ('polynomials', 'curvature', 'umbilics', 'rendering', 'umbilic_atlas')

# Define logging settings
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {module} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '%(asctime)s [%(name)s] %(levelname)s: %(message)s',
            'datefmt': '%Y-%m-%d %H:%M:%S',
        },
        'json': {
            'format': '{"time": "%(asctime)s", "level": "%(levelname)s", "logger": "%(name)s", "message": "%(message)s", "module": "%(module)s", "thread": "%(thread)d"}',
            'class': 'logging.Formatter',
        },
    },
    'handlers': {
        'console': {
            'level': LOG_LEVEL,
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
        'diagnostics': {
            'level': 'WARNING',
            'class': 'umbilic_atlas.logging.DiagnosticsLogHandler',
        },
    },
    'loggers': {
        name: {
            'handlers': ['console', 'diagnostics'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
        for name in APP_LOGGERS
    },
}

if LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': 'INFO',
        'class': 'logging.handlers.RotatingFileHandler',
        'filename': LOG_FILE,
        'maxBytes': 1024 * 1024 * 5,  # 5 MB
        'backupCount': 5,
        'formatter': 'verbose',
    }
    for _logger in LOGGING['loggers'].values():
        _logger['handlers'].append('file')


def configure_logging(level: str = None) -> None:
    """Apply LOGGING, optionally overriding the console level."""
    config = LOGGING
    if level:
        config = {**LOGGING, 'handlers': dict(LOGGING['handlers']), 'loggers': dict(LOGGING['loggers'])}
        config['handlers']['console'] = {**LOGGING['handlers']['console'], 'level': level.upper()}
        config['loggers'] = {
            name: {**spec, 'level': level.upper()} for name, spec in LOGGING['loggers'].items()
        }
    logging.config.dictConfig(config)
