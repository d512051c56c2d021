import json
import logging
import math
import sys
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from umbilic_atlas.statuses import EXIT_OK, ErrorCode, Status

# Get logger
logger = logging.getLogger('umbilic_atlas')

SIGNIFICANT_DIGITS = 12


def normalize(value: Any) -> Any:
    """
    Convert a report value to plain JSON types.

    Fractions become "p/q" strings (integers stay integers), floats are
    rounded to 12 significant digits and non-finite floats become null.
    """
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not math.isfinite(x):
            return None
        x = float(f"{x:.{SIGNIFICANT_DIGITS}g}")
        return 0.0 if x == 0 else x
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [normalize(v) for v in value]
    if hasattr(value, 'to_dict'):
        return normalize(value.to_dict())
    raise TypeError(f"cannot serialise {type(value).__name__}")


def render_json(data: Any) -> str:
    """Deterministic JSON: sorted keys, fixed float formatting."""
    return json.dumps(normalize(data), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class CLIResponse:
    """
    Standardized output of the command-line front end: reports go to stdout
    or a file, error records go to stderr.
    """

    @staticmethod
    def write(text: str, path: Optional[str] = None) -> None:
        if path and path != '-':
            Path(path).write_text(text, encoding='utf-8')
            logger.info(f"Wrote {len(text)} characters to {path}")
        else:
            sys.stdout.write(text)
            sys.stdout.flush()

    @staticmethod
    def success(data: Dict[str, Any], path: Optional[str] = None) -> int:
        """
        Emit a report

        Args:
            data: The report dictionary
            path: Output file, stdout when None or '-'

        Returns:
            int: exit code 0
        """
        CLIResponse.write(render_json(data), path)
        return EXIT_OK

    @staticmethod
    def error(code: ErrorCode, message: Optional[str] = None, details: Any = None,
              exception: Optional[BaseException] = None) -> int:
        """
        Emit an error record on stderr

        Args:
            code: The error code
            message: Custom error message
            details: Additional error details
            exception: Exception that caused the error, logged with its traceback
                when it is an internal error

        Returns:
            int: exit code for the error
        """
        error = Status.create_error(code, message, details)
        if exception is not None and error['exit_code'] == 4:
            logger.exception(f"Internal error: {error['message']}", exc_info=exception)
        else:
            logger.error(f"Error: {error['message']} - Code: {code.value} - Details: {details}")
        sys.stderr.write(render_json({'error': error}))
        sys.stderr.flush()
        return error['exit_code']
