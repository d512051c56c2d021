from enum import Enum
from typing import Any, Dict, Optional, Tuple


class ErrorCode(str, Enum):
    """
    Enum of error codes for the application
    """
    # Input errors
    SYNTAX_ERROR = "syntax_error"
    UNKNOWN_IDENTIFIER = "unknown_identifier"
    INVALID_EXPONENT = "invalid_exponent"
    DEGENERATE_INPUT = "degenerate_input"
    INVALID_ARGUMENT = "invalid_argument"

    # Analysis outcomes
    HYPOTHESIS_VIOLATION = "hypothesis_violation"
    DIRECTION_UNDEFINED = "direction_undefined"

    # Implementation errors
    INVARIANT_VIOLATION = "invariant_violation"
    INTERNAL_ERROR = "internal_error"


class Verdict(str, Enum):
    """
    Outcome of the index-sum ledger
    """
    PASS = "pass"
    INCONCLUSIVE = "inconclusive"
    HYPOTHESES_VIOLATED = "hypotheses_violated"


class UmbilicType(str, Enum):
    LEMON = "Lemon"
    UNCERTIFIED = "Uncertified"


class PointClass(str, Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


class FormType(str, Enum):
    ELLIPTIC = "Elliptic"
    HYPERBOLIC = "Hyperbolic"
    NEITHER = "Neither"


class Termination(str, Enum):
    """
    Why a streamline stopped
    """
    BOUNDARY = "boundary"
    UMBILIC_PROXIMITY = "umbilic-proximity"
    STEP_FAILURE = "step-failure"
    MAX_LENGTH = "max-length"


# Dictionary mapping error codes to CLI exit codes and default messages
ERROR_DETAILS = {
    ErrorCode.SYNTAX_ERROR: (2, "Polynomial syntax error"),
    ErrorCode.UNKNOWN_IDENTIFIER: (2, "Unknown identifier in polynomial"),
    ErrorCode.INVALID_EXPONENT: (2, "Exponent must be a nonnegative integer literal"),
    ErrorCode.DEGENERATE_INPUT: (2, "Input polynomial is degenerate for this operation"),
    ErrorCode.INVALID_ARGUMENT: (2, "Invalid argument"),

    ErrorCode.HYPOTHESIS_VIOLATION: (3, "Hypotheses of the index formula are violated"),
    ErrorCode.DIRECTION_UNDEFINED: (2, "Direction undefined at an umbilic point"),

    ErrorCode.INVARIANT_VIOLATION: (4, "Internal invariant violated"),
    ErrorCode.INTERNAL_ERROR: (4, "Internal error"),
}

EXIT_OK = 0


class AtlasError(Exception):
    """
    Base class for errors raised by the analysis.

    Every error carries an ErrorCode so the CLI can map it to an exit code
    and a standard error record.
    """
    code = ErrorCode.INTERNAL_ERROR

    def __init__(self, message: Optional[str] = None, details: Any = None,
                 code: Optional[ErrorCode] = None):
        if code is not None:
            self.code = code
        self.message = message or Status.get_error_details(self.code)[1]
        self.details = details
        super().__init__(self.message)


class PolynomialSyntaxError(AtlasError):
    """Malformed polynomial text; `position` is the 0-based character offset."""
    code = ErrorCode.SYNTAX_ERROR

    def __init__(self, message: str, position: int,
                 code: ErrorCode = ErrorCode.SYNTAX_ERROR):
        self.position = position
        super().__init__(f"{message} at position {position}",
                         details={"position": position}, code=code)


class DegenerateInputError(AtlasError):
    code = ErrorCode.DEGENERATE_INPUT


class InvalidArgumentError(AtlasError):
    code = ErrorCode.INVALID_ARGUMENT


class UmbilicError(AtlasError):
    """Raised when a principal direction is requested at an umbilic."""
    code = ErrorCode.DIRECTION_UNDEFINED


class InvariantViolation(AtlasError):
    """An exact identity that always holds has failed; this is a bug."""
    code = ErrorCode.INVARIANT_VIOLATION


class Status:
    """
    Class for handling status information and error codes
    """

    @staticmethod
    def get_error_details(error_code: ErrorCode) -> Tuple[int, str]:
        """
        Get the exit code and default message for an error code

        Args:
            error_code: The error code

        Returns:
            Tuple: (exit code, default message)
        """
        return ERROR_DETAILS.get(error_code, (4, "Unknown error"))

    @staticmethod
    def exit_code(error_code: ErrorCode) -> int:
        return Status.get_error_details(error_code)[0]

    @staticmethod
    def create_error(
        error_code: ErrorCode,
        message: Optional[str] = None,
        details: Any = None
    ) -> Dict[str, Any]:
        """
        Create a standardized error object

        Args:
            error_code: The error code
            message: Custom error message (defaults to standard message)
            details: Additional error details

        Returns:
            Dict: Error object with code, message, exit code and details
        """
        exit_code, default_message = Status.get_error_details(error_code)

        error = {
            "code": error_code.value,
            "message": message or default_message,
            "exit_code": exit_code,
        }

        if details:
            error["details"] = details

        return error

    @staticmethod
    def verdict_exit_code(verdict: Verdict) -> int:
        """Exit code for a completed analysis with the given ledger verdict."""
        if verdict == Verdict.HYPOTHESES_VIOLATED:
            return Status.exit_code(ErrorCode.HYPOTHESIS_VIOLATION)
        return EXIT_OK
