"""
Custom exceptions and error reporting for pinfloer
"""
import logging
from enum import Enum
from typing import Any, Dict, Optional

from pinfloer.schemas.base import ErrorReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_COMPUTATION_FAILURE = 1
EXIT_INPUT_ERROR = 2


class ErrorCode(str, Enum):
    """Standard error codes for the application"""
    # Input errors
    INVALID_INPUT = "INVALID_INPUT"
    MALFORMED_FILE = "MALFORMED_FILE"
    DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
    INVALID_GRID = "INVALID_GRID"
    SIZE_LIMIT_EXCEEDED = "SIZE_LIMIT_EXCEEDED"
    INAPPLICABLE_MOVE = "INAPPLICABLE_MOVE"
    INVALID_CONFIG = "INVALID_CONFIG"

    # Algebra errors
    NOT_UNIT_VECTOR = "NOT_UNIT_VECTOR"
    NOT_ORTHOGONAL = "NOT_ORTHOGONAL"
    NO_EXACT_LIFT = "NO_EXACT_LIFT"
    NOT_LAGRANGIAN = "NOT_LAGRANGIAN"
    NOT_A_BASIS = "NOT_A_BASIS"
    DEGENERATE_DETERMINANT = "DEGENERATE_DETERMINANT"

    # Computation failures
    INCONSISTENT_CONSTRAINTS = "INCONSISTENT_CONSTRAINTS"
    SIGN_VERIFICATION_FAILED = "SIGN_VERIFICATION_FAILED"
    BOUNDARY_SQUARED_NONZERO = "BOUNDARY_SQUARED_NONZERO"
    DEGENERATE_CONFIGURATION = "DEGENERATE_CONFIGURATION"

    # System errors
    INTERNAL_ERROR = "INTERNAL_ERROR"


class PinFloerException(Exception):
    """Base exception for pinfloer"""

    def __init__(
        self,
        message: str,
        error_code: ErrorCode = ErrorCode.INTERNAL_ERROR,
        exit_code: int = EXIT_COMPUTATION_FAILURE,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.exit_code = exit_code
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Convert error to dictionary for logging and reports."""
        return {
            "message": self.message,
            "error_code": self.error_code.value,
            "exit_code": self.exit_code,
            "details": self.details,
        }


class InvalidInputException(PinFloerException):
    """Exception for invalid user input"""

    def __init__(self, message: str, error_code: ErrorCode = ErrorCode.INVALID_INPUT,
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message,
            error_code=error_code,
            exit_code=EXIT_INPUT_ERROR,
            details=details
        )


class MalformedFileException(InvalidInputException):
    """Exception for files that cannot be parsed"""

    def __init__(self, path: str, message: str, line: Optional[int] = None,
                 details: Optional[Dict[str, Any]] = None):
        location = f"{path}:{line}" if line is not None else path
        super().__init__(
            message=f"{location}: {message}",
            error_code=ErrorCode.MALFORMED_FILE,
            details=details or {"path": path, "line": line}
        )


class DimensionMismatchException(InvalidInputException):
    """Exception for operands of incompatible sizes"""

    def __init__(self, expected: Any, actual: Any, what: str = "dimension"):
        super().__init__(
            message=f"{what} mismatch: expected {expected}, got {actual}",
            error_code=ErrorCode.DIMENSION_MISMATCH,
            details={"expected": expected, "actual": actual}
        )


class InvalidGridException(InvalidInputException):
    """Exception for invalid grid diagrams"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, error_code=ErrorCode.INVALID_GRID, details=details)


class ConfigException(InvalidInputException):
    """Exception for invalid environment configuration"""

    def __init__(self, variable: str, reason: str):
        super().__init__(
            message=f"invalid {variable}: {reason}",
            error_code=ErrorCode.INVALID_CONFIG,
            details={"variable": variable}
        )


class GridSizeLimitException(InvalidInputException):
    """Exception for grids beyond the configured size caps"""

    def __init__(self, size: int, cap: int):
        super().__init__(
            message=f"grid size {size} exceeds the configured cap {cap}",
            error_code=ErrorCode.SIZE_LIMIT_EXCEEDED,
            details={"size": size, "cap": cap}
        )


class InapplicableMoveException(InvalidInputException):
    """Exception for grid moves whose preconditions fail"""

    def __init__(self, move: str, reason: str):
        super().__init__(
            message=f"move {move} is not applicable: {reason}",
            error_code=ErrorCode.INAPPLICABLE_MOVE,
            details={"move": move, "reason": reason}
        )


class CliffordException(PinFloerException):
    """Exception for Clifford algebra and Pin group failures"""

    def __init__(self, message: str, error_code: ErrorCode = ErrorCode.NOT_UNIT_VECTOR,
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, error_code=error_code, details=details)


class GradingException(PinFloerException):
    """Exception for symplectic and grading failures"""

    def __init__(self, message: str, error_code: ErrorCode = ErrorCode.NOT_LAGRANGIAN,
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, error_code=error_code, details=details)


class SignAssignmentException(PinFloerException):
    """Exception for an inconsistent sign constraint system"""

    def __init__(self, n: int, certificate: Dict[str, Any]):
        super().__init__(
            message=f"sign constraint system for n={n} is inconsistent",
            error_code=ErrorCode.INCONSISTENT_CONSTRAINTS,
            details={"n": n, "certificate": certificate}
        )


class SignVerificationException(PinFloerException):
    """Exception for sign assignments that fail verification"""

    def __init__(self, n: int, violation_count: int):
        super().__init__(
            message=f"sign assignment for n={n} violates {violation_count} constraint(s)",
            error_code=ErrorCode.SIGN_VERIFICATION_FAILED,
            details={"n": n, "violations": violation_count}
        )


class ChainComplexException(PinFloerException):
    """Exception for differentials that do not square to zero"""

    def __init__(self, message: str, witness: Dict[str, Any]):
        super().__init__(
            message=message,
            error_code=ErrorCode.BOUNDARY_SQUARED_NONZERO,
            details={"witness": witness}
        )


class TriangleEnumerationException(PinFloerException):
    """Exception for degenerate genus-one curve data"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message,
            error_code=ErrorCode.DEGENERATE_CONFIGURATION,
            details=details
        )


def create_error_report(error_code: ErrorCode, message: str,
                        details: Optional[Dict[str, Any]] = None,
                        run_id: Optional[str] = None) -> ErrorReport:
    """Create standardized error report"""
    return ErrorReport(
        error_code=error_code.value,
        message=message,
        details=details,
        run_id=run_id
    )


def handle_exception(exc: BaseException, run_id: Optional[str] = None) -> tuple:
    """
    Log an exception and map it to an exit status.

    Returns:
        tuple: (exit code, ErrorReport)
    """
    if isinstance(exc, PinFloerException):
        log = logger.warning if exc.exit_code == EXIT_INPUT_ERROR else logger.error
        log(
            f"pinfloer error: {exc.message}",
            extra={"error_code": exc.error_code.value, "details": exc.details}
        )
        return exc.exit_code, create_error_report(exc.error_code, exc.message, exc.details, run_id)

    logger.error(
        f"Unhandled exception: {type(exc).__name__}: {exc}",
        extra={"exception_type": type(exc).__name__},
        exc_info=True
    )
    report = create_error_report(ErrorCode.INTERNAL_ERROR, "An unexpected error occurred",
                                 {"exception_type": type(exc).__name__}, run_id)
    return EXIT_COMPUTATION_FAILURE, report
