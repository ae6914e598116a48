"""Unified error handling for the step-function solvers."""

from typing import Any, Dict, Optional, Tuple

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2


class StepFitError(Exception):
    """Base exception for all solver errors."""

    def __init__(
        self,
        message: str,
        code: str = "INTERNAL_ERROR",
        exit_code: int = EXIT_FAILURE,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.message = message
        self.code = code
        self.exit_code = exit_code
        self.details = details or {}


class ValidationError(StepFitError):
    """Raised when an instance, tolerance or argument is invalid."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message,
            code="VALIDATION_ERROR",
            exit_code=EXIT_INPUT_ERROR,
            details=details,
        )


class InputFormatError(StepFitError):
    """Raised when an instance file or a number literal cannot be parsed."""

    def __init__(
        self,
        message: str,
        line_number: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        details = dict(details or {})
        if line_number is not None:
            details["line"] = line_number
            message = f"line {line_number}: {message}"
        super().__init__(
            message=message,
            code="PARSE_ERROR",
            exit_code=EXIT_INPUT_ERROR,
            details=details,
        )
        self.line_number = line_number


class InfeasibleToleranceError(StepFitError):
    """Raised when a step function is requested below the optimal tolerance."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message,
            code="INFEASIBLE_TOLERANCE",
            exit_code=EXIT_INPUT_ERROR,
            details=details,
        )


class SolverError(StepFitError):
    """Raised when a solver invariant is violated."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(
            message=message,
            code="SOLVER_ERROR",
            exit_code=EXIT_FAILURE,
            details=details,
        )


def to_exit_code(error: Exception) -> Tuple[int, Dict[str, Any]]:
    """Convert any exception to a process exit code and an error payload.

    Args:
        error: Exception to convert

    Returns:
        Tuple of (exit_code, payload) where payload is JSON serialisable
    """
    if isinstance(error, StepFitError):
        return error.exit_code, {
            "code": error.code,
            "message": error.message,
            "details": error.details,
        }

    # Generic error handling
    return EXIT_FAILURE, {
        "code": "INTERNAL_ERROR",
        "message": "An unexpected error occurred",
        "details": {"type": type(error).__name__, "error": str(error)},
    }
