from typing import Any, Dict, Optional


class GaugeKitError(Exception):
    """Base class for all toolkit errors; carries the CLI exit code."""

    exit_code = 1

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.detail: Dict[str, Any] = dict(detail or {})

    def __reduce__(self):
        # subclasses take different constructor arguments; rebuild from message and state
        return _rebuild_error, (type(self), str(self), self.__dict__)


class InputError(GaugeKitError):
    """Malformed input: schema violations, bad parameters, unknown catalog names."""

    exit_code = 3

    def __init__(self, message: str, field: Optional[str] = None,
                 detail: Optional[Dict[str, Any]] = None):
        if field:
            message = f"{field}: {message}"
        super().__init__(message, detail)
        self.field = field


class DimensionError(InputError):
    """Operands of different dimensions."""

    def __init__(self, expected: int, got: int, field: Optional[str] = None):
        super().__init__(f"dimension mismatch (expected {expected}, got {got})", field,
                         {'expected': expected, 'got': got})


class PreconditionError(InputError):
    """An operation's precondition does not hold for the given input."""


class BudgetError(GaugeKitError):
    """An enumeration or refinement budget would be exceeded."""

    exit_code = 4

    def __init__(self, budget: str, limit: int, requested: Any,
                 detail: Optional[Dict[str, Any]] = None):
        super().__init__(f"{budget} budget exhausted (limit {limit}, requested {requested})",
                         detail)
        self.budget = budget
        self.limit = limit
        self.requested = requested


def _rebuild_error(cls, message: str, state: Dict[str, Any]) -> GaugeKitError:
    error = Exception.__new__(cls)
    Exception.__init__(error, message)
    error.__dict__.update(state)
    return error
