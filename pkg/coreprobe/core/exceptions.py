"""
Custom exceptions for CoreProbe.
"""

from typing import Any


class CoreProbeError(Exception):
    """Base exception for all CoreProbe errors."""

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ConfigurationError(CoreProbeError):
    """Configuration-related errors."""
    pass


class ValidationError(CoreProbeError):
    """Input validation errors."""
    pass


class ParameterError(ValidationError):
    """Out-of-range algorithm or generator parameter."""

    def __init__(self, name: str, value: Any, reason: str):
        super().__init__(f"Invalid {name}={value!r}: {reason}", {"name": name, "value": value})
        self.name = name
        self.value = value


class GraphFormatError(ValidationError):
    """Malformed edge-list or binary CSR input."""

    def __init__(self, message: str, line_number: int | None = None, details: dict[str, Any] | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message, details)
        self.line_number = line_number


class CapacityError(ValidationError):
    """Node id above the configured maximum."""

    def __init__(self, node_id: int, max_node_id: int, line_number: int | None = None):
        where = f" (line {line_number})" if line_number is not None else ""
        super().__init__(
            f"Node id {node_id} exceeds maximum {max_node_id}{where}",
            {"node_id": node_id, "max_node_id": max_node_id, "line_number": line_number},
        )
        self.node_id = node_id
        self.max_node_id = max_node_id
        self.line_number = line_number


class NodeBoundsError(ValidationError, IndexError):
    """Degree or neighbor query outside the valid range."""

    def __init__(self, message: str, **details: Any):
        super().__init__(message, details)


class InvariantViolationError(CoreProbeError):
    """A checked structural invariant does not hold."""
    pass


class StorageError(CoreProbeError):
    """File read/write errors."""
    pass
