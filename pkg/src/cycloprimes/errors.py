"""Exception types shared across the package."""


class CycloError(Exception):
    """Base class for all package errors."""


class DomainError(CycloError, ValueError):
    """An argument falls outside the domain of an operation."""


class ResourceError(CycloError, MemoryError):
    """A request would exceed a configured resource ceiling."""


class InvariantViolation(CycloError, RuntimeError):
    """An internal mathematical invariant failed. Always a bug or a finding."""


class StoreError(CycloError, OSError):
    """A result store is malformed or cannot be resumed."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
