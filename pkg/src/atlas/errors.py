"""Exception types shared across the package."""

from __future__ import annotations


class AtlasError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(AtlasError):
    """Malformed input text. Carries the source position when known."""

    def __init__(
        self,
        message: str,
        *,
        line: int | None = None,
        column: int | None = None,
        path: str | None = None,
    ) -> None:
        self.line = line
        self.column = column
        self.path = path
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class ValidationError(AtlasError):
    """A structural invariant does not hold (duplicate id, dangling reference, cycle)."""


class ContractError(AtlasError):
    """A caller violated an inter-module precondition."""


class NotFoundError(AtlasError):
    """Lookup of an unknown key."""


class InvalidArgumentError(AtlasError):
    """Argument outside the documented domain."""


class SnapshotError(AtlasError):
    """Snapshot file cannot be used (unsupported version or corrupt payload)."""
