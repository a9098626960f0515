"""Exception types shared across the package.

``UserError`` subclasses map to CLI exit code 1 (bad input, bad config,
malformed files); everything else that escapes is an internal error
(exit code 2).
"""

from __future__ import annotations


class MaskdialError(Exception):
    """Base class for package errors."""


class UserError(MaskdialError):
    """Errors caused by user input (config, flags, file paths)."""


class ConfigError(UserError):
    """Invalid configuration value or unknown configuration key."""


class FormatError(UserError):
    """Malformed corpus / candidate / KB file."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif path is not None:
            where += " "
        super().__init__(where + message)
        self.path = path
        self.line = line


class CheckpointError(UserError):
    """Unreadable, corrupt, or unsupported checkpoint file."""


class CompatibilityError(UserError):
    """Checkpoint and requested evaluation settings do not match."""


class GenerationError(MaskdialError):
    """A goal references values absent from the knowledge base."""


class ContractError(MaskdialError):
    """An internal contract was violated (unreachable state, count mismatch)."""


class DataConsistencyError(MaskdialError):
    """Corpus contents disagree with the candidate set or vocabulary."""


class NumericError(MaskdialError):
    """Non-finite values encountered where finite ones are required."""
