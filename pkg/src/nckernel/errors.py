"""Exception types shared by every module.

The CLI maps :class:`ParseError` to exit status 2 and :class:`DomainError`
to exit status 1, so library code should raise one of these two (or a
subclass) for anything a caller could plausibly trigger.
"""

from __future__ import annotations


class NCKernelError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(NCKernelError, ValueError):
    """An argument is well-formed but outside the operation's domain."""


class ParseError(NCKernelError, ValueError):
    """Text input could not be parsed.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message: str, text: str = "", position: int = 0) -> None:
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


class InvariantError(NCKernelError, AssertionError):
    """An internal consistency check failed; this signals a bug."""
