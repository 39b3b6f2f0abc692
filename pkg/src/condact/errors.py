"""Exception types shared across the package."""

from __future__ import annotations


class CondactError(Exception):
    """Base class for all domain errors raised by this package."""


class SignatureMismatchError(CondactError):
    """An atom was used outside the signature it must belong to."""


class CapacityError(CondactError):
    """World enumeration was requested over more atoms than the cap allows."""


class ParseError(CondactError, ValueError):
    """Malformed textual input.

    ``position`` is a 0-based character offset for formula/conditional
    syntax errors, or a 1-based line number for file-level errors
    (``position_kind`` tells which).
    """

    def __init__(self, message: str, position: int | None = None, position_kind: str = "offset"):
        self.position = position
        self.position_kind = position_kind
        if position is not None:
            message = f"{message} ({position_kind} {position})"
        super().__init__(message)


class InconsistentBaseError(CondactError):
    """A belief base admits no tolerance partition.

    ``stuck`` holds the ids (or positional labels for ad-hoc conditionals)
    of the remainder that no greedy round could clear.
    """

    def __init__(self, stuck: tuple[str, ...]):
        self.stuck = tuple(stuck)
        super().__init__("inconsistent belief base; stuck remainder: " + " ".join(self.stuck))


class SessionFormatError(CondactError, ValueError):
    """Malformed session file content."""
