"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GameError(Exception):
    """Base class for all errors raised by extgames."""


class ValidationError(GameError):
    """A game tree violates a structural invariant.

    ``node`` is the label path of the first offending node in canonical
    preorder, so error messages can point at it.
    """

    def __init__(self, node: tuple[str, ...], reason: str):
        self.node = node
        self.reason = reason
        where = "/".join(node) if node else "<root>"
        super().__init__(f"{type(self).__name__} at {where}: {reason}")


class DuplicateLabel(ValidationError):
    pass


class EmptyChildren(ValidationError):
    pass


class BadPayoffArity(ValidationError):
    pass


class BadTurnIndex(ValidationError):
    pass


class BadLabel(ValidationError):
    pass


class MalformedNode(ValidationError):
    pass


class NoSuchNode(GameError):
    pass


class InvalidStrategy(GameError):
    pass


class OracleCapExceeded(GameError):
    """A brute-force check would need more work than the configured cap."""

    def __init__(self, needed: int, cap: int, what: str = "strategies"):
        self.needed = needed
        self.cap = cap
        super().__init__(f"oracle cap exceeded: {needed} {what} > cap {cap}")


class NotTwoPlayer(GameError):
    pass


class NotZeroSumShape(GameError):
    pass


class BadParameters(GameError):
    pass


class ParseError(GameError):
    """Malformed game or strategy text.

    ``line``/``column`` are 1-based when the position is known; schema errors
    inside well-formed JSON carry a ``location`` path instead.
    """

    def __init__(self, reason: str, line: int | None = None, column: int | None = None,
                 location: str | None = None):
        self.reason = reason
        self.line = line
        self.column = column
        self.location = location
        if line is not None:
            msg = f"line {line}, column {column}: {reason}"
        elif location is not None:
            msg = f"at {location}: {reason}"
        else:
            msg = reason
        super().__init__(msg)
