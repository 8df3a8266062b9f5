"""Exception hierarchy shared across the engine."""

from __future__ import annotations


class GameError(Exception):
    """Base class for everything raised by the engine."""


class InvalidConfig(GameError):
    """Game configuration violates its invariants (n < 2, k < 1, ...)."""


class VertexOutOfRange(GameError):
    """A vertex index does not exist in this game."""


class IllegalMove(GameError):
    """A move that the rules reject.  ``reason`` is a stable slug."""

    reason = "illegal"

    def __init__(self, message: str, turn: int | None = None):
        super().__init__(message)
        self.turn = turn


class SelfLoopMove(IllegalMove):
    reason = "self loop"


class AlreadyAdjacent(IllegalMove):
    reason = "adjacent"


class SaturatedVertex(IllegalMove):
    reason = "saturated"


class WrongPlayer(IllegalMove):
    reason = "not your turn"


class MoveOutOfRange(IllegalMove):
    reason = "out of range"


class TranscriptError(GameError):
    """Malformed or illegal transcript stream.  ``turn`` points at the
    offending move when the failure happened during replay."""

    def __init__(self, message: str, turn: int | None = None):
        super().__init__(message)
        self.turn = turn


class StrategyError(GameError):
    """A strategy violated its own contract (illegal move, corrupt memory)."""


class PreconditionError(GameError):
    """An operation's stated precondition does not hold."""


class CheckFailure(GameError):
    """A game-law or strategy-invariant check failed during a game."""
