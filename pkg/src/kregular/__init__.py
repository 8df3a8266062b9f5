"""k-regular graph game: engine, strategies, and simulation arena."""

from .game import (
    ComponentView,
    GameConfig,
    GameState,
    Move,
    apply_move,
    components,
    deficit,
    is_over,
    legal_moves,
    new_game,
)
from .transcript import Transcript, decode_transcript, encode_transcript

__version__ = "0.1.0"

__all__ = [
    "ComponentView",
    "GameConfig",
    "GameState",
    "Move",
    "Transcript",
    "apply_move",
    "components",
    "decode_transcript",
    "deficit",
    "encode_transcript",
    "is_over",
    "legal_moves",
    "new_game",
    "__version__",
]
