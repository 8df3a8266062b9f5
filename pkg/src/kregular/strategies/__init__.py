"""Strategy registry: engines and adversaries selectable by name."""

from __future__ import annotations

from typing import Optional, Protocol

from ..errors import InvalidConfig
from ..game import GameConfig, GameState, Move, Role


class Player(Protocol):
    """Per-game strategy instance driven by the arena loop."""

    name: str
    role: Role

    def move(self, state: GameState, last_opponent_move: Optional[Move]) -> Move:
        """Choose the next move; only called while legal moves exist."""
        ...

    def annotations(self) -> dict:
        """Verdict material to embed in the transcript (may be empty)."""
        ...


STRATEGY_NAMES = (
    "planar",
    "minor",
    "random",
    "greedy_nonplanar",
    "greedy_structure",
    "connector",
)


def derive_seed(seed: int, role: Role) -> int:
    """Stable per-seat RNG seed from the game seed."""
    mix = (seed * 0x9E3779B97F4A7C15 + (1 if role == "A" else 2)) % 2**64
    return mix


def make_player(
    name: str, role: Role, config: GameConfig, ell: Optional[int] = None
) -> Player:
    from . import adversaries, minor, planar

    if name == "planar":
        return planar.PlanarPlayer(role, config)
    if name == "minor":
        if ell is None:
            raise InvalidConfig("minor strategy needs its target clique order (ell)")
        return minor.MinorPlayer(role, config, ell)
    if name == "random":
        return adversaries.RandomPlayer(role, config)
    if name == "greedy_nonplanar":
        return adversaries.GreedyNonplanarPlayer(role, config)
    if name == "greedy_structure":
        return adversaries.GreedyStructurePlayer(role, config)
    if name == "connector":
        return adversaries.ConnectorPlayer(role, config)
    raise InvalidConfig(f"unknown strategy {name!r}; known: {', '.join(STRATEGY_NAMES)}")
