"""Shared helpers: scripted games, random graphs, independent oracles."""

from __future__ import annotations

import random

import pytest

from kregular.game import GameConfig, GameState, Move, apply_move, new_game


def play(state: GameState, *pairs: tuple[int, int]) -> GameState:
    """Apply moves for whichever player is due (scripted positions)."""
    for u, v in pairs:
        state = apply_move(state, Move(u, v, state.mover))
    return state


def fresh(n: int, k: int, *pairs, seed: int = 0, first: str = "A") -> GameState:
    return play(new_game(GameConfig(n=n, k=k, first_player=first, seed=seed)), *pairs)


def random_graph(rng: random.Random, n: int, p: float) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def random_game(rng: random.Random, n: int, k: int, max_moves: int | None = None) -> GameState:
    """Random legal play from the empty board."""
    state = new_game(GameConfig(n=n, k=k, seed=rng.randrange(2**32)))
    budget = max_moves if max_moves is not None else n * k
    from kregular.game import legal_moves

    for _ in range(budget):
        moves = legal_moves(state)
        if not moves:
            break
        u, v = moves[rng.randrange(len(moves))]
        state = apply_move(state, Move(u, v, state.mover))
    return state


def brute_legal_moves(state: GameState) -> list[tuple[int, int]]:
    """Definition-level legality: all pairs, filtered by the rule."""
    k = state.k
    out = []
    for u in range(state.n):
        for v in range(u + 1, state.n):
            if state.degree(u) <= k - 1 and state.degree(v) <= k - 1:
                if not state.adjacent(u, v):
                    out.append((u, v))
    return out


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
