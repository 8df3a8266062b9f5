"""Opponent strategies used to exercise the engine strategies.

These are test instruments with deliberately simple, documented rules,
not attempts at optimal play:

* random    — uniform over the legal pairs (seeded, deterministic).
* greedy_nonplanar — merges the two largest-deficit components, falling
  back to cycle-creating internal edges; a stress opponent for the
  planar player.
* greedy_structure — builds K4s around single matching-style components
  using fresh isolated vertices, the worst case of the round-1
  accounting; a stress opponent for the minor player.
* connector — keeps the graph "isolated vertices plus one live
  component" and extends that component each turn, which forces a
  connected final graph in the 3-game.  Its repair rule for boards it
  did not fully control (merge the two lowest live components, spending
  deficit-1 endpoints first) is a reconstruction; the invariant only
  pins down the single-component case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from ..errors import GameError, InvalidConfig
from ..game import GameConfig, GameState, Move, Role, legal_moves
from ..tracker import ComponentTracker
from . import derive_seed

_REJECT_CAP = 256

ADVERSARY_NAMES = ("random", "greedy_nonplanar", "greedy_structure", "connector")


@dataclass(frozen=True)
class AdversaryConfig:
    """A named test opponent and its per-game seed."""

    name: str
    seed: int

    def __post_init__(self):
        if self.name not in ADVERSARY_NAMES:
            raise InvalidConfig(
                f"unknown adversary {self.name!r}; known: {', '.join(ADVERSARY_NAMES)}"
            )
        if not 0 <= self.seed < 2**64:
            raise InvalidConfig("adversary seed must fit in 64 unsigned bits")


def random_move(state: GameState, rng: random.Random) -> Move:
    """Uniform draw from the legal pairs of ``state``.

    Rejection-samples vertex pairs (uniform over ordered legal pairs,
    hence uniform over pairs); after a run of bad luck it falls back to
    explicit enumeration with the same generator, so the result is
    deterministic in (state, rng state).
    """
    n = state.n
    k = state.k
    for _ in range(_REJECT_CAP):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        if state.degree(u) >= k or state.degree(v) >= k:
            continue
        if state.adjacent(u, v):
            continue
        return Move(u, v, state.mover)
    moves = legal_moves(state)
    if not moves:
        raise GameError("no legal move")
    u, v = moves[rng.randrange(len(moves))]
    return Move(u, v, state.mover)


class _TrackedPlayer:
    """Shared plumbing: per-game tracker kept in sync with the state."""

    name = "base"

    def __init__(self, role: Role, config: GameConfig):
        self.role = role
        self.config = config
        self.adversary = AdversaryConfig(self.name, derive_seed(config.seed, role))
        self.tracker = ComponentTracker(config.n, config.k)

    def annotations(self) -> dict:
        return {}

    def move(self, state: GameState, last_opponent_move: Optional[Move]) -> Move:
        self.tracker.sync(state)
        pair = self.choose(state)
        if pair is None:
            raise GameError("no legal move")
        u, v = pair
        return Move(u, v, state.mover)

    def choose(self, state: GameState) -> Optional[tuple[int, int]]:
        raise NotImplementedError


class RandomPlayer(_TrackedPlayer):
    name = "random"

    def __init__(self, role: Role, config: GameConfig):
        super().__init__(role, config)
        self.rng = random.Random(self.adversary.seed)

    def move(self, state: GameState, last_opponent_move: Optional[Move]) -> Move:
        # identical draws to random_move(state, rng), with the tracker
        # answering degree/adjacency and the enumeration fallback walking
        # the alive list (both in the same lexicographic order)
        t = self.tracker
        t.sync(state)
        rng = self.rng
        n, k = state.n, state.k
        for _ in range(_REJECT_CAP):
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u == v:
                continue
            if t.deg[u] >= k or t.deg[v] >= k:
                continue
            if v in t.adj[u]:
                continue
            return Move(u, v, state.mover)
        moves = []
        alive = list(t.alive())
        for i, u in enumerate(alive):
            taken = t.adj[u]
            for v in alive[i + 1 :]:
                if v not in taken:
                    moves.append((u, v))
        if not moves:
            raise GameError("no legal move")
        u, v = moves[rng.randrange(len(moves))]
        return Move(u, v, state.mover)


def greedy_nonplanar_move(state: GameState) -> Move:
    """Pure form of the greedy nonplanar spoiler (rebuilds its tracker)."""
    t = ComponentTracker(state.n, state.k)
    t.sync(state)
    pair = _greedy_nonplanar_choice(t)
    if pair is None:
        raise GameError("no legal move")
    return Move(pair[0], pair[1], state.mover)


def _greedy_nonplanar_choice(t: ComponentTracker) -> Optional[tuple[int, int]]:
    # merge the two largest-deficit components; ties to smallest member.
    # Isolated vertices are singleton components of deficit k; two lowest
    # representatives suffice for the ranking.
    cands: list[tuple[int, int, int]] = []
    for r in t.ns_roots:
        if t.comp_def[r] > 0:
            cands.append((-t.comp_def[r], t.comp_min[r], r))
    for v in t.isolated(2):
        cands.append((-t.k, v, v))
    cands.sort()
    if len(cands) >= 2:
        u = t.lowest_positive(cands[0][2])
        v = t.lowest_positive(cands[1][2])
        if u is not None and v is not None:
            return (min(u, v), max(u, v))
    # single live component: add an internal (cycle-making) edge
    return t.first_legal_move()


class GreedyNonplanarPlayer(_TrackedPlayer):
    name = "greedy_nonplanar"

    def choose(self, state: GameState) -> Optional[tuple[int, int]]:
        return _greedy_nonplanar_choice(self.tracker)


def greedy_structure_move(state: GameState) -> Move:
    """Pure form of the K4-completing spoiler."""
    t = ComponentTracker(state.n, state.k)
    t.sync(state)
    pair = _greedy_structure_choice(t)
    if pair is None:
        raise GameError("no legal move")
    return Move(pair[0], pair[1], state.mover)


def _greedy_structure_choice(t: ComponentTracker) -> Optional[tuple[int, int]]:
    # grow the lex-least small component toward a K4: first close internal
    # pairs, then attach the lowest isolated vertex; never merge two
    # nonsingleton components (that would leave the K4 worst case)
    k = t.k
    cands = [r for r in t.ns_roots if 2 <= t.size[r] <= 4 and t.comp_def[r] > 0]
    cands.sort(key=lambda r: t.comp_min[r])
    for root in cands:
        mem = sorted(t.members[root])
        live = [x for x in mem if t.deg[x] < k]
        internal = None
        for i, x in enumerate(live):
            for y in live[i + 1 :]:
                if y not in t.adj[x]:
                    internal = (x, y)
                    break
            if internal:
                break
        if t.size[root] == 4:
            if internal:
                return internal
            continue  # this K4 is done; move on
        if internal:
            return internal
        iso = t.isolated(1)
        if iso and live:
            a, b = live[0], iso[0]
            return (min(a, b), max(a, b))
    return t.first_legal_move()


class GreedyStructurePlayer(_TrackedPlayer):
    name = "greedy_structure"

    def choose(self, state: GameState) -> Optional[tuple[int, int]]:
        return _greedy_structure_choice(self.tracker)


def connector_move(state: GameState) -> Move:
    """Pure form of the connectivity-forcing strategy."""
    t = ComponentTracker(state.n, state.k)
    t.sync(state)
    pair = _connector_choice(t)
    if pair is None:
        raise GameError("no legal move")
    return Move(pair[0], pair[1], state.mover)


def _connector_choice(t: ComponentTracker) -> Optional[tuple[int, int]]:
    ns = [r for r in t.nonsingleton_roots() if t.comp_def[r] > 0]
    iso = t.isolated(2)
    if len(ns) >= 2:
        # opponent split attention: merge the two lowest live components,
        # spending deficit-1 vertices so deficit-2 witnesses survive
        ends = []
        for root in ns[:2]:
            x = t.lowest_with_deficit(root, 1)
            if x is None:
                x = t.lowest_positive(root)
            ends.append(x)
        if ends[0] is not None and ends[1] is not None:
            return (min(ends), max(ends))
    if len(ns) >= 1 and iso:
        # extend the single live component to an isolated vertex; the new
        # endpoint arrives with deficit k-1, renewing the invariant
        root = ns[0]
        x = t.lowest_with_deficit(root, 2)
        if x is None:
            x = t.lowest_positive(root)
        if x is not None:
            return (min(x, iso[0]), max(x, iso[0]))
    if not ns and len(iso) >= 2:
        return (iso[0], iso[1])
    return t.first_legal_move()


class ConnectorPlayer(_TrackedPlayer):
    name = "connector"

    def choose(self, state: GameState) -> Optional[tuple[int, int]]:
        return _connector_choice(self.tracker)
