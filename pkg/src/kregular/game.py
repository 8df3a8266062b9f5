"""Rules of the k-regular graph game.

Two players alternately add edges to an initially empty graph on n
vertices.  An edge {u, v} is legal while u and v are distinct, not yet
adjacent, and both have degree at most k-1.  The game ends when no such
pair remains; at that point the positive-deficit vertices are pairwise
adjacent, so there are at most k of them.

States are values: ``apply_move`` returns a new state and never mutates
the old one.  Internally consecutive states share an append-only edge
log, so the common play-one-game-forward pattern costs O(1) per move;
branching from an older state forks the log.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .errors import (
    AlreadyAdjacent,
    InvalidConfig,
    MoveOutOfRange,
    SaturatedVertex,
    SelfLoopMove,
    VertexOutOfRange,
    WrongPlayer,
)

Role = Literal["A", "B"]

ROLES: tuple[Role, Role] = ("A", "B")


def other_role(role: Role) -> Role:
    return "B" if role == "A" else "A"


@dataclass(frozen=True)
class GameConfig:
    """Immutable parameters of one game."""

    n: int
    k: int
    first_player: Role = "A"
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidConfig(f"need at least 2 vertices, got n={self.n}")
        if not isinstance(self.k, int) or self.k < 1:
            raise InvalidConfig(f"degree cap must be >= 1, got k={self.k}")
        if self.first_player not in ROLES:
            raise InvalidConfig(f"unknown first player {self.first_player!r}")
        if not 0 <= self.seed < 2**64:
            raise InvalidConfig("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class Move:
    """One edge addition.  Endpoints are stored canonically (u < v)."""

    u: int
    v: int
    player: Role

    def __post_init__(self):
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)


class _Core:
    """Append-only edge log shared by the states of one line of play.

    ``log[i]`` is the canonical pair played at turn i.  ``nbr[v]`` holds
    (neighbor, turn_index) records; a state at turn t sees exactly the
    records with index < t.
    """

    __slots__ = ("config", "log", "nbr")

    def __init__(self, config: GameConfig):
        self.config = config
        self.log: list[tuple[int, int]] = []
        self.nbr: list[list[tuple[int, int]]] = [[] for _ in range(config.n)]

    def append(self, u: int, v: int) -> None:
        idx = len(self.log)
        self.log.append((u, v))
        self.nbr[u].append((v, idx))
        self.nbr[v].append((u, idx))

    def fork(self, upto: int) -> "_Core":
        clone = _Core(self.config)
        for u, v in self.log[:upto]:
            clone.append(u, v)
        return clone


@dataclass(frozen=True)
class ComponentView:
    """One connected component with its deficit, edge count and bridges."""

    vertices: tuple[int, ...]
    deficit: int
    edge_count: int
    bridges: tuple[tuple[int, int], ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


class GameState:
    """Snapshot of a game after ``turn`` moves."""

    __slots__ = ("_core", "turn", "_posdef")

    def __init__(self, core: _Core, turn: int, posdef: int):
        self._core = core
        self.turn = turn
        self._posdef = posdef  # number of vertices with positive deficit

    # -- basic views ---------------------------------------------------

    @property
    def config(self) -> GameConfig:
        return self._core.config

    @property
    def n(self) -> int:
        return self._core.config.n

    @property
    def k(self) -> int:
        return self._core.config.k

    @property
    def mover(self) -> Role:
        first = self._core.config.first_player
        return first if self.turn % 2 == 0 else other_role(first)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(self._core.log[: self.turn])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(self.degree(v) for v in range(self.n))

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} not in range(0, {self.n})")
        t = self.turn
        d = 0
        for _, idx in self._core.nbr[v]:
            if idx < t:
                d += 1
        return d

    def adjacent(self, u: int, v: int) -> bool:
        t = self.turn
        for w, idx in self._core.nbr[u]:
            if w == v and idx < t:
                return True
        return False

    def neighbors(self, v: int) -> list[int]:
        t = self.turn
        return sorted(w for w, idx in self._core.nbr[v] if idx < t)

    def positive_deficit_vertices(self) -> list[int]:
        k = self.k
        return [v for v in range(self.n) if self.degree(v) < k]

    def rewind(self, steps: int = 1) -> "GameState":
        """State as of ``steps`` moves ago (shares the log)."""
        if steps < 0 or steps > self.turn:
            raise ValueError(f"cannot rewind {steps} from turn {self.turn}")
        target = self.turn - steps
        posdef = self._posdef
        k = self.k
        counted: set[int] = set()
        for u, v in self._core.log[target : self.turn]:
            # undoing a move resurrects endpoints that were saturated after it
            for x in (u, v):
                if x in counted:
                    continue
                then = sum(1 for _, idx in self._core.nbr[x] if idx < target)
                now = sum(1 for _, idx in self._core.nbr[x] if idx < self.turn)
                if now >= k and then < k:
                    posdef += 1
                    counted.add(x)
        return GameState(self._core, target, posdef)


def _count_posdef(core: _Core, turn: int) -> int:
    k = core.config.k
    n = core.config.n
    count = 0
    for v in range(n):
        if sum(1 for _, idx in core.nbr[v] if idx < turn) < k:
            count += 1
    return count


def new_game(config: GameConfig) -> GameState:
    """Fresh state: no edges, all deficits k, first player to move."""
    return GameState(_Core(config), 0, config.n)


def deficit(state: GameState, v: int) -> int:
    """k minus current degree of v; nonnegative by the degree cap."""
    return state.k - state.degree(v)


def legal_moves(state: GameState) -> list[tuple[int, int]]:
    """All playable pairs in lexicographic order.

    A pair qualifies when both endpoints have positive deficit and the
    edge is not already present.
    """
    k = state.k
    pos = state.positive_deficit_vertices()
    out = []
    for i, u in enumerate(pos):
        taken = set(state.neighbors(u))
        for v in pos[i + 1 :]:
            if v not in taken:
                out.append((u, v))
    return out


def first_legal_move(state: GameState) -> Optional[tuple[int, int]]:
    """Lexicographically least legal pair, or None if the game is over."""
    pos = state.positive_deficit_vertices()
    for i, u in enumerate(pos):
        taken = set(state.neighbors(u))
        for v in pos[i + 1 :]:
            if v not in taken:
                return (u, v)
    return None


def apply_move(state: GameState, move: Move) -> GameState:
    """Play one move, returning the successor state.

    Rejections are distinguished: wrong player, out-of-range endpoint,
    self loop, already-adjacent pair, saturated endpoint.
    """
    u, v, player = move.u, move.v, move.player
    if player != state.mover:
        raise WrongPlayer(
            f"turn {state.turn} belongs to {state.mover}, not {player}",
            turn=state.turn,
        )
    if u == v:
        raise SelfLoopMove(f"self loop at vertex {u}", turn=state.turn)
    if not (0 <= u < state.n and 0 <= v < state.n):
        raise MoveOutOfRange(f"({u}, {v}) outside range(0, {state.n})", turn=state.turn)
    if state.adjacent(u, v):
        raise AlreadyAdjacent(f"{u} and {v} are already adjacent", turn=state.turn)
    k = state.k
    du, dv = state.degree(u), state.degree(v)
    if du >= k or dv >= k:
        sat = u if du >= k else v
        raise SaturatedVertex(f"vertex {sat} already has degree {k}", turn=state.turn)

    core = state._core
    if len(core.log) != state.turn:
        core = core.fork(state.turn)
    core.append(u, v)
    posdef = state._posdef
    if du == k - 1:
        posdef -= 1
    if dv == k - 1:
        posdef -= 1
    return GameState(core, state.turn + 1, posdef)


def is_over(state: GameState) -> bool:
    """True iff no legal pair remains.

    More than k positive-deficit vertices cannot be pairwise adjacent
    (each would need degree >= k), so the check is O(1) plus at most
    C(k, 2) adjacency probes.
    """
    p = state._posdef
    if p <= 1:
        return True
    if p > state.k:
        return False
    pos = state.positive_deficit_vertices()
    for i, u in enumerate(pos):
        for v in pos[i + 1 :]:
            if not state.adjacent(u, v):
                return False
    return True


def components(state: GameState) -> list[ComponentView]:
    """Connected components with deficits, edge counts and bridges.

    Deterministic: components ordered by smallest member, vertices
    sorted, bridges canonical and sorted.  Recomputed per call; callers
    on hot paths keep incremental trackers instead.
    """
    n = state.n
    k = state.k
    seen = [False] * n
    views = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        members = []
        while stack:
            x = stack.pop()
            members.append(x)
            for y in state.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        members.sort()
        deg_sum = sum(state.degree(x) for x in members)
        views.append(
            ComponentView(
                vertices=tuple(members),
                deficit=k * len(members) - deg_sum,
                edge_count=deg_sum // 2,
                bridges=tuple(sorted(_bridges(state, members))),
            )
        )
    return views


def _bridges(state: GameState, members: list[int]) -> list[tuple[int, int]]:
    """Bridges of one component by an iterative DFS lowpoint sweep."""
    tin: dict[int, int] = {}
    low: dict[int, int] = {}
    out: list[tuple[int, int]] = []
    root = members[0]
    # (vertex, parent, iterator over neighbors); simple graph, so every
    # occurrence of the parent in the adjacency is the one tree edge
    stack = [(root, -1, iter(state.neighbors(root)))]
    tin[root] = low[root] = 0
    timer = 1
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == parent:
                continue
            if w in tin:
                low[v] = min(low[v], tin[w])
            else:
                tin[w] = low[w] = timer
                timer += 1
                stack.append((w, v, iter(state.neighbors(w))))
                advanced = True
                break
        if not advanced:
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] > tin[parent]:
                    out.append((min(parent, v), max(parent, v)))
    return out
