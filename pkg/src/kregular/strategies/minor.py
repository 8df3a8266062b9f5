"""The clique-minor-forcing strategy for the 4-game.

Play proceeds in phases:

* Matching: claim edges between pairs of isolated vertices until the
  deficit mass delta (summed over components of deficit >= 5) reaches
  twice the planning threshold binom(ell,2) * 5^ceil(log2 ell); the
  factor 2 absorbs adversary interference during growth.
* Growth: repeatedly join the tracked big component to the
  largest-deficit fresh component of deficit >= 5.  Joining costs 2
  deficit and the adversary can remove at most 2 more per round, so
  each absorbed component (deficit >= 5) makes net progress.  When the
  fresh pool dries up the strategy lays new matching edges on unused
  isolated vertices.
* Split/Join: once the big component's deficit reaches the threshold,
  label a spanning tree with vertex deficits and split it into ell
  connected branch sets of deficit >= binom(ell,2); then join every
  pair of branch sets, most-endangered pair first.  Pairs already
  joined by adversary edges complete for free.  If adversary play
  drains a branch set dry before its pairs finish, the branch sets are
  re-planned from the (still large) component.
* Done: lexicographically least legal moves until the game ends; added
  edges never invalidate the certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ..errors import CheckFailure, InvalidConfig, PreconditionError, StrategyError
from ..game import GameConfig, GameState, Move, Role, components
from ..planarity import BranchDecomposition
from ..tracker import POOL_DEFICIT, ComponentTracker
from ..transcript import Transcript
from ..treesplit import LabeledTree, split_labeled_tree

PHASES = ("matching", "growth", "join", "done")


def planning_threshold(ell: int, max_degree: int = 4) -> int:
    """Big-component deficit needed before branch sets can be cut."""
    levels = math.ceil(math.log2(ell)) if ell > 1 else 0
    return math.comb(ell, 2) * (max_degree + 1) ** levels


@dataclass
class MinorMemory:
    """Phase state of the minor player."""

    target_ell: int
    tracker: ComponentTracker
    phase: str = "matching"
    matching_edges: list[tuple[int, int]] = field(default_factory=list)
    big_handle: Optional[int] = None  # any member vertex of the big component
    branch_sets: Optional[BranchDecomposition] = None
    pending_pairs: list[tuple[int, int]] = field(default_factory=list)
    round1_end: Optional[int] = None
    threshold: int = 0
    growth_turns: list[int] = field(default_factory=list)
    replans: int = 0
    plan_floor: int = 0  # raised when a split attempt fails low

    def __post_init__(self):
        if not self.threshold:
            self.threshold = planning_threshold(self.target_ell)


def new_memory(config: GameConfig, ell: int) -> MinorMemory:
    if ell < 2:
        raise PreconditionError("target clique order must be at least 2")
    return MinorMemory(target_ell=ell, tracker=ComponentTracker(config.n, config.k))


@dataclass(frozen=True)
class DeltaReport:
    """Round-1 accounting: delta mass and the move-type tallies."""

    delta: int
    m: int
    m1: int
    m2: int
    beta_floor: int = 4

    def inequality_holds(self) -> bool:
        # delta >= 6m - 6*m1/beta - 2*m2, compared in integers
        return self.beta_floor * self.delta >= (
            6 * self.beta_floor * self.m - 6 * self.m1 - 2 * self.beta_floor * self.m2
        )

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "m": self.m,
            "m1": self.m1,
            "m2": self.m2,
            "beta_floor": self.beta_floor,
        }


def delta_statistic(
    state: GameState,
    moves: Optional[list[Move]] = None,
    minor_role: Optional[Role] = None,
) -> DeltaReport:
    """Delta = sum of deficits over components of deficit >= 5.

    With the move list and the minor player's seat, also attributes
    moves: m is the minor player's move count, m1/m2 split the
    adversary's moves by the deficit class (<=4 / >=5) of the component
    (of ``state``) the edge ends up in.
    """
    comps = components(state)
    delta = sum(c.deficit for c in comps if c.deficit >= POOL_DEFICIT)
    m = m1 = m2 = 0
    if moves is not None and minor_role is not None:
        comp_of = {}
        low_deficit = {}
        for c in comps:
            for v in c.vertices:
                comp_of[v] = c.vertices[0]
            low_deficit[c.vertices[0]] = c.deficit < POOL_DEFICIT
        for mv in moves:
            if mv.player == minor_role:
                m += 1
            elif low_deficit[comp_of[mv.u]]:
                m1 += 1
            else:
                m2 += 1
    return DeltaReport(delta=delta, m=m, m1=m1, m2=m2)


def round1_accounting_check(
    transcript: Transcript,
    round1_end: int,
    minor_role: Optional[Role] = None,
) -> DeltaReport:
    """Verify the matching-round deficit accounting of a 4-game.

    Checks, at the round-1-end position: every component of deficit
    <= 4 satisfies m'_C >= 3*m_C - 2 (and m'_C >= 5 when m_C = 1), and
    the global bound delta >= 6m - 6*m1/4 - 2*m2.  Raises CheckFailure
    naming the offending component.
    """
    if minor_role is None:
        players = (transcript.annotations or {}).get("players", {})
        hits = [r for r, name in players.items() if str(name).startswith("minor")]
        if len(hits) != 1:
            raise CheckFailure("cannot infer the minor player's seat")
        minor_role = hits[0]
    state = transcript.prefix_state(round1_end)
    window = list(transcript.moves[:round1_end])
    report = delta_statistic(state, window, minor_role)

    comps = components(state)
    comp_of = {}
    for c in comps:
        for v in c.vertices:
            comp_of[v] = c
    m_c: dict[tuple[int, ...], int] = {}
    mp_c: dict[tuple[int, ...], int] = {}
    for mv in window:
        key = comp_of[mv.u].vertices
        if mv.player == minor_role:
            m_c[key] = m_c.get(key, 0) + 1
        else:
            mp_c[key] = mp_c.get(key, 0) + 1
    for c in comps:
        if c.deficit > 4:
            continue
        mc = m_c.get(c.vertices, 0)
        mpc = mp_c.get(c.vertices, 0)
        if mpc < 3 * mc - 2:
            raise CheckFailure(
                f"component {c.vertices[:6]} has m'={mpc} < 3*{mc}-2 at round-1 end"
            )
        if mc == 1 and mpc < 5:
            raise CheckFailure(
                f"component {c.vertices[:6]} killed a single matching edge with only {mpc} moves"
            )
    if not report.inequality_holds():
        raise CheckFailure(
            f"delta bound fails: delta={report.delta}, m={report.m}, "
            f"m1={report.m1}, m2={report.m2}"
        )
    return report


def _spanning_tree(tracker: ComponentTracker, members: list[int]) -> list[tuple[int, int]]:
    """Deterministic BFS spanning tree (sorted adjacency)."""
    root = min(members)
    seen = {root}
    queue = [root]
    edges = []
    while queue:
        v = queue.pop(0)
        for w in sorted(tracker.adj[v]):
            if w not in seen:
                seen.add(w)
                edges.append((min(v, w), max(v, w)))
                queue.append(w)
    return edges


def plan_branch_sets(state: GameState, memory: MinorMemory) -> BranchDecomposition:
    """Cut the big component into ell branch sets of deficit >= C(ell,2).

    Spans the component with a BFS tree, labels vertices with their
    deficits (b = 4, host degree bound 4) and splits.  Raises if the
    component's deficit is below the planning threshold.
    """
    memory.tracker.sync(state)
    t = memory.tracker
    if memory.big_handle is None:
        raise PreconditionError("no tracked big component")
    root = t.find(memory.big_handle)
    need = memory.threshold
    if t.comp_def[root] < need:
        raise PreconditionError(
            f"big component deficit {t.comp_def[root]} below threshold {need}"
        )
    members = sorted(t.members[root])
    tree = LabeledTree(
        nodes=tuple(members),
        edges=tuple(_spanning_tree(t, members)),
        labels={v: t.deficit(v) for v in members},
        b=4,
        max_degree=4,
    )
    ell = memory.target_ell
    parts = split_labeled_tree(tree, math.comb(ell, 2), ell)
    sets = tuple(frozenset(p) for p in parts[:ell])
    return BranchDecomposition(branch_sets=sets, target=ell)


def minor_move(state: GameState, memory: MinorMemory) -> Move:
    """Next move of the minor player, advancing the phase machine."""
    t = memory.tracker
    t.sync(state)
    pair = _phase_move(state, memory)
    if pair is None:
        pair = t.first_legal_move()
    if pair is None:
        raise StrategyError("minor strategy found no move in a live position")
    u, v = pair
    if u == v or state.adjacent(u, v) or state.degree(u) >= state.k or state.degree(v) >= state.k:
        raise StrategyError(f"minor strategy produced illegal move ({u}, {v})")
    return Move(u, v, state.mover)


def _phase_move(state: GameState, memory: MinorMemory) -> Optional[tuple[int, int]]:
    t = memory.tracker

    if memory.phase == "matching":
        if t.delta >= 2 * memory.threshold:
            memory.phase = "growth"
            memory.round1_end = state.turn
        else:
            iso = t.isolated(2)
            if len(iso) >= 2:
                memory.matching_edges.append((iso[0], iso[1]))
                return (iso[0], iso[1])
            memory.phase = "growth"  # out of fresh vertices; make do
            memory.round1_end = state.turn

    if memory.phase == "growth":
        big = None
        if memory.big_handle is not None:
            big = t.find(memory.big_handle)
        if big is None or t.comp_def[big] < POOL_DEFICIT:
            big = _largest_pool_root(t, exclude=None)
            if big is not None:
                memory.big_handle = t.comp_min[big]
        if big is not None and t.comp_def[big] >= max(memory.threshold, memory.plan_floor):
            try:
                bd = plan_branch_sets(state, memory)
            except PreconditionError:
                # a split level bottomed out on an unsplittable subtree;
                # grow some more before retrying
                memory.plan_floor = t.comp_def[big] + 25
                bd = None
            if bd is not None:
                memory.branch_sets = bd
                ell = memory.target_ell
                memory.pending_pairs = [
                    (i, j) for i in range(ell) for j in range(i + 1, ell)
                ]
                memory.phase = "join"
        if memory.phase == "growth":
            fresh = _largest_pool_root(t, exclude=big)
            if big is not None and fresh is not None:
                u = t.lowest_positive(big)
                v = t.lowest_positive(fresh)
                if u is not None and v is not None:
                    memory.growth_turns.append(state.turn)
                    return (min(u, v), max(u, v))
            iso = t.isolated(2)
            if len(iso) >= 2:
                return (iso[0], iso[1])  # restock the pool
            if big is not None:
                other = _largest_other_root(t, big)
                if other is not None:
                    u = t.lowest_positive(big)
                    v = t.lowest_positive(other)
                    if u is not None and v is not None:
                        return (min(u, v), max(u, v))
            return None  # fall back to the lexicographic move

    if memory.phase == "join":
        return _join_move(state, memory)

    return None  # done: lexicographic fallback


def _largest_pool_root(t: ComponentTracker, exclude: Optional[int]) -> Optional[int]:
    best = None
    best_key = None
    for r in t.pool:
        if r == exclude:
            continue
        key = (-t.comp_def[r], t.comp_min[r])
        if best_key is None or key < best_key:
            best, best_key = r, key
    return best


def _largest_other_root(t: ComponentTracker, exclude: int) -> Optional[int]:
    best = None
    best_key = None
    for r in t.ns_roots:
        if r == exclude or t.comp_def[r] <= 0:
            continue
        key = (-t.comp_def[r], t.comp_min[r])
        if best_key is None or key < best_key:
            best, best_key = r, key
    if best is not None:
        return best
    iso = t.isolated(1)
    return iso[0] if iso else None


def _join_move(state: GameState, memory: MinorMemory) -> Optional[tuple[int, int]]:
    t = memory.tracker
    sets = memory.branch_sets.branch_sets

    def set_deficit(i: int) -> int:
        return sum(t.deficit(v) for v in sets[i])

    def existing_edge(i: int, j: int) -> bool:
        small, other = (i, j) if len(sets[i]) <= len(sets[j]) else (j, i)
        target = sets[other]
        for v in sets[small]:
            for w in t.adj[v]:
                if w in target:
                    return True
        return False

    # adversary (or earlier) edges complete pairs for free
    memory.pending_pairs = [
        (i, j) for (i, j) in memory.pending_pairs if not existing_edge(i, j)
    ]
    if not memory.pending_pairs:
        memory.phase = "done"
        return None

    ranked = sorted(
        memory.pending_pairs,
        key=lambda ij: (min(set_deficit(ij[0]), set_deficit(ij[1])), ij),
    )
    i, j = ranked[0]
    u = _lowest_positive_of(state, sets[i])
    v = _lowest_positive_of(state, sets[j])
    if u is None or v is None:
        # a branch set ran dry: re-plan from the still-large component
        memory.replans += 1
        memory.branch_sets = None
        memory.pending_pairs = []
        memory.phase = "growth"
        memory.plan_floor = 0
        return _phase_move(state, memory)
    return (min(u, v), max(u, v))


def _lowest_positive_of(state: GameState, vertices) -> Optional[int]:
    k = state.k
    best = None
    for v in vertices:
        if state.degree(v) < k and (best is None or v < best):
            best = v
    return best


class MinorPlayer:
    name = "minor"

    def __init__(self, role: Role, config: GameConfig, ell: int):
        if config.k != 4:
            raise InvalidConfig("the minor strategy plays the 4-game only")
        self.role = role
        self.config = config
        self.ell = ell
        self.memory = new_memory(config, ell)

    @property
    def name_with_params(self) -> str:
        return f"minor(ell={self.ell})"

    def move(self, state: GameState, last_opponent_move: Optional[Move]) -> Move:
        return minor_move(state, self.memory)

    def annotations(self) -> dict:
        out: dict = {"round1_end": self.memory.round1_end, "ell": self.ell}
        if self.memory.branch_sets is not None and not self.memory.pending_pairs:
            out["minor_certificate"] = {
                "target": self.memory.branch_sets.target,
                "branch_sets": [
                    sorted(s) for s in self.memory.branch_sets.branch_sets
                ],
            }
        out["growth_turns"] = list(self.memory.growth_turns)
        out["replans"] = self.memory.replans
        return out
