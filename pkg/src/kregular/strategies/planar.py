"""The planarity-preserving strategy for the 3-game.

The strategy keeps condition T alive: after each of its moves every
component is of Type 1, 2, 3a or 3b, at most one is of Type 3, and each
is drawable with its positive-deficit vertices on the unbounded face.
The response to an opponent move dispatches on what the move touched
(pre-move classifications come from the strategy's own incremental
classifier, which is synced to the position after its previous move):

1. edge inside a Type 1/2, or joining two Type 1s: already fine, free move
2. Type 2 joined to Type 1:  close from the untouched side into the
   Type 1 (free move if the Type 1's deficit was spent)
3. Type 2 joined to Type 2:  touched side of one to untouched side of
   the other, leaving a Type 2
4. Type 3 joined to Type 2:  partner part into the touched side,
   restoring the same Type 3 subtype
5. Type 3 joined to Type 1:  partner part into the Type 1 (free move if
   its deficit was spent); leaves Type 3a or Type 2
6. edge inside the Type 3:   subtype a is already Type 1; subtype b is
   repaired with a second edge between (C0,C2) or (C1,C3)
7. free moves, in order: join two positive-deficit Type 1s; reduce the
   Type 3; join a Type 1-or-2 into a Type 2; lexicographic fallback

The "partner" of an outer part is its adjacent middle part and vice
versa; the response always enters the same side the opponent touched.
Endpoints are the lowest-indexed positive-deficit vertices of their
parts, making play reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..classify import (
    ConditionTReport,
    IncrementalClassifier,
    TypeClassification,
    TypeKind,
    check_condition_T,
)
from ..errors import InvalidConfig, StrategyError
from ..game import GameConfig, GameState, Move, Role, first_legal_move


@dataclass
class PlanarMemory:
    """The strategy's view of the board between its own moves.

    ``classifier`` is synced to the position right after the strategy's
    previous move (or the empty board); its cache is the tracked_types
    map.  ``type3_handle`` is a member vertex of the tracked Type 3
    component, if any.
    """

    classifier: IncrementalClassifier
    synced_turn: int = 0
    type3_handle: Optional[int] = None

    @property
    def tracked_types(self) -> dict[int, TypeClassification]:
        return {
            root: cls for root, (cls, _) in self.classifier._cache.items()
            if self.classifier.parent[root] == root
        }


def new_memory(config: GameConfig) -> PlanarMemory:
    return PlanarMemory(IncrementalClassifier(config.n, config.k, with_apex=False))


def _lowest_positive(state: GameState, vertices, clf=None) -> Optional[int]:
    # callers pass part/component vertex tuples, which are sorted.  The
    # classifier's degree array may lag the state by one move, but
    # degrees only grow, so it prefilters a superset of the live
    # vertices; each candidate is confirmed against the state.
    k = state.k
    if clf is not None and len(vertices) > 16:
        arr = np.asarray(vertices, np.int64)
        for v in arr[clf._deg_arr[arr] < k].tolist():
            if state.degree(v) < k:
                return v
        return None
    for v in vertices:
        if state.degree(v) < k:
            return v
    return None


_PARTNER_3A = {0: 1, 1: 0, 2: 1}
_PARTNER_3B = {0: 1, 1: 0, 2: 3, 3: 2}


def _partner_part(cls: TypeClassification, touched_idx: int) -> int:
    table = _PARTNER_3A if cls.kind is TypeKind.TYPE3A else _PARTNER_3B
    return table[touched_idx]


def planar_respond(
    state: GameState, memory: PlanarMemory, last_adversary_move: Optional[Move]
) -> Move:
    """Choose the condition-T-preserving reply to the last opponent move."""
    clf = memory.classifier
    if memory.synced_turn != state.turn - (0 if last_adversary_move is None else 1):
        raise StrategyError(
            f"memory synced to turn {memory.synced_turn}, cannot serve turn {state.turn}"
        )

    pair: Optional[tuple[int, int]] = None
    if last_adversary_move is not None:
        pair = _dispatch(state, clf, last_adversary_move)
        clf.add_edge(last_adversary_move.u, last_adversary_move.v)
        memory.synced_turn += 1
    if pair is None:
        pair = _free_move(state, clf)
    if pair is None:
        raise StrategyError("planar strategy found no move in a live position")

    u, v = pair
    k = state.k
    if (
        u == v
        or not (0 <= u < state.n and 0 <= v < state.n)
        or state.adjacent(u, v)
        or state.degree(u) >= k
        or state.degree(v) >= k
    ):
        raise StrategyError(f"planar strategy produced illegal move ({u}, {v})")
    clf.add_edge(u, v)
    memory.synced_turn += 1
    r3 = clf.type3_root()
    memory.type3_handle = None if r3 is None else clf.comp_vertices(r3)[0]
    return Move(u, v, state.mover)


def _dispatch(
    state: GameState, clf: IncrementalClassifier, adv: Move
) -> Optional[tuple[int, int]]:
    """Concrete response pair, or None when the move leaves a free move."""
    u, v = adv.u, adv.v
    ru, rv = clf.find(u), clf.find(v)

    if ru == rv:
        cls = clf.classify_root(ru)[0]
        if cls.kind in (TypeKind.TYPE1, TypeKind.TYPE2):
            return None  # case 1: deficit dropped to <= 2, already Type 1
        if cls.kind is TypeKind.TYPE3A:
            return None  # case 6, small subtype: now Type 1
        if cls.kind is TypeKind.TYPE3B:
            return _case6_big(state, cls, clf)
        raise StrategyError("condition T did not hold before the opponent's move")

    cu = clf.classify_root(ru)[0]
    cv = clf.classify_root(rv)[0]
    kinds = {cu.kind, cv.kind}
    if TypeKind.UNCLASSIFIED in kinds:
        raise StrategyError("condition T did not hold before the opponent's move")

    if kinds == {TypeKind.TYPE1}:
        return None  # case 1: two Type 1s make a Type 1 or Type 2
    if kinds == {TypeKind.TYPE2, TypeKind.TYPE1}:
        if cu.kind is TypeKind.TYPE2:
            return _case2(state, cu, u, cv, v, clf)
        return _case2(state, cv, v, cu, u, clf)
    if kinds == {TypeKind.TYPE2}:
        return _case3(state, cu, u, cv, v, clf)
    if cu.kind.is_type3 and cv.kind.is_type3:
        raise StrategyError("two Type 3 components: condition T did not hold")
    if cu.kind.is_type3 or cv.kind.is_type3:
        if cu.kind.is_type3:
            c3, p3, other, po = cu, u, cv, v
        else:
            c3, p3, other, po = cv, v, cu, u
        if other.kind is TypeKind.TYPE2:
            return _case4(state, c3, p3, other, po, clf)
        return _case5(state, c3, p3, other, po, clf)
    raise StrategyError(f"unhandled component kinds {kinds}")


def _case2(
    state: GameState,
    c2: TypeClassification,
    touched: int,
    c1: TypeClassification,
    other_end: int,
    clf: IncrementalClassifier = None,
) -> Optional[tuple[int, int]]:
    """Type 2 joined to Type 1: untouched side into the Type 1."""
    target = _lowest_positive(state, c1.parts[0].vertices, clf)
    if target is None:
        return None  # the Type 1's deficit is spent; result already Type 1
    touched_idx = c2.part_index_of(touched)
    untouched = c2.parts[1 - touched_idx]
    source = _lowest_positive(state, untouched.vertices, clf)
    if source is None:
        raise StrategyError("Type 2 side lost its deficit unexpectedly")
    return (min(source, target), max(source, target))


def _case3(
    state: GameState,
    ca: TypeClassification,
    pa: int,
    cb: TypeClassification,
    pb: int,
    clf: IncrementalClassifier = None,
) -> tuple[int, int]:
    """Type 2 joined to Type 2: touched side of one to untouched of the other."""
    touched_a = ca.part_index_of(pa)
    source = _lowest_positive(state, ca.parts[touched_a].vertices, clf)
    untouched_b = 1 - cb.part_index_of(pb)
    target = _lowest_positive(state, cb.parts[untouched_b].vertices, clf)
    if source is None or target is None:
        raise StrategyError("Type 2 sides lost their deficits unexpectedly")
    return (min(source, target), max(source, target))


def _case4(
    state: GameState,
    c3: TypeClassification,
    p3: int,
    c2: TypeClassification,
    p2: int,
    clf: IncrementalClassifier = None,
) -> tuple[int, int]:
    """Type 3 joined to Type 2: partner part into the touched side."""
    touched = c3.part_index_of(p3)
    partner = c3.parts[_partner_part(c3, touched)]
    source = _lowest_positive(state, partner.vertices, clf)
    side = c2.parts[c2.part_index_of(p2)]
    target = _lowest_positive(state, side.vertices, clf)
    if source is None or target is None:
        raise StrategyError("Type 3 repair endpoints missing")
    return (min(source, target), max(source, target))


def _case5(
    state: GameState,
    c3: TypeClassification,
    p3: int,
    c1: TypeClassification,
    p1: int,
    clf: IncrementalClassifier = None,
) -> Optional[tuple[int, int]]:
    """Type 3 joined to Type 1: partner part into the Type 1."""
    target = _lowest_positive(state, c1.parts[0].vertices, clf)
    if target is None:
        return None  # deficit spent: the merge is already Type 2 or 3a
    touched = c3.part_index_of(p3)
    partner = c3.parts[_partner_part(c3, touched)]
    source = _lowest_positive(state, partner.vertices, clf)
    if source is None:
        raise StrategyError("Type 3 partner part lost its deficit unexpectedly")
    return (min(source, target), max(source, target))


def _case6_big(
    state: GameState, cls: TypeClassification, clf: IncrementalClassifier = None
) -> Optional[tuple[int, int]]:
    """Edge inside a Type 3b: second edge between (C0,C2), else (C1,C3).

    When the opponent's edge spent both middle units, both pairs are
    dead and the component is already Type 2; fall through to a free
    move then.
    """
    for a, b in ((0, 2), (1, 3)):
        xs = [x for x in cls.parts[a].vertices if state.degree(x) < state.k]
        ys = [y for y in cls.parts[b].vertices if state.degree(y) < state.k]
        for x in xs:
            for y in ys:
                if not state.adjacent(x, y):
                    return (min(x, y), max(x, y))
    return None


def _free_move(
    state: GameState, clf: IncrementalClassifier
) -> Optional[tuple[int, int]]:
    """Case 7 chooser on the current position (classifier synced)."""
    pos_t1: list[tuple[int, int]] = []  # (min member, root)
    t2s: list[tuple[int, int]] = []
    t3: Optional[int] = None
    for root in clf.positive_roots():
        cls = clf.classify_root(root)[0]
        if cls.kind is TypeKind.TYPE1:
            pos_t1.append((clf.comp_min[root], root))
        elif cls.kind is TypeKind.TYPE2:
            t2s.append((clf.comp_min[root], root))
        elif cls.kind.is_type3:
            t3 = root
        if len(pos_t1) >= 2:
            break  # highest-priority rule already satisfied

    if len(pos_t1) >= 2:
        u = _lowest_positive(state, clf.comp_vertices(pos_t1[0][1]), clf)
        v = _lowest_positive(state, clf.comp_vertices(pos_t1[1][1]), clf)
        if u is not None and v is not None:
            return (min(u, v), max(u, v))

    if t3 is not None:
        cls = clf.classify_root(t3)[0]
        pairs = ((0, 2),) if cls.kind is TypeKind.TYPE3A else ((0, 2), (1, 3))
        for a, b in pairs:
            x = _lowest_positive(state, cls.parts[a].vertices, clf)
            y = _lowest_positive(state, cls.parts[b].vertices, clf)
            if x is not None and y is not None and not state.adjacent(x, y):
                return (min(x, y), max(x, y))

    if t2s:
        if pos_t1:
            c_root = pos_t1[0][1]
            cp_root = t2s[0][1]
        elif len(t2s) >= 2:
            c_root = t2s[0][1]
            cp_root = t2s[1][1]
        else:
            c_root = None
            cp_root = None
        if c_root is not None:
            u = _lowest_positive(state, clf.comp_vertices(c_root), clf)
            v = _lowest_positive(state, clf.comp_vertices(cp_root), clf)
            if u is not None and v is not None:
                return (min(u, v), max(u, v))

    return first_legal_move(state)


def self_check(state: GameState, memory: PlanarMemory) -> ConditionTReport:
    """Cross-validate the memory against a fresh classification.

    Called at the end of the strategy's move; raises StrategyError on
    any disagreement between tracked types and a from-scratch run, or
    on a stale Type 3 handle.
    """
    if memory.synced_turn != state.turn:
        raise StrategyError("self_check before the memory caught up")
    report = check_condition_T(state)
    fresh: dict[tuple[int, ...], TypeClassification] = {
        entry.vertices: entry.classification for entry in report.per_component
    }
    clf = memory.classifier
    for root in clf.roots():
        verts = clf.comp_vertices(root)
        mine = clf.classify_root(root)[0]
        theirs = fresh.get(verts)
        if theirs is None:
            raise StrategyError(f"tracked component {verts[:4]}... not in fresh state")
        if mine.kind != theirs.kind or mine.witness_bridges != theirs.witness_bridges:
            raise StrategyError(
                f"tracked {mine.kind} disagrees with fresh {theirs.kind} "
                f"at component {verts[0]}"
            )
    t3 = clf.type3_root()
    expect = None if t3 is None else clf.comp_vertices(t3)[0]
    if memory.type3_handle != expect:
        raise StrategyError(
            f"type3 handle {memory.type3_handle} stale; expected {expect}"
        )
    return report


class PlanarPlayer:
    name = "planar"

    def __init__(self, role: Role, config: GameConfig):
        if config.k != 3:
            raise InvalidConfig("the planar strategy plays the 3-game only")
        self.role = role
        self.config = config
        self.memory = new_memory(config)

    def move(self, state: GameState, last_opponent_move: Optional[Move]) -> Move:
        return planar_respond(state, self.memory, last_opponent_move)

    def annotations(self) -> dict:
        return {}
