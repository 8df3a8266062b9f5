"""Component types of the 3-game invariant and condition-T checking.

A component C is classified by its deficit and bridge structure:

* Type 1: def(C) <= 3.
* Type 2: some bridge splits C into sides of deficit exactly 2 and 2.
* Type 3a: bridges e1, e2 such that the side of e1 away from e2 has
  deficit 2, the side of e2 away from e1 has deficit 2, and the third
  piece has deficit 1.
* Type 3b: bridges e1, e2, e3 with e1 and e3 separated by e2, outer
  pieces of deficit 2 and both middle pieces of deficit 1.

Condition T holds when every component is classified, at most one is of
Type 3, and each component can be drawn with its positive-deficit
vertices on the unbounded face.  The drawing clause is decided by the
apex construction: such a drawing exists iff the component stays planar
after adding one vertex adjacent to all of its positive-deficit
vertices.

Classification is deterministic: candidate witness bridges are scanned
in lexicographic order and the first match wins, with the precedence
Type 1 > Type 2 > Type 3a > Type 3b.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from .analysis import CompAnalysis
from .errors import GameError
from .game import ComponentView, GameState
from .planarity import is_planar, is_planar_arrays

Edge = tuple[int, int]


class TypeKind(str, Enum):
    TYPE1 = "1"
    TYPE2 = "2"
    TYPE3A = "3a"
    TYPE3B = "3b"
    UNCLASSIFIED = "unclassified"

    @property
    def is_type3(self) -> bool:
        return self in (TypeKind.TYPE3A, TypeKind.TYPE3B)


@dataclass(frozen=True)
class Part:
    """One piece of a classified component (vertex set plus deficit)."""

    vertices: tuple[int, ...]
    deficit: int

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


@dataclass(frozen=True)
class TypeClassification:
    """Proof type of one component with its witness structure.

    ``parts`` follow the definition's order: Type 2 sides sorted by
    smallest vertex; Type 3 parts in structural order C0, C1, C2(, C3).
    """

    kind: TypeKind
    witness_bridges: tuple[Edge, ...]
    parts: tuple[Part, ...]

    def part_index_of(self, vertex: int) -> int:
        for i, part in enumerate(self.parts):
            if vertex in part.vertex_set:
                return i
        raise KeyError(f"vertex {vertex} not in any part")


@dataclass(frozen=True)
class ComponentReport:
    vertices: tuple[int, ...]
    deficit: int
    classification: TypeClassification
    apex_planar: bool


@dataclass(frozen=True)
class ConditionTReport:
    holds: bool
    per_component: tuple[ComponentReport, ...]
    type3_count: int
    failure_reason: Optional[str] = None


def _classify_analysis(an: CompAnalysis) -> TypeClassification:
    d = an.total
    whole = Part(an.vertices, d)
    if d <= 3:
        return TypeClassification(TypeKind.TYPE1, (), (whole,))

    nb = len(an.bridges)
    unclassified = TypeClassification(TypeKind.UNCLASSIFIED, (), (whole,))
    all_vertices = set(an.vertices)

    if d == 4:
        for b in range(nb):
            if an.side_deficit((b, True)) == 2:
                sides = [
                    Part(an.side_vertices((b, True)), 2),
                    Part(an.side_vertices((b, False)), 2),
                ]
                sides.sort(key=lambda p: p.vertices[0])
                return TypeClassification(TypeKind.TYPE2, (an.bridges[b],), tuple(sides))
        return unclassified

    if d == 5:
        for i in range(nb):
            sub_i = an.side_deficit((i, True))
            if sub_i != 2 and an.total - sub_i != 2:
                continue
            for j in range(nb):
                if j == i:
                    continue
                rep_j = an.vertices[an._child[j]]  # endpoint of e2
                far1 = an.side_away_from(i, rep_j)
                if an.side_deficit(far1) != 2:
                    continue
                rep_i = an.vertices[an._child[i]]
                far2 = an.side_away_from(j, rep_i)
                if an.side_deficit(far2) != 2:
                    continue
                c0 = an.side_vertices(far1)
                c2 = an.side_vertices(far2)
                middle = tuple(sorted(all_vertices - set(c0) - set(c2)))
                return TypeClassification(
                    TypeKind.TYPE3A,
                    (an.bridges[i], an.bridges[j]),
                    (Part(c0, 2), Part(middle, 1), Part(c2, 2)),
                )
        return unclassified

    if d == 6:
        for i in range(nb):
            sub_i = an.side_deficit((i, True))
            if sub_i != 2 and an.total - sub_i != 2:
                continue
            rep_i = an.vertices[an._child[i]]
            for j in range(nb):
                if j == i:
                    continue
                if an.side_deficit((j, True)) != 3:
                    continue  # both sides of e2 must carry deficit 3
                rep_j = an.vertices[an._child[j]]
                far1 = an.side_away_from(i, rep_j)
                if an.side_deficit(far1) != 2:
                    continue
                side_e1_of_j = an.side_of(j, rep_i)
                for k in range(nb):
                    if k == i or k == j:
                        continue
                    rep_k = an.vertices[an._child[k]]
                    if an.side_contains(far1, rep_k):
                        continue  # C0 must avoid e3 as well
                    side_e3_of_j = an.side_of(j, rep_k)
                    if side_e1_of_j[1] == side_e3_of_j[1]:
                        continue  # e1 and e3 must be separated by e2
                    far3 = an.side_away_from(k, rep_i)
                    if an.side_contains(far3, rep_j):
                        continue  # C3 must avoid e2
                    if an.side_deficit(far3) != 2:
                        continue
                    c0 = an.side_vertices(far1)
                    c3 = an.side_vertices(far3)
                    m1 = tuple(sorted(set(an.side_vertices(side_e1_of_j)) - set(c0)))
                    m2 = tuple(sorted(set(an.side_vertices(side_e3_of_j)) - set(c3)))
                    return TypeClassification(
                        TypeKind.TYPE3B,
                        (an.bridges[i], an.bridges[j], an.bridges[k]),
                        (Part(c0, 2), Part(m1, 1), Part(m2, 1), Part(c3, 2)),
                    )
        return unclassified

    return unclassified


def classify_component(state: GameState, comp: ComponentView) -> TypeClassification:
    """Classify one component of a state (precedence 1 > 2 > 3a > 3b)."""
    verts = comp.vertices
    in_comp = set(verts)
    for v in verts:
        for w in state.neighbors(v):
            if w not in in_comp:
                raise GameError(f"{verts} is not a component: edge {v}-{w} leaves it")
    k = state.k
    an = CompAnalysis(verts, state.neighbors, lambda v: k - state.degree(v))
    return _classify_analysis(an)


def apex_planar(edges: Iterable[Edge], special: Iterable[int]) -> bool:
    """Can the graph be drawn with all of ``special`` on a common face?

    Decided via the apex construction: add one new vertex adjacent to
    every member of ``special`` and test planarity of the result.
    """
    edges = [tuple(e) for e in edges]
    special = set(special)
    verts = sorted({v for e in edges for v in e} | special)
    index = {v: i for i, v in enumerate(verts)}
    local = [(index[u], index[v]) for u, v in edges]
    apex = len(verts)
    local.extend((index[s], apex) for s in sorted(special))
    return is_planar(local, apex + 1)


def check_condition_T(state: GameState) -> ConditionTReport:
    """Full condition-T report for a state (fresh computation)."""
    clf = IncrementalClassifier(state.n, state.k)
    for u, v in state.edges:
        clf.add_edge(u, v)
    return clf.condition_report()


class IncrementalClassifier:
    """Union-find backed classifier fed one move at a time.

    Keeps per-component classification and apex verdicts cached, so the
    per-move cost after each game move is proportional to the touched
    component only.  ``quick_holds`` answers condition T from running
    counters without materializing a report.
    """

    def __init__(self, n: int, k: int, with_apex: bool = True):
        self.n = n
        self.k = k
        self.with_apex = with_apex
        self.parent = list(range(n))
        self.members: list[list[int]] = [[v] for v in range(n)]
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.deg = [0] * n
        self.comp_def = [k] * n
        self.comp_edges = [0] * n
        self.turn = 0
        # numpy mirrors for vectorized component extraction
        self._adj_mat = np.full((n, k), -1, np.int32)
        self._deg_arr = np.zeros(n, np.int32)
        self._lookup = np.zeros(n, np.int64)  # scratch for comp_build
        self.comp_min = list(range(n))
        self._pos_roots: set[int] = set(range(n))  # roots with deficit > 0
        self._dirty: set[int] = set()
        # root -> (classification, apex_ok); only components with edges
        self._cache: dict[int, tuple[TypeClassification, bool]] = {}
        self._verts_cache: dict[int, tuple[int, ...]] = {}
        self._bad_roots: set[int] = set()
        self._type3_roots: set[int] = set()

    # -- union-find ------------------------------------------------------

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def _drop_cached(self, root: int) -> None:
        if root in self._cache:
            del self._cache[root]
        self._verts_cache.pop(root, None)
        self._bad_roots.discard(root)
        self._type3_roots.discard(root)
        self._dirty.discard(root)

    def add_edge(self, u: int, v: int) -> None:
        self.adj[u].append(v)
        self.adj[v].append(u)
        self._adj_mat[u, self.deg[u]] = v
        self._adj_mat[v, self.deg[v]] = u
        self._deg_arr[u] += 1
        self._deg_arr[v] += 1
        self.deg[u] += 1
        self.deg[v] += 1
        self.turn += 1
        ra, rb = self.find(u), self.find(v)
        self._drop_cached(ra)
        if ra != rb:
            self._drop_cached(rb)
            if len(self.members[ra]) < len(self.members[rb]):
                ra, rb = rb, ra
            self.parent[rb] = ra
            self.members[ra].extend(self.members[rb])
            self.members[rb] = []
            self.comp_def[ra] = self.comp_def[ra] + self.comp_def[rb] - 2
            self.comp_edges[ra] = self.comp_edges[ra] + self.comp_edges[rb] + 1
            if self.comp_min[rb] < self.comp_min[ra]:
                self.comp_min[ra] = self.comp_min[rb]
            self._pos_roots.discard(rb)
        else:
            self.comp_def[ra] -= 2
            self.comp_edges[ra] += 1
        if self.comp_def[ra] > 0:
            self._pos_roots.add(ra)
        else:
            self._pos_roots.discard(ra)
        self._dirty.add(ra)

    # -- per-component views ----------------------------------------------

    def roots(self) -> Iterable[int]:
        return (v for v in range(self.n) if self.parent[v] == v)

    def positive_roots(self) -> list[int]:
        """Roots of positive-deficit components, by smallest member."""
        return sorted(self._pos_roots, key=lambda r: self.comp_min[r])

    def comp_vertices(self, root: int) -> tuple[int, ...]:
        cached = self._verts_cache.get(root)
        if cached is None:
            cached = tuple(sorted(self.members[root]))
            self._verts_cache[root] = cached
        return cached

    def comp_deficit(self, root: int) -> int:
        return self.comp_def[root]

    def analysis_of(self, root: int) -> CompAnalysis:
        return CompAnalysis.from_numpy(
            self.members[root], self._adj_mat, self._deg_arr, self.k, self._lookup
        )

    def _apex_ok(self, verts: tuple[int, ...]) -> bool:
        if len(verts) <= 2:
            return True
        k = self.k
        varr = np.asarray(verts, np.int64)  # already sorted
        nv = varr.shape[0]
        rows = self._adj_mat[varr].astype(np.int64)
        dsub = self._deg_arr[varr].astype(np.int64)
        valid = np.arange(k)[None, :] < dsub[:, None]
        src = np.repeat(np.arange(nv), k).reshape(nv, k)
        half = valid & (rows > varr[:, None])  # each edge once
        eu = src[half]
        ev = np.searchsorted(varr, rows[half])
        special = np.nonzero(dsub < k)[0]
        apex = nv
        eu = np.concatenate((eu, special))
        ev = np.concatenate((ev, np.full(special.shape[0], apex, np.int64)))
        return is_planar_arrays(apex + 1, eu, ev)

    def classify_root(self, root: int) -> tuple[TypeClassification, bool]:
        """Classification and apex verdict of one component (cached)."""
        if root in self._cache and root not in self._dirty:
            return self._cache[root]
        verts = self.comp_vertices(root)
        d = self.comp_def[root]
        if len(verts) == 1:
            cls = TypeClassification(TypeKind.TYPE1, (), (Part(verts, d),))
            apex_ok = True
        elif d <= 3 or d > 6:
            kind = TypeKind.TYPE1 if d <= 3 else TypeKind.UNCLASSIFIED
            cls = TypeClassification(kind, (), (Part(verts, d),))
            apex_ok = self._apex_ok(verts) if self.with_apex else True
        else:
            cls = _classify_analysis(self.analysis_of(root))
            apex_ok = self._apex_ok(verts) if self.with_apex else True
        self._cache[root] = (cls, apex_ok)
        self._dirty.discard(root)
        if cls.kind is TypeKind.UNCLASSIFIED or not apex_ok:
            self._bad_roots.add(root)
        if cls.kind.is_type3:
            self._type3_roots.add(root)
        return cls, apex_ok

    def classification_of(self, v: int) -> TypeClassification:
        return self.classify_root(self.find(v))[0]

    def _refresh(self) -> None:
        for r in list(self._dirty):
            if self.parent[r] == r:
                self.classify_root(r)
            else:
                self._dirty.discard(r)

    def type3_root(self) -> Optional[int]:
        self._refresh()
        if not self._type3_roots:
            return None
        return min(self._type3_roots)

    def quick_holds(self) -> bool:
        self._refresh()
        return not self._bad_roots and len(self._type3_roots) <= 1

    def condition_report(self) -> ConditionTReport:
        self._refresh()
        entries = []
        type3 = 0
        failure = None
        holds = True
        for root in sorted(self.roots(), key=lambda r: min(self.members[r])):
            cls, apex_ok = self.classify_root(root)
            verts = self.comp_vertices(root)
            entries.append(
                ComponentReport(verts, self.comp_def[root], cls, apex_ok)
            )
            if cls.kind.is_type3:
                type3 += 1
            if cls.kind is TypeKind.UNCLASSIFIED and failure is None:
                holds = False
                failure = f"unclassified component at vertex {verts[0]}"
            if not apex_ok and failure is None:
                holds = False
                failure = f"component at vertex {verts[0]} has no outer-face drawing"
        if type3 > 1 and failure is None:
            holds = False
            failure = f"{type3} components of Type 3"
        return ConditionTReport(holds, tuple(entries), type3, failure)
