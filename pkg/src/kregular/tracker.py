"""Incremental component bookkeeping for strategies and checks.

Edges are only ever added, so a union-find with merged member lists,
running component deficits, and a few derived structures (isolated
cursor, alive list of positive-deficit vertices, pool of high-deficit
components) gives O(alpha) work per move where the pure operations in
``game`` would rescan the graph.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .game import GameState

POOL_DEFICIT = 5  # components at or above this feed the minor player


class ComponentTracker:
    """Union-find over one game's vertices, fed moves in order."""

    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self.parent = list(range(n))
        self.members: list[list[int]] = [[v] for v in range(n)]
        self.size = [1] * n
        self.deg = [0] * n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.comp_def = [k] * n
        self.comp_edges = [0] * n
        self.turn = 0
        # components with deficit >= POOL_DEFICIT (roots)
        self.pool: set[int] = set()
        self.delta = 0  # sum of pool deficits
        # ordered alive list of positive-deficit vertices
        self._next = list(range(1, n)) + [n]
        self._prev = [-1] + list(range(n - 1))
        self._head = 0
        self._iso_cursor = 0
        self.ns_roots: set[int] = set()  # roots of components with >= 2 vertices
        self.comp_min = list(range(n))  # smallest member per root

    # -- union-find --------------------------------------------------------

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def _pool_drop(self, root: int) -> None:
        if root in self.pool:
            self.pool.discard(root)
            self.delta -= self.comp_def[root]

    def _pool_add(self, root: int) -> None:
        if self.comp_def[root] >= POOL_DEFICIT:
            self.pool.add(root)
            self.delta += self.comp_def[root]

    def _drop_alive(self, v: int) -> None:
        nxt, prv = self._next[v], self._prev[v]
        if prv == -1:
            self._head = nxt
        else:
            self._next[prv] = nxt
        if nxt < self.n:
            self._prev[nxt] = prv

    def add_edge(self, u: int, v: int) -> None:
        k = self.k
        self.adj[u].append(v)
        self.adj[v].append(u)
        self.deg[u] += 1
        self.deg[v] += 1
        self.turn += 1
        for x in (u, v):
            if self.deg[x] == k:
                self._drop_alive(x)
        ra, rb = self.find(u), self.find(v)
        self._pool_drop(ra)
        if ra != rb:
            self._pool_drop(rb)
            if self.size[ra] < self.size[rb]:
                ra, rb = rb, ra
            self.parent[rb] = ra
            self.members[ra].extend(self.members[rb])
            self.members[rb] = []
            self.size[ra] += self.size[rb]
            self.comp_def[ra] += self.comp_def[rb] - 2
            self.comp_edges[ra] += self.comp_edges[rb] + 1
            self.ns_roots.discard(rb)
            self.ns_roots.add(ra)
            if self.comp_min[rb] < self.comp_min[ra]:
                self.comp_min[ra] = self.comp_min[rb]
        else:
            self.comp_def[ra] -= 2
            self.comp_edges[ra] += 1
        self._pool_add(ra)

    def sync(self, state: GameState) -> None:
        """Catch up with a state sharing this tracker's game."""
        for u, v in state.edges[self.turn : state.turn]:
            self.add_edge(u, v)

    # -- queries -----------------------------------------------------------

    def deficit(self, v: int) -> int:
        return self.k - self.deg[v]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def comp_members(self, v: int) -> list[int]:
        return self.members[self.find(v)]

    def lowest_positive(self, root: int) -> Optional[int]:
        """Smallest positive-deficit vertex of a component."""
        best = None
        k = self.k
        for x in self.members[root]:
            if self.deg[x] < k and (best is None or x < best):
                best = x
        return best

    def lowest_with_deficit(self, root: int, want: int) -> Optional[int]:
        best = None
        for x in self.members[root]:
            if self.k - self.deg[x] == want and (best is None or x < best):
                best = x
        return best

    def isolated(self, count: int) -> list[int]:
        """Up to ``count`` lowest isolated (degree-0) vertices."""
        while self._iso_cursor < self.n and self.deg[self._iso_cursor] != 0:
            self._iso_cursor += 1  # degrees never drop; skip forever
        out = []
        v = self._iso_cursor
        while v < self.n and len(out) < count:
            if self.deg[v] == 0:
                out.append(v)
            v += 1
        return out

    def alive(self) -> Iterable[int]:
        """Positive-deficit vertices in ascending order."""
        v = self._head
        while v < self.n:
            yield v
            v = self._next[v]

    def first_legal_move(self) -> Optional[tuple[int, int]]:
        """Lexicographically least playable pair."""
        for u in self.alive():
            taken = self.adj[u]
            v = self._next[u]
            while v < self.n:
                if v not in taken:
                    return (u, v)
                v = self._next[v]
        return None

    def roots(self) -> Iterable[int]:
        return (v for v in range(self.n) if self.parent[v] == v)

    def nonsingleton_roots(self) -> list[int]:
        return sorted(self.ns_roots, key=lambda r: self.comp_min[r])
