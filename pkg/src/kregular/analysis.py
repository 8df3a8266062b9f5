"""Structural analysis of one connected component.

``CompAnalysis`` wraps a single DFS pass (kernel) and answers the
queries the component classifier needs in O(1): the bridge list, the
deficit of either side of a bridge, side membership, and side
materialization.  A bridge side is addressed by the handle
(bridge index, is_subtree); the subtree side is the half-open Euler
interval of the bridge's child endpoint.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

from ._kernels import comp_build, comp_dfs
from .errors import GameError

SideHandle = tuple[int, bool]  # (bridge index, True = child subtree side)


class CompAnalysis:
    """DFS skeleton of one connected component."""

    __slots__ = (
        "_varr",
        "_verts",
        "_index",
        "weights",
        "total",
        "tin",
        "tout",
        "parent",
        "subw",
        "euler",
        "bridges",
        "_child",
        "edge_count",
    )

    def __init__(
        self,
        vertices: Sequence[int],
        neighbors: Callable[[int], Iterable[int]],
        weight: Callable[[int], int],
    ):
        """Build from sorted component vertices and an adjacency callback."""
        verts = tuple(vertices)
        nv = len(verts)
        index = {v: i for i, v in enumerate(verts)}

        adj_start = np.zeros(nv + 1, np.int64)
        local_adj: list[list[int]] = []
        wts = np.zeros(nv, np.int64)
        nedges = 0
        for i, v in enumerate(verts):
            row = sorted(index[w] for w in neighbors(v) if w in index)
            local_adj.append(row)
            adj_start[i + 1] = adj_start[i] + len(row)
            wts[i] = weight(v)
            nedges += len(row)
        adj_to = np.empty(nedges, np.int64)
        pos = 0
        for row in local_adj:
            for w in row:
                adj_to[pos] = w
                pos += 1
        self._init_arrays(np.asarray(verts, dtype=np.int64), adj_start, adj_to, wts)

    @classmethod
    def from_numpy(
        cls,
        members: Sequence[int],
        adj_mat: np.ndarray,
        deg: np.ndarray,
        k: int,
        lookup: np.ndarray,
    ) -> "CompAnalysis":
        """Kernel-built construction from a global padded adjacency matrix.

        ``adj_mat`` holds each vertex's neighbors in its first deg[v]
        columns; remaining cells are ignored.  ``lookup`` is an n-sized
        int64 scratch buffer.
        """
        members_arr = np.asarray(members, dtype=np.int64)
        verts_arr, adj_start, adj_to, wts = comp_build(
            members_arr, adj_mat, deg, k, lookup
        )
        obj = cls.__new__(cls)
        obj._init_arrays(verts_arr, adj_start, adj_to, wts)
        return obj

    def _init_arrays(self, varr, adj_start, adj_to, wts) -> None:
        nv = varr.shape[0]
        self._varr = varr
        self._verts = None
        self._index = None
        self.weights = wts
        self.total = int(wts.sum())
        self.edge_count = int(adj_start[nv]) // 2

        parent, tin, tout, low, subw = comp_dfs(nv, adj_start, adj_to, wts)
        if nv and int(tin.min()) < 0:
            raise GameError("vertex set is not a connected component")
        self.parent = parent
        self.tin = tin
        self.tout = tout
        self.subw = subw
        euler = np.empty(nv, np.int64)
        euler[tin] = np.arange(nv)
        self.euler = euler

        # bridges: tree edges whose child subtree has no back edge above it
        children = np.nonzero((parent != -1) & (low > tin[np.maximum(parent, 0)]))[0]
        raw = []
        for c in children.tolist():
            p = parent[c]
            gu, gv = int(varr[p]), int(varr[c])
            raw.append(((min(gu, gv), max(gu, gv)), c))
        raw.sort()
        self.bridges = tuple(pair for pair, _ in raw)
        self._child = tuple(c for _, c in raw)

    @property
    def vertices(self) -> tuple[int, ...]:
        if self._verts is None:
            self._verts = tuple(self._varr.tolist())
        return self._verts

    @property
    def index(self) -> dict[int, int]:
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self.vertices)}
        return self._index

    # -- side queries ----------------------------------------------------

    def side_contains(self, side: SideHandle, vertex: int) -> bool:
        b, is_sub = side
        c = self._child[b]
        x = self.index[vertex]
        inside = self.tin[c] <= self.tin[x] < self.tout[c]
        return inside if is_sub else not inside

    def side_of(self, b: int, vertex: int) -> SideHandle:
        """Side of bridge b that contains the given vertex."""
        c = self._child[b]
        x = self.index[vertex]
        inside = self.tin[c] <= self.tin[x] < self.tout[c]
        return (b, bool(inside))

    def side_away_from(self, b: int, vertex: int) -> SideHandle:
        bb, is_sub = self.side_of(b, vertex)
        return (bb, not is_sub)

    def side_deficit(self, side: SideHandle) -> int:
        b, is_sub = side
        c = self._child[b]
        s = int(self.subw[c])
        return s if is_sub else self.total - s

    def side_size(self, side: SideHandle) -> int:
        b, is_sub = side
        c = self._child[b]
        s = int(self.tout[c] - self.tin[c])
        return s if is_sub else len(self.vertices) - s

    def side_vertices(self, side: SideHandle) -> tuple[int, ...]:
        b, is_sub = side
        c = self._child[b]
        lo, hi = int(self.tin[c]), int(self.tout[c])
        if is_sub:
            locs = self.euler[lo:hi]
        else:
            locs = np.concatenate((self.euler[:lo], self.euler[hi:]))
        return tuple(np.sort(self._varr[locs]).tolist())

    def sides_disjoint(self, s1: SideHandle, s2: SideHandle) -> bool:
        b1, sub1 = s1
        b2, sub2 = s2
        c1, c2 = self._child[b1], self._child[b2]
        lo1, hi1 = int(self.tin[c1]), int(self.tout[c1])
        lo2, hi2 = int(self.tin[c2]), int(self.tout[c2])
        if sub1 and sub2:
            return hi1 <= lo2 or hi2 <= lo1
        if sub1 and not sub2:
            return lo2 <= lo1 and hi1 <= hi2  # subtree 1 nested in subtree 2
        if sub2 and not sub1:
            return lo1 <= lo2 and hi2 <= hi1
        return False  # two co-subtrees share the DFS root
