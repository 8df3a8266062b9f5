"""Planarity decisions, clique-minor certificates, and small oracles.

``is_planar`` runs the left-right criterion (see _kernels).  The brute
forcers exist as independent cross-checks: ``has_clique_minor_bruteforce``
searches families of disjoint connected vertex sets directly, and
``planar_bruteforce`` decides planarity through forbidden minors alone.
K3,3 is cubic, so its minors coincide with its topological minors; the
K3,3 side is therefore an exhaustive subdivision search, which keeps the
oracle independent of the branch-set machinery it is checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._kernels import lr_planar
from .errors import PreconditionError

Edge = tuple[int, int]

_BRUTE_MAX_VERTICES = 12
_BRUTE_MAX_ELL = 5


def _edge_arrays(edges: Iterable[Edge]) -> tuple[np.ndarray, np.ndarray]:
    pairs = list(edges)
    if not pairs:
        empty = np.empty(0, np.int64)
        return empty, empty
    arr = np.asarray(pairs, dtype=np.int64)
    return np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1])


def is_planar(edges: Iterable[Edge], n: int) -> bool:
    """True iff the simple graph on vertices 0..n-1 admits a plane drawing."""
    eu, ev = _edge_arrays(edges)
    if eu.shape[0] == 0 or n <= 2:
        return True
    return bool(lr_planar(n, eu, ev))


def is_planar_arrays(n: int, eu: np.ndarray, ev: np.ndarray) -> bool:
    """Array-level entry point for hot paths (no conversion)."""
    if eu.shape[0] == 0 or n <= 2:
        return True
    return bool(lr_planar(n, eu, ev))


@dataclass(frozen=True)
class BranchDecomposition:
    """Candidate witness of a K_target minor: disjoint connected sets."""

    branch_sets: tuple[frozenset[int], ...]
    target: int

    def __post_init__(self):
        object.__setattr__(
            self,
            "branch_sets",
            tuple(frozenset(s) for s in self.branch_sets),
        )


def _is_connected_subset(vertices: frozenset[int], adj: dict[int, set[int]]) -> bool:
    if not vertices:
        return False
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y in vertices and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vertices)


def _adjacency(edges: Iterable[Edge]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def verify_minor_certificate(edges: Iterable[Edge], bd: BranchDecomposition) -> bool:
    """Check a branch decomposition against a host graph.

    True iff the sets are nonempty, pairwise disjoint, each induces a
    connected subgraph, and every pair of sets is joined by some edge.
    """
    edges = list(edges)
    if len(bd.branch_sets) < bd.target or bd.target < 1:
        return False
    sets = bd.branch_sets[: bd.target]
    seen: set[int] = set()
    for s in sets:
        if not s:
            return False
        if seen & s:
            return False
        seen |= s
    adj = _adjacency(edges)
    for s in sets:
        if not _is_connected_subset(s, adj):
            return False
    for a, b in itertools.combinations(sets, 2):
        if not any(y in b for x in a for y in adj.get(x, ())):
            return False
    return True


def _vertex_count(edges: Sequence[Edge], n: int | None) -> int:
    if n is not None:
        return n
    return 1 + max((max(u, v) for u, v in edges), default=-1)


def _connected_masks(n: int, nbr: list[int]) -> list[int]:
    """All nonempty vertex subsets (as bitmasks) inducing a connected graph."""
    out = []
    for mask in range(1, 1 << n):
        low = mask & -mask
        seen = low
        frontier = low
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                grow |= nbr[b.bit_length() - 1] & mask & ~seen
            seen |= grow
            frontier = grow
        if seen == mask:
            out.append(mask)
    return out


def has_clique_minor_bruteforce(
    edges: Iterable[Edge], ell: int, n: int | None = None
) -> bool:
    """Exhaustive K_ell minor search over families of connected subsets.

    Guarded to n <= 12 and ell <= 5; larger instances raise.
    """
    edges = list(edges)
    nv = _vertex_count(edges, n)
    if nv > _BRUTE_MAX_VERTICES:
        raise PreconditionError(f"brute force capped at {_BRUTE_MAX_VERTICES} vertices, got {nv}")
    if ell > _BRUTE_MAX_ELL:
        raise PreconditionError(f"brute force capped at ell={_BRUTE_MAX_ELL}, got {ell}")
    if ell < 1:
        raise PreconditionError("ell must be positive")
    if ell == 1:
        return nv >= 1
    nbr = [0] * nv
    for u, v in edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    subsets = _connected_masks(nv, nbr)
    # smallest sets first: dense graphs succeed immediately on singletons
    subsets.sort(key=lambda s: (bin(s).count("1"), s))
    reach = [0] * len(subsets)
    for i, s in enumerate(subsets):
        acc = 0
        t = s
        while t:
            b = t & -t
            t ^= b
            acc |= nbr[b.bit_length() - 1]
        reach[i] = acc & ~s

    count = len(subsets)

    def extend(chosen: list[int], used: int, start: int) -> bool:
        if len(chosen) == ell:
            return True
        for i in range(start, count):
            s = subsets[i]
            if s & used:
                continue
            r = reach[i]
            if all(r & c for c in chosen):
                if extend(chosen + [s], used | s, i + 1):
                    return True
        return False

    return extend([], 0, 0)


def _has_k33_subdivision(edges: Sequence[Edge], nv: int) -> bool:
    """Exhaustive K3,3 subdivision search (= K3,3 minor; K3,3 is cubic)."""
    adj = [[False] * nv for _ in range(nv)]
    deg = [0] * nv
    for u, v in edges:
        if not adj[u][v]:
            adj[u][v] = adj[v][u] = True
            deg[u] += 1
            deg[v] += 1
    branch_candidates = [v for v in range(nv) if deg[v] >= 3]
    if len(branch_candidates) < 6:
        return False

    def paths_exist(a_side, b_side, spares):
        # Assign each of the 9 required paths either a direct edge or a
        # simple path through distinct spare vertices.
        pairs = [(a, b) for a in a_side for b in b_side]

        def place(idx: int, free: tuple[int, ...]) -> bool:
            if idx == len(pairs):
                return True
            a, b = pairs[idx]
            if adj[a][b] and place(idx + 1, free):
                return True
            # route through 1..len(free) spares, ordered
            for r in range(1, len(free) + 1):
                for combo in itertools.permutations(free, r):
                    chain = (a, *combo, b)
                    if all(adj[x][y] for x, y in zip(chain, chain[1:])):
                        rest = tuple(s for s in free if s not in combo)
                        if place(idx + 1, rest):
                            return True
            return False

        return place(0, spares)

    for six in itertools.combinations(branch_candidates, 6):
        rest = tuple(v for v in range(nv) if v not in six)
        first = six[0]
        others = six[1:]
        for two in itertools.combinations(others, 2):
            a_side = (first,) + two
            b_side = tuple(v for v in others if v not in two)
            if paths_exist(a_side, b_side, rest):
                return True
    return False


def planar_bruteforce(edges: Iterable[Edge], n: int | None = None) -> bool:
    """Planarity by forbidden minors alone: no K5 minor and no K3,3 minor.

    Independent oracle for ``is_planar``; capped at 12 vertices.
    """
    edges = list(edges)
    nv = _vertex_count(edges, n)
    if nv > _BRUTE_MAX_VERTICES:
        raise PreconditionError(f"brute force capped at {_BRUTE_MAX_VERTICES} vertices")
    if has_clique_minor_bruteforce(edges, 5, nv):
        return False
    if _has_k33_subdivision(edges, nv):
        return False
    return True
