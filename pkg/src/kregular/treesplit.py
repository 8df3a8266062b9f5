"""Balanced splitting of labeled trees.

Given a tree with bounded nonnegative integer vertex labels, removing a
well-chosen edge leaves two parts whose label-sum ratio lies strictly
between 1/D and D (D = host max degree).  Recursing t times yields 2^t
disjoint connected parts, each holding at least a (D+1)^-t fraction of
the total label mass.  The balanced edge is found by a walk: while the
current edge is too lopsided, step into the heavy side toward its
heaviest branch; each step strictly improves the ratio or strictly
shrinks the heavy side, so the walk terminates.

The walk is guaranteed to succeed once label_sum > b*D*(D-1).  Below
that guard the functions still try (walk plus exhaustive scan) and
raise PreconditionError only when no qualifying edge exists at all,
e.g. a unit-label star whose every edge sits exactly on the ratio
boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import GameError, PreconditionError

Edge = tuple[int, int]


@dataclass(frozen=True)
class LabeledTree:
    """Tree with nonnegative vertex labels bounded by ``b``.

    ``max_degree`` is the degree bound of the host graph the tree spans;
    it may exceed the tree's own maximum degree and fixes the balance
    window (1/max_degree, max_degree).
    """

    nodes: tuple[int, ...]
    edges: tuple[Edge, ...]
    labels: Mapping[int, int]
    b: int
    max_degree: int

    def __post_init__(self):
        nodes = tuple(self.nodes)
        edges = tuple((min(u, v), max(u, v)) for u, v in self.edges)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        if len(edges) != len(nodes) - 1:
            raise GameError(f"{len(nodes)} nodes need {len(nodes)-1} tree edges, got {len(edges)}")
        adj = self._adjacency(nodes, edges)
        # connectivity (acyclicity then follows from the edge count)
        if nodes:
            seen = {nodes[0]}
            stack = [nodes[0]]
            while stack:
                for y in adj[stack.pop()]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(nodes):
                raise GameError("edge set does not connect the nodes")
        if self.max_degree < 2:
            raise GameError("max_degree must be at least 2")
        if any(len(adj[v]) > self.max_degree for v in nodes):
            raise GameError("a node exceeds the declared max_degree")
        for v in nodes:
            lab = self.labels[v]
            if not 0 <= lab <= self.b:
                raise GameError(f"label {lab} of node {v} outside [0, {self.b}]")

    @staticmethod
    def _adjacency(nodes, edges) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in nodes}
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    @property
    def adjacency(self) -> dict[int, list[int]]:
        return self._adjacency(self.nodes, self.edges)

    def label_sum(self) -> int:
        return sum(self.labels[v] for v in self.nodes)

    def guard_holds(self) -> bool:
        return self.label_sum() > self.b * self.max_degree * (self.max_degree - 1)


def _rooted(tree: LabeledTree):
    """Parent map and subtree label sums rooted at the smallest node."""
    adj = tree.adjacency
    root = tree.nodes[0]
    parent: dict[int, int | None] = {root: None}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
                stack.append(w)
    sub = {v: tree.labels[v] for v in tree.nodes}
    for v in reversed(order):
        p = parent[v]
        if p is not None:
            sub[p] += sub[v]
    return adj, root, parent, sub


def _balanced(a: int, b: int, delta: int) -> bool:
    """Strict 1/delta < b/a < delta via integer cross-multiplication."""
    if a <= 0 or b <= 0:
        return False
    return a < b * delta and b < a * delta


def _edge_child(parent: Mapping[int, int | None], u: int, v: int) -> int:
    """The endpoint of tree edge {u, v} that is the child when rooted."""
    return v if parent[v] == u else u


def find_balanced_edge(tree: LabeledTree) -> Edge:
    """Tree edge whose removal splits the labels with ratio in (1/D, D).

    Walks from the lexicographically least edge; on failure below the
    guard an exhaustive scan runs before raising PreconditionError.
    """
    if not tree.edges:
        raise PreconditionError("tree has no edges to split at")
    adj, root, parent, sub = _rooted(tree)
    total = sub[root]
    delta = tree.max_degree

    def parts(child: int) -> tuple[int, int]:
        s = sub[child]
        return s, total - s

    cur = _edge_child(parent, *min(tree.edges))
    steps = 0
    limit = 2 * len(tree.nodes) + 4
    visited = {cur}
    while steps < limit:
        s_sub, s_co = parts(cur)
        if _balanced(s_sub, s_co, delta):
            p = parent[cur]
            return (min(p, cur), max(p, cur))
        # step from x, the endpoint in the heavy side, toward the
        # heaviest branch of that side
        p = parent[cur]
        if s_sub >= s_co:
            x = cur
            branches = [(sub[w], w, w) for w in adj[x] if w != p]
        else:
            x = p
            branches = []
            for w in adj[x]:
                if w == cur:
                    continue
                if w == parent[x]:
                    branches.append((total - sub[x], w, x))
                else:
                    branches.append((sub[w], w, w))
        if not branches:
            break  # heavy side is a single leaf; no further edge
        branches.sort(key=lambda t: (-t[0], t[1]))
        nxt = branches[0][2]
        if nxt in visited:
            break  # ratio stalled on zero-label chain loops; scan instead
        visited.add(nxt)
        cur = nxt
        steps += 1

    # exhaustive fallback, lexicographic
    for u, v in sorted(tree.edges):
        c = _edge_child(parent, u, v)
        s_sub, s_co = parts(c)
        if _balanced(s_sub, s_co, delta):
            return (u, v)
    if tree.guard_holds():
        raise GameError(
            "no balanced edge found although the label-sum guard holds; "
            "walk guard miscalibrated"
        )
    raise PreconditionError(
        f"label sum {total} too small: no edge splits strictly inside "
        f"(1/{delta}, {delta})"
    )


def split_labeled_tree(tree: LabeledTree, s: int, count: int) -> list[tuple[int, ...]]:
    """At least ``count`` disjoint connected parts with label sums >= s.

    Applies find_balanced_edge recursively ceil(log2 count) times; every
    level shrinks the lightest part by at most a factor of D+1, so the
    precondition label_sum >= s*(D+1)^levels makes all 2^levels parts
    heavy enough.
    """
    if count < 1:
        raise PreconditionError("count must be at least 1")
    if s < 0:
        raise PreconditionError("s must be nonnegative")
    levels = math.ceil(math.log2(count)) if count > 1 else 0
    need = s * (tree.max_degree + 1) ** levels
    if tree.label_sum() < need:
        raise PreconditionError(
            f"label sum {tree.label_sum()} below s*(D+1)^t = {need}"
        )

    def recurse(t: LabeledTree, lev: int) -> list[tuple[int, ...]]:
        if lev == 0:
            return [tuple(sorted(t.nodes))]
        u, v = find_balanced_edge(t)
        adj = t.adjacency
        side = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if (x == u and y == v) or (x == v and y == u):
                    continue  # the removed edge
                if y not in side:
                    side.add(y)
                    stack.append(y)
        left_nodes = tuple(sorted(side))
        right_nodes = tuple(sorted(set(t.nodes) - side))
        left = LabeledTree(
            left_nodes,
            tuple(e for e in t.edges if e[0] in side and e[1] in side),
            t.labels,
            t.b,
            t.max_degree,
        )
        right = LabeledTree(
            right_nodes,
            tuple(e for e in t.edges if e[0] not in side and e[1] not in side),
            t.labels,
            t.b,
            t.max_degree,
        )
        return recurse(left, lev - 1) + recurse(right, lev - 1)

    parts = recurse(tree, levels)
    light = [p for p in parts if sum(tree.labels[v] for v in p) < s]
    if light:
        raise GameError(
            f"splitter produced a part below s={s}; precondition accounting is off"
        )
    return parts
