"""Planarity decisions against independent oracles and known graphs."""

from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from kregular.errors import PreconditionError
from kregular.planarity import (
    BranchDecomposition,
    has_clique_minor_bruteforce,
    is_planar,
    planar_bruteforce,
    verify_minor_certificate,
)

from conftest import random_graph

K4 = [(i, j) for i in range(4) for j in range(i + 1, 4)]
K5 = [(i, j) for i in range(5) for j in range(i + 1, 5)]
K33 = [(a, b + 3) for a in range(3) for b in range(3)]
PETERSEN = [
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
]


class TestIsPlanar:
    def test_small_classics(self):
        assert is_planar(K4, 4)
        assert not is_planar(K5, 5)
        assert not is_planar(K33, 6)
        assert not is_planar(PETERSEN, 10)

    def test_empty_and_tiny(self):
        assert is_planar([], 5)
        assert is_planar([(0, 1)], 2)

    def test_euler_screen_rejects_dense(self, rng):
        count = 0
        while count < 200:
            n = rng.randint(5, 40)
            edges = random_graph(rng, n, 0.9)
            if len(edges) > 3 * n - 6:
                count += 1
                assert not is_planar(edges, n)

    def test_agrees_with_networkx_on_random_graphs(self, rng):
        for _ in range(600):
            n = rng.randint(3, 12)
            edges = random_graph(rng, n, rng.choice([0.2, 0.35, 0.5, 0.8]))
            g = nx.Graph()
            g.add_nodes_from(range(n))
            g.add_edges_from(edges)
            assert is_planar(edges, n) == nx.is_planar(g)

    def test_agrees_with_forbidden_minor_oracle(self, rng):
        for _ in range(250):
            n = rng.randint(3, 9)
            edges = random_graph(rng, n, rng.choice([0.2, 0.4, 0.6]))
            assert is_planar(edges, n) == planar_bruteforce(edges, n)

    def test_monotone_under_edge_addition(self, rng):
        # adding edges never turns a nonplanar graph planar
        for _ in range(60):
            n = rng.randint(5, 9)
            edges = random_graph(rng, n, 0.5)
            all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
            rng.shuffle(all_pairs)
            seen_nonplanar = False
            present = set(edges)
            for e in all_pairs:
                if e in present:
                    continue
                present.add(e)
                planar_now = is_planar(sorted(present), n)
                if seen_nonplanar:
                    assert not planar_now
                seen_nonplanar = seen_nonplanar or not planar_now

    def test_disconnected_graphs(self):
        shifted_k5 = [(u + 7, v + 7) for u, v in K5]
        assert not is_planar(K4 + shifted_k5, 12)
        assert is_planar(K4 + [(u + 7, v + 7) for u, v in K4], 12)


class TestMinorCertificates:
    def test_triangle_singletons(self):
        bd = BranchDecomposition((frozenset({0}), frozenset({1}), frozenset({2})), 3)
        assert verify_minor_certificate([(0, 1), (0, 2), (1, 2)], bd)

    def test_petersen_matching_contracts_to_k5(self):
        bd = BranchDecomposition(tuple(frozenset({i, i + 5}) for i in range(5)), 5)
        assert verify_minor_certificate(PETERSEN, bd)

    def test_path_missing_pair_edge(self):
        bd = BranchDecomposition((frozenset({0}), frozenset({1}), frozenset({3})), 3)
        assert not verify_minor_certificate([(0, 1), (1, 2), (2, 3)], bd)

    def test_overlapping_sets_rejected(self):
        bd = BranchDecomposition((frozenset({0, 1}), frozenset({1, 2}), frozenset({3})), 3)
        assert not verify_minor_certificate(K4, bd)

    def test_disconnected_set_rejected(self):
        bd = BranchDecomposition((frozenset({0, 3}), frozenset({1}), frozenset({2})), 3)
        assert not verify_minor_certificate([(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)], bd)

    def test_empty_set_rejected(self):
        bd = BranchDecomposition((frozenset(), frozenset({1}), frozenset({2})), 3)
        assert not verify_minor_certificate(K4, bd)

    def test_certificate_survives_edge_additions(self, rng):
        bd = BranchDecomposition(tuple(frozenset({i, i + 5}) for i in range(5)), 5)
        edges = list(PETERSEN)
        for u in range(10):
            for v in range(u + 1, 10):
                if (u, v) not in edges:
                    edges.append((u, v))
                    if rng.random() < 0.3:
                        assert verify_minor_certificate(edges, bd)
        assert verify_minor_certificate(edges, bd)


class TestBruteForceMinors:
    def test_k5_has_k5_minor(self):
        assert has_clique_minor_bruteforce(K5, 5)

    def test_planar_graphs_have_no_k5_minor(self, rng):
        for _ in range(40):
            n = rng.randint(4, 9)
            edges = random_graph(rng, n, 0.35)
            if is_planar(edges, n):
                assert not has_clique_minor_bruteforce(edges, 5, n)

    def test_k33_has_k4_minor(self):
        assert has_clique_minor_bruteforce(K33, 4)

    def test_petersen_k5(self):
        assert has_clique_minor_bruteforce(PETERSEN, 5)

    def test_size_guards(self):
        with pytest.raises(PreconditionError):
            has_clique_minor_bruteforce([(0, 13)], 2)
        with pytest.raises(PreconditionError):
            has_clique_minor_bruteforce(K5, 6)

    def test_certificate_implies_bruteforce(self, rng):
        # every verified certificate is confirmed by the exhaustive search
        confirmed = 0
        for _ in range(300):
            n = rng.randint(3, 10)
            edges = random_graph(rng, n, rng.choice([0.3, 0.5, 0.7]))
            ell = rng.randint(2, min(5, n))
            verts = list(range(n))
            rng.shuffle(verts)
            sets = []
            pos = 0
            for _ in range(ell):
                size = rng.randint(1, 2)
                sets.append(frozenset(verts[pos : pos + size]))
                pos += size
            bd = BranchDecomposition(tuple(sets), ell)
            if verify_minor_certificate(edges, bd):
                confirmed += 1
                assert has_clique_minor_bruteforce(edges, ell, n)
        assert confirmed > 10  # the sampler does hit real certificates
