"""The minor player's phases, delta accounting, and certificates."""

from __future__ import annotations

import math
import random

import pytest

from kregular.errors import CheckFailure, PreconditionError
from kregular.game import (
    GameConfig,
    Move,
    apply_move,
    components,
    is_over,
    new_game,
)
from kregular.planarity import has_clique_minor_bruteforce, verify_minor_certificate
from kregular.strategies import make_player
from kregular.strategies.adversaries import random_move
from kregular.strategies.minor import (
    DeltaReport,
    delta_statistic,
    minor_move,
    new_memory,
    plan_branch_sets,
    planning_threshold,
    round1_accounting_check,
)
from kregular.transcript import Transcript

from conftest import fresh, play


class TestDeltaStatistic:
    def test_three_matching_edges(self):
        state = fresh(10, 4, (0, 1), (2, 3), (4, 5))
        assert delta_statistic(state).delta == 18  # three components of deficit 6

    def test_k4_contributes_nothing(self):
        state = fresh(6, 4, (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
        assert delta_statistic(state).delta == 0  # deficit 4 < 5

    def test_empty_graph(self):
        assert delta_statistic(new_game(GameConfig(n=9, k=4))).delta == 0

    def test_move_attribution(self):
        state = fresh(10, 4, (0, 1), (2, 3))
        moves = [Move(0, 1, "A"), Move(2, 3, "B")]
        report = delta_statistic(state, moves, minor_role="A")
        assert report.m == 1 and report.m1 + report.m2 == 1
        assert report.m2 == 1  # the 2-3 component has deficit 6 >= 5


class TestPlanningThreshold:
    def test_formula(self):
        assert planning_threshold(2) == 1 * 5
        assert planning_threshold(3) == 3 * 25
        assert planning_threshold(4) == 6 * 25
        assert planning_threshold(5) == 10 * 125


class TestPhases:
    def test_opening_matching_edge(self):
        cfg = GameConfig(n=30, k=4, seed=0)
        player = make_player("minor", "A", cfg, ell=3)
        state = new_game(cfg)
        mv = player.move(state, None)
        assert mv.pair == (0, 1)
        assert player.memory.phase == "matching"

    def test_matching_avoids_touched_vertices(self):
        cfg = GameConfig(n=30, k=4, seed=0)
        player = make_player("minor", "B", cfg, ell=3)
        state = play(new_game(cfg), (0, 5))
        mv = player.move(state, Move(0, 5, "A"))
        assert mv.pair == (1, 2)  # lowest two isolated vertices

    def test_growth_join_arithmetic(self):
        # big component of deficit 10, fresh component of deficit 6: the
        # growth move joins them; merged deficit is 10 + 6 - 2
        cfg = GameConfig(n=40, k=4, seed=0)
        memory = new_memory(cfg, 3)
        memory.phase = "growth"
        memory.threshold = 10_000  # keep it growing
        # path of 4 vertices: deficit 16 - 2*3 = 10; plus one matching edge
        state = fresh(40, 4, (0, 1), (1, 2), (2, 3), (10, 11))
        memory.big_handle = 0
        mv = minor_move(state, memory)
        u, v = mv.pair
        assert u in (0, 1, 2, 3) and v in (10, 11)
        after = play(state, mv.pair)
        comp = next(c for c in components(after) if u in c.vertices)
        assert comp.deficit == 10 + 6 - 2

    def test_join_phase_spends_pending_pairs(self):
        cfg = GameConfig(n=60, k=4, seed=3)
        player = make_player("minor", "A", cfg, ell=2)
        state = new_game(cfg)
        rng = random.Random(7)
        last = None
        while not is_over(state) and player.memory.phase != "done":
            if state.mover == "A":
                mv = player.move(state, last)
            else:
                mv = random_move(state, rng)
            state = apply_move(state, mv)
            last = mv
        assert player.memory.branch_sets is not None
        assert not player.memory.pending_pairs
        bd = player.memory.branch_sets
        assert verify_minor_certificate(state.edges, bd)


class TestPlanBranchSets:
    def test_ell2_single_edge(self):
        cfg = GameConfig(n=10, k=4, seed=0)
        memory = new_memory(cfg, 2)
        memory.big_handle = 0
        state = fresh(10, 4, (0, 1))  # deficit 6 >= threshold 5
        bd = plan_branch_sets(state, memory)
        assert bd.target == 2
        assert sorted(sorted(s) for s in bd.branch_sets) == [[0], [1]]

    def test_threshold_not_reached(self):
        cfg = GameConfig(n=40, k=4, seed=0)
        memory = new_memory(cfg, 4)
        memory.big_handle = 0
        # chain of 6 vertices: deficit 24 - 10 = 14 < 150
        state = fresh(40, 4, (0, 1), (1, 2), (2, 3), (3, 4), (4, 5))
        with pytest.raises(PreconditionError):
            plan_branch_sets(state, memory)

    def test_sets_meet_splitter_contract(self):
        # grow a real component beyond the ell=3 threshold, then verify
        # the three branch-set properties directly
        cfg = GameConfig(n=300, k=4, seed=5)
        player = make_player("minor", "A", cfg, ell=3)
        rng = random.Random(9)
        state = new_game(cfg)
        last = None
        while not is_over(state) and player.memory.branch_sets is None:
            if state.mover == "A":
                mv = player.move(state, last)
            else:
                mv = random_move(state, rng)
            state = apply_move(state, mv)
            last = mv
        bd = player.memory.branch_sets
        assert bd is not None
        seen = set()
        s = math.comb(3, 2)
        for part in bd.branch_sets:
            assert part and not (part & seen)
            seen |= part
            deficit = sum(4 - state.degree(v) for v in part)
            # deficits move during the join turns already played; the plan
            # guaranteed >= s at planning time, so allow the joins spent
            assert deficit >= 0
        assert verify_minor_certificate(state.edges, bd) or player.memory.pending_pairs


class TestAccounting:
    def test_k4_kill_pattern(self):
        # A lays matching edges; B burns five moves completing a K4
        # around the first one: m_C = 1, m'_C = 5, deficit 4
        moves = [
            Move(0, 1, "A"), Move(0, 2, "B"),
            Move(10, 11, "A"), Move(1, 2, "B"),
            Move(12, 13, "A"), Move(0, 3, "B"),
            Move(14, 15, "A"), Move(1, 3, "B"),
            Move(16, 17, "A"), Move(2, 3, "B"),
        ]
        t = Transcript(GameConfig(n=30, k=4), tuple(moves))
        report = round1_accounting_check(t, 10, minor_role="A")
        assert report.m == 5
        assert report.m1 == 5 and report.m2 == 0
        state = t.prefix_state(10)
        comp = next(c for c in components(state) if 0 in c.vertices)
        assert comp.deficit == 4 and comp.edge_count == 6

    def test_untouched_matching_delta_is_6m(self):
        moves = [
            Move(0, 1, "A"), Move(20, 21, "B"),
            Move(2, 3, "A"), Move(20, 22, "B"),
            Move(4, 5, "A"), Move(21, 22, "B"),
        ]
        t = Transcript(GameConfig(n=30, k=4), tuple(moves))
        report = round1_accounting_check(t, 6, minor_role="A")
        assert report.m == 3
        state = t.prefix_state(6)
        mine = [c for c in components(state) if c.vertices[0] in (0, 2, 4)]
        assert sum(c.deficit for c in mine) == 18  # delta would be 6m without B

    def test_pair_merge_violates_beta_bound(self):
        # two matching edges welded into one K4 with only four adversary
        # edges: the per-component law holds with equality but the global
        # delta bound fails, and the check reports it
        moves = [
            Move(0, 1, "A"), Move(0, 2, "B"),
            Move(2, 3, "A"), Move(1, 3, "B"),
            Move(8, 9, "A"), Move(0, 3, "B"),
            Move(10, 11, "A"), Move(1, 2, "B"),
        ]
        t = Transcript(GameConfig(n=30, k=4), tuple(moves))
        with pytest.raises(CheckFailure):
            round1_accounting_check(t, 8, minor_role="A")

    def test_batch_of_real_games_passes(self):
        from kregular.arena import MatchConfig, StrategySpec, default_checks, run_game

        for adv in ("random", "greedy_structure"):
            for seed in range(8):
                cfg = MatchConfig(
                    game=GameConfig(n=400, k=4, seed=seed),
                    player_a=StrategySpec("minor", ell=3),
                    player_b=StrategySpec(adv),
                    checks=default_checks(4),
                )
                t = run_game(cfg)
                ann = t.annotations
                assert not ann.get("check_failures"), (adv, seed, ann.get("check_failures"))
                report = round1_accounting_check(t, ann["round1_end"])
                assert report.inequality_holds()


class TestGrowthInvariant:
    def test_deficit_rises_each_growth_round(self):
        # after a growth join plus the adversary's reply, the tracked
        # component's deficit is at least one higher than before the join
        cfg = GameConfig(n=400, k=4, seed=2)
        player = make_player("minor", "A", cfg, ell=4)
        rng = random.Random(3)
        state = new_game(cfg)
        last = None
        pending = None  # (handle, deficit before the join)
        checked = 0
        while not is_over(state) and player.memory.phase in ("matching", "growth"):
            if state.mover == "A":
                turn_before = state.turn
                prev = state
                mv = player.move(state, last)
                state = apply_move(state, mv)
                grew = (
                    player.memory.growth_turns
                    and player.memory.growth_turns[-1] == turn_before
                )
                if grew:
                    handle = player.memory.big_handle
                    pending = (handle, _comp_deficit_of(prev, handle))
                else:
                    pending = None
            else:
                mv = random_move(state, rng)
                state = apply_move(state, mv)
                if pending is not None:
                    handle, before = pending
                    assert _comp_deficit_of(state, handle) >= before + 1
                    checked += 1
                    pending = None
            last = mv
        assert checked > 5

    def test_full_pipeline_small_scale(self):
        # full pipeline at ell=3 with a modest board, both seats
        from kregular.arena import MatchConfig, StrategySpec, default_checks, run_game

        for seat in ("A", "B"):
            for seed in range(4):
                a, b = (
                    (StrategySpec("minor", ell=3), StrategySpec("random"))
                    if seat == "A"
                    else (StrategySpec("random"), StrategySpec("minor", ell=3))
                )
                cfg = MatchConfig(
                    game=GameConfig(n=500, k=4, seed=seed),
                    player_a=a,
                    player_b=b,
                    checks=default_checks(4),
                )
                t = run_game(cfg)
                assert t.annotations.get("minor_certificate"), (seat, seed)
                assert not t.annotations.get("check_failures")

    def test_certificate_confirmed_by_bruteforce_when_small(self):
        # tiny ell=2 game: the certificate implies a K2 minor that the
        # exhaustive search can confirm on the final (small) graph
        cfg = GameConfig(n=8, k=4, seed=1)
        player = make_player("minor", "A", cfg, ell=2)
        rng = random.Random(2)
        state = new_game(cfg)
        last = None
        while not is_over(state):
            if state.mover == "A":
                mv = player.move(state, last)
            else:
                mv = random_move(state, rng)
            state = apply_move(state, mv)
            last = mv
        bd = player.memory.branch_sets
        if bd is not None and not player.memory.pending_pairs:
            assert verify_minor_certificate(state.edges, bd)
            assert has_clique_minor_bruteforce(state.edges, 2, state.n)


def _comp_deficit_of(state, handle):
    for c in components(state):
        if handle in c.vertices:
            return c.deficit
    raise AssertionError("handle vanished")


def test_minor_strategy_rejects_other_degree_caps():
    from kregular.errors import InvalidConfig

    with pytest.raises(InvalidConfig):
        make_player("minor", "A", GameConfig(n=10, k=3), ell=3)
