"""Arena loop, batch determinism, and transcript verification."""

from __future__ import annotations

import json

import pytest

from kregular.arena import (
    MatchConfig,
    StrategySpec,
    default_checks,
    endgame_law_violation,
    run_batch,
    run_game,
    verify_transcript,
)
from kregular.errors import GameError
from kregular.game import GameConfig, Move
from kregular.transcript import Transcript, encode_transcript, read_transcripts


def match(n=20, k=3, seed=7, p1="planar", p2="random", ell=None, checks=None, out=None):
    return MatchConfig(
        game=GameConfig(n=n, k=k, seed=seed),
        player_a=StrategySpec(p1, ell=ell if p1 == "minor" else None),
        player_b=StrategySpec(p2, ell=ell if p2 == "minor" else None),
        checks=checks if checks is not None else default_checks(k),
        out_path=out,
    )


class TestRunGame:
    def test_planar_vs_random(self):
        t = run_game(match())
        ann = t.annotations
        assert ann["planar"] is True
        assert ann["condition_T_history"]["failed_turns"] == []
        assert "check_failures" not in ann

    def test_minor_finds_certificate(self):
        t = run_game(match(n=600, k=4, p1="minor", p2="random", ell=3))
        ann = t.annotations
        assert ann["minor_certificate"]["target"] == 3
        assert "check_failures" not in ann
        assert ann["accounting"]["delta"] >= 0

    def test_two_vertex_game(self):
        t = run_game(match(n=2, k=3, p1="random", p2="random"))
        assert len(t.moves) == 1

    def test_unknown_check_rejected(self):
        with pytest.raises(GameError):
            match(checks=frozenset({"definitely_not_a_check"}))

    def test_endgame_law_helper(self):
        t = run_game(match(n=10, p1="random", p2="random"))
        assert endgame_law_violation(t.final_state()) is None


class TestRunBatch:
    def test_hundred_planar_games(self):
        summary, transcripts = run_batch(match(n=14), games=20, seed_base=100)
        assert summary.games == 20
        assert summary.verdict_counts["planar_final"] == 20
        assert len(transcripts) == 20
        assert [t.config.seed for t in transcripts] == list(range(100, 120))

    def test_zero_games(self):
        summary, transcripts = run_batch(match(), games=0, seed_base=0)
        assert summary.games == 0 and transcripts == []
        assert summary.max_moves == 0

    def test_same_seed_base_is_deterministic(self):
        a, ta = run_batch(match(n=12), games=6, seed_base=40)
        b, tb = run_batch(match(n=12), games=6, seed_base=40)
        assert a.comparable() == b.comparable()
        assert [encode_transcript(t) for t in ta] == [encode_transcript(t) for t in tb]

    @pytest.mark.slow
    def test_worker_count_neutral(self):
        serial, ts = run_batch(match(n=12), games=4, seed_base=9)
        pooled, tp = run_batch(match(n=12), games=4, seed_base=9, workers=2)
        assert serial.comparable() == pooled.comparable()
        assert [encode_transcript(t) for t in ts] == [encode_transcript(t) for t in tp]

    def test_writes_one_file_with_all_games(self, tmp_path):
        out = str(tmp_path / "games.jsonl")
        run_batch(match(n=10, out=out), games=3, seed_base=1)
        assert len(read_transcripts(out)) == 3


class TestVerifyTranscript:
    def test_golden_files_verify(self, tmp_path):
        out = str(tmp_path / "g.jsonl")
        run_batch(match(n=16), games=4, seed_base=3)
        summary, transcripts = run_batch(match(n=16, out=out), games=4, seed_base=3)
        report = verify_transcript(out)
        assert report.ok
        assert len(report.games) == 4

    def test_minor_games_verify(self, tmp_path):
        out = str(tmp_path / "m.jsonl")
        run_batch(match(n=600, k=4, p1="minor", p2="greedy_structure", ell=3, out=out),
                  games=2, seed_base=5)
        report = verify_transcript(out)
        assert report.ok, [g.problems for g in report.games]

    def test_hand_edited_duplicate_edge_caught(self):
        t = run_game(match(n=10, p1="random", p2="random"))
        lines = encode_transcript(t).decode().splitlines()
        first_move = json.loads(lines[1])
        forged = dict(first_move)
        forged["t"] = 2
        forged["player"] = "B"
        bad = "\n".join([lines[0], lines[1], json.dumps(forged)]) + "\n"
        report = verify_transcript(bad.encode())
        assert not report.ok
        assert any("turn 2" in p for p in report.games[0].problems)

    def test_tampered_move_breaks_condition_history(self):
        t = run_game(match(n=14))
        # claim a condition failure that did not happen
        ann = dict(t.annotations)
        ann["condition_T_history"] = {"checked": 1, "failed_turns": [2]}
        forged = Transcript(t.config, t.moves, ann)
        report = verify_transcript(encode_transcript(forged))
        assert not report.ok

    def test_forged_planar_verdict_caught(self):
        t = run_game(match(n=14))
        ann = dict(t.annotations)
        ann["planar"] = False
        forged = Transcript(t.config, t.moves, ann)
        report = verify_transcript(encode_transcript(forged))
        assert not report.ok

    def test_forged_certificate_caught(self):
        t = run_game(match(n=600, k=4, p1="minor", p2="random", ell=3))
        ann = dict(t.annotations)
        cert = dict(ann["minor_certificate"])
        cert["branch_sets"] = [[0], [1], [2]]
        ann["minor_certificate"] = cert
        forged = Transcript(t.config, t.moves, ann)
        report = verify_transcript(encode_transcript(forged))
        # singleton sets on three vertices only verify if they happen to
        # form a triangle; seeds here leave 0-1-2 triangle-free
        assert not report.ok
