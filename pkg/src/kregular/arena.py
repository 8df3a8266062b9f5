"""Game loop, batch simulation, and independent transcript verification.

Checks run out of band: strategies never see check results.  A failed
check is recorded and the game continues to termination so the full
trace is preserved; only an illegal move from a strategy is fatal.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .classify import IncrementalClassifier
from .errors import CheckFailure, GameError, IllegalMove
from .game import GameConfig, GameState, Move, apply_move, is_over, new_game
from .planarity import BranchDecomposition, is_planar, verify_minor_certificate
from .strategies import make_player
from .strategies.minor import round1_accounting_check
from .transcript import Transcript, iter_transcripts, write_transcripts

KNOWN_CHECKS = ("condition_t", "planarity", "minor_certificate", "accounting", "endgame")


@dataclass(frozen=True)
class StrategySpec:
    """A strategy name plus its parameters (ell for the minor player)."""

    name: str
    ell: Optional[int] = None

    def label(self) -> str:
        return f"minor(ell={self.ell})" if self.name == "minor" else self.name

    @classmethod
    def parse(cls, text: str, ell: Optional[int] = None) -> "StrategySpec":
        text = text.strip()
        if "(" in text:  # e.g. "minor(ell=4)"
            name, _, rest = text.partition("(")
            value = rest.rstrip(")").split("=")[-1]
            return cls(name=name, ell=int(value))
        return cls(name=text, ell=ell)


@dataclass(frozen=True)
class MatchConfig:
    game: GameConfig
    player_a: StrategySpec
    player_b: StrategySpec
    checks: frozenset[str] = frozenset()
    out_path: Optional[str] = None

    def __post_init__(self):
        unknown = self.checks - frozenset(KNOWN_CHECKS)
        if unknown:
            raise GameError(f"unknown checks: {sorted(unknown)}")


def default_checks(k: int) -> frozenset[str]:
    if k == 3:
        return frozenset({"condition_t", "planarity", "endgame"})
    if k == 4:
        return frozenset({"minor_certificate", "accounting", "endgame"})
    return frozenset({"endgame"})


def run_game(cfg: MatchConfig) -> Transcript:
    """Play one full game, embedding check verdicts in the transcript."""
    state = new_game(cfg.game)
    specs = {"A": cfg.player_a, "B": cfg.player_b}
    players = {
        role: make_player(spec.name, role, cfg.game, ell=spec.ell)
        for role, spec in specs.items()
    }
    planar_seats = {r for r, s in specs.items() if s.name == "planar"}
    minor_seats = {r for r, s in specs.items() if s.name == "minor"}
    checks = cfg.checks

    monitor = (
        IncrementalClassifier(cfg.game.n, cfg.game.k, with_apex=True)
        if "condition_t" in checks and planar_seats
        else None
    )

    moves: list[Move] = []
    failures: list[dict] = []
    cond_checked = 0
    cond_failed_turns: list[int] = []
    fatal: Optional[dict] = None
    prev_move: Optional[Move] = None

    while not is_over(state):
        seat = state.mover
        try:
            mv = players[seat].move(state, prev_move)
            state = apply_move(state, mv)
        except (GameError, IllegalMove) as exc:
            fatal = {"turn": state.turn, "seat": seat, "error": str(exc)}
            break
        moves.append(mv)
        prev_move = mv
        if monitor is not None:
            monitor.add_edge(mv.u, mv.v)
            if seat in planar_seats:
                cond_checked += 1
                if not monitor.quick_holds():
                    cond_failed_turns.append(state.turn)
                    failures.append(
                        {
                            "turn": state.turn,
                            "check": "condition_t",
                            "detail": monitor.condition_report().failure_reason,
                        }
                    )

    annotations: dict = {
        "players": {r: specs[r].label() for r in ("A", "B")},
        "checks": sorted(checks),
    }
    if fatal is not None:
        annotations["fatal"] = fatal

    if "condition_t" in checks and planar_seats:
        annotations["condition_T_history"] = {
            "checked": cond_checked,
            "failed_turns": cond_failed_turns,
        }

    if "endgame" in checks and fatal is None:
        problem = endgame_law_violation(state)
        if problem:
            failures.append({"turn": state.turn, "check": "endgame", "detail": problem})
        annotations["endgame"] = {
            "moves": state.turn,
            "bound": (cfg.game.k * cfg.game.n) // 2,
            "positive_deficit_vertices": len(state.positive_deficit_vertices()),
        }

    if "planarity" in checks:
        planar_final = is_planar(state.edges, state.n)
        annotations["planar"] = planar_final
        if planar_seats and not planar_final:
            failures.append(
                {"turn": state.turn, "check": "planarity", "detail": "final graph nonplanar"}
            )

    for seat in sorted(minor_seats):
        player = players[seat]
        extra = player.annotations()
        cert = extra.get("minor_certificate")
        if "minor_certificate" in checks:
            ok = False
            if cert is not None:
                bd = BranchDecomposition(
                    tuple(frozenset(s) for s in cert["branch_sets"]), cert["target"]
                )
                ok = verify_minor_certificate(state.edges, bd)
            if not ok:
                failures.append(
                    {
                        "turn": state.turn,
                        "check": "minor_certificate",
                        "detail": "no verified certificate at game end",
                    }
                )
        if extra.get("round1_end") is not None:
            annotations["round1_end"] = extra["round1_end"]
        if cert is not None:
            annotations["minor_certificate"] = cert
        annotations["minor_progress"] = {
            "growth_turns": len(extra.get("growth_turns", [])),
            "replans": extra.get("replans", 0),
        }

    transcript = Transcript(cfg.game, tuple(moves), None)
    if "accounting" in checks and minor_seats and annotations.get("round1_end"):
        seat = min(minor_seats)
        try:
            report = round1_accounting_check(
                transcript, annotations["round1_end"], minor_role=seat
            )
            annotations["accounting"] = report.as_dict()
        except CheckFailure as exc:
            failures.append(
                {"turn": annotations["round1_end"], "check": "accounting", "detail": str(exc)}
            )

    if failures:
        annotations["check_failures"] = failures
    return Transcript(cfg.game, tuple(moves), annotations)


def endgame_law_violation(state: GameState) -> Optional[str]:
    """The terminal laws: few leftovers, pairwise adjacent, move bound."""
    n, k = state.n, state.k
    if state.turn > (k * n) // 2:
        return f"{state.turn} moves exceed the bound {(k * n) // 2}"
    total_deficit = sum(k - state.degree(v) for v in range(n))
    if total_deficit != k * n - 2 * state.turn:
        return "total deficit is not k*n - 2*moves"
    pos = state.positive_deficit_vertices()
    if len(pos) > k:
        return f"{len(pos)} positive-deficit vertices exceed k={k}"
    for i, u in enumerate(pos):
        for v in pos[i + 1 :]:
            if not state.adjacent(u, v):
                return f"terminal vertices {u},{v} not adjacent"
    return None


@dataclass(frozen=True)
class BatchSummary:
    games: int
    verdict_counts: dict[str, int]
    mean_moves: float
    max_moves: int
    wall_clock_s: float
    failures: tuple[dict, ...] = ()

    def comparable(self) -> dict:
        """Everything but the wall clock (for determinism checks)."""
        return {
            "games": self.games,
            "verdict_counts": dict(self.verdict_counts),
            "mean_moves": self.mean_moves,
            "max_moves": self.max_moves,
            "failures": list(self.failures),
        }


def _verdict(t: Transcript) -> str:
    ann = t.annotations or {}
    if ann.get("fatal") or ann.get("check_failures"):
        return "check_failures"
    if ann.get("planar") and any(
        name == "planar" for name in ann.get("players", {}).values()
    ):
        return "planar_final"
    if "minor_certificate" in ann:
        return "minor_found"
    return "none"


def _run_seeded(args: tuple[MatchConfig, int]) -> Transcript:
    cfg, seed = args
    game = replace(cfg.game, seed=seed)
    return run_game(replace(cfg, game=game))


def run_batch(
    cfg: MatchConfig,
    games: int,
    seed_base: int,
    workers: Optional[int] = None,
) -> tuple[BatchSummary, list[Transcript]]:
    """Play ``games`` independent games with seeds seed_base, +1, ...

    Results are merged in seed order, so worker count never changes the
    summary or the output file.
    """
    t0 = time.monotonic()
    jobs = [(cfg, seed_base + i) for i in range(games)]
    if workers and workers > 1 and games > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            transcripts = list(pool.map(_run_seeded, jobs))
    else:
        transcripts = [_run_seeded(j) for j in jobs]
    wall = time.monotonic() - t0

    counts = {"planar_final": 0, "minor_found": 0, "check_failures": 0, "none": 0}
    failures: list[dict] = []
    moves = [len(t.moves) for t in transcripts]
    for t in transcripts:
        counts[_verdict(t)] += 1
        ann = t.annotations or {}
        for f in ann.get("check_failures", []):
            failures.append({"seed": t.config.seed, **f})
        if ann.get("fatal"):
            failures.append({"seed": t.config.seed, "check": "fatal", **ann["fatal"]})
    summary = BatchSummary(
        games=games,
        verdict_counts=counts,
        mean_moves=(sum(moves) / len(moves)) if moves else 0.0,
        max_moves=max(moves, default=0),
        wall_clock_s=wall,
        failures=tuple(failures),
    )
    if cfg.out_path:
        write_transcripts(cfg.out_path, transcripts)
    return summary, transcripts


@dataclass(frozen=True)
class GameVerification:
    index: int
    seed: int
    ok: bool
    problems: tuple[str, ...]


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    games: tuple[GameVerification, ...]


def verify_transcript(source) -> VerifyReport:
    """Replay a transcript file and re-run every applicable check.

    All verdicts are recomputed from scratch; annotations only tell the
    verifier which seat ran which strategy and which claims to compare
    against.  ``source`` is a path or bytes.
    """
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    transcripts = list(iter_transcripts(data, validate=False))
    results = []
    for idx, t in enumerate(transcripts):
        problems = list(_verify_one(t))
        results.append(
            GameVerification(idx, t.config.seed, not problems, tuple(problems))
        )
    return VerifyReport(all(r.ok for r in results), tuple(results))


def _verify_one(t: Transcript) -> Iterable[str]:
    ann = t.annotations or {}
    players = ann.get("players", {})
    planar_seats = {r for r, name in players.items() if str(name) == "planar"}
    minor_seats = {r for r, name in players.items() if str(name).startswith("minor")}

    state = new_game(t.config)
    monitor = (
        IncrementalClassifier(t.config.n, t.config.k, with_apex=True)
        if planar_seats
        else None
    )
    failed_turns = []
    for i, mv in enumerate(t.moves):
        try:
            state = apply_move(state, mv)
        except IllegalMove as exc:
            yield f"illegal move at turn {i + 1}: {exc}"
            return
        if monitor is not None:
            monitor.add_edge(mv.u, mv.v)
            if mv.player in planar_seats and not monitor.quick_holds():
                failed_turns.append(i + 1)
    if not is_over(state) and "fatal" not in ann:
        yield "transcript ends before the game is over"

    if planar_seats:
        if failed_turns:
            yield f"condition T fails after planar moves at turns {failed_turns[:5]}"
        if not is_planar(state.edges, state.n):
            yield "final graph is nonplanar"
        hist = ann.get("condition_T_history")
        if hist is not None and list(hist.get("failed_turns", [])) != failed_turns:
            yield "annotated condition-T history disagrees with replay"

    problem = endgame_law_violation(state)
    if problem and "fatal" not in ann:
        yield f"endgame law: {problem}"

    if "planar" in ann and ann["planar"] != is_planar(state.edges, state.n):
        yield "annotated planarity verdict disagrees with replay"

    cert = ann.get("minor_certificate")
    if cert is not None:
        bd = BranchDecomposition(
            tuple(frozenset(s) for s in cert["branch_sets"]), cert["target"]
        )
        if not verify_minor_certificate(state.edges, bd):
            yield "annotated minor certificate does not verify"
    elif minor_seats and "fatal" not in ann:
        yield "minor player present but no certificate annotated"

    if minor_seats and ann.get("round1_end"):
        try:
            round1_accounting_check(t, ann["round1_end"])
        except CheckFailure as exc:
            yield f"accounting: {exc}"
