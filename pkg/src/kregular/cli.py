"""Command line: simulate batches, verify transcripts, play, serve.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arena import (
    MatchConfig,
    StrategySpec,
    default_checks,
    run_batch,
    verify_transcript,
)
from .errors import GameError, IllegalMove, TranscriptError
from .game import GameConfig, Move, apply_move, components, is_over, new_game
from .strategies import STRATEGY_NAMES, make_player

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kregular", description="k-regular graph game arena"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a batch of games")
    sim.add_argument("--k", type=int, required=True, choices=(3, 4))
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--p1", required=True, help="strategy for seat A")
    sim.add_argument("--p2", required=True, help="strategy for seat B")
    sim.add_argument("--ell", type=int, default=None, help="clique order for the minor strategy")
    sim.add_argument("--games", type=int, default=1)
    sim.add_argument("--seed", type=int, default=0, help="seed of the first game")
    sim.add_argument("--out", default=None, help="JSONL transcript output")
    sim.add_argument("--checks", default=None, help="comma list; default depends on k")
    sim.add_argument("--first", choices=("A", "B"), default="A")
    sim.add_argument("--workers", type=int, default=None)

    ver = sub.add_parser("verify", help="replay and re-check a transcript file")
    ver.add_argument("--in", dest="path", required=True)

    play = sub.add_parser("play", help="interactive terminal game against an engine")
    play.add_argument("--k", type=int, required=True)
    play.add_argument("--n", type=int, required=True)
    play.add_argument("--engine", required=True, choices=STRATEGY_NAMES)
    play.add_argument("--ell", type=int, default=None)
    play.add_argument("--seed", type=int, default=0)
    play.add_argument("--human-first", action="store_true")

    srv = sub.add_parser("serve", help="run the HTTP API")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--static", default=None, help="directory with the web UI build")
    return parser


def cmd_simulate(args) -> int:
    checks = (
        frozenset(c for c in args.checks.split(",") if c)
        if args.checks is not None
        else default_checks(args.k)
    )
    try:
        cfg = MatchConfig(
            game=GameConfig(n=args.n, k=args.k, first_player=args.first, seed=args.seed),
            player_a=StrategySpec.parse(args.p1, args.ell),
            player_b=StrategySpec.parse(args.p2, args.ell),
            checks=checks,
            out_path=args.out,
        )
        summary, _ = run_batch(cfg, args.games, args.seed, workers=args.workers)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(
        json.dumps(
            {
                "games": summary.games,
                "verdicts": summary.verdict_counts,
                "mean_moves": round(summary.mean_moves, 2),
                "max_moves": summary.max_moves,
                "wall_clock_s": round(summary.wall_clock_s, 3),
                "failures": list(summary.failures)[:20],
            },
            indent=2,
        )
    )
    return EXIT_CHECK_FAILURE if summary.failures else EXIT_OK


def cmd_verify(args) -> int:
    path = Path(args.path)
    if not path.exists():
        print(f"i/o error: {path} does not exist", file=sys.stderr)
        return EXIT_IO
    try:
        report = verify_transcript(str(path))
    except (OSError, UnicodeDecodeError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except TranscriptError as exc:
        print(f"malformed transcript: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILURE
    for game in report.games:
        status = "ok" if game.ok else "FAIL"
        line = f"game {game.index} (seed {game.seed}): {status}"
        if game.problems:
            line += " - " + "; ".join(game.problems)
        print(line)
    print(f"{'all games verified' if report.ok else 'verification FAILED'}")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILURE


def _print_board(state) -> None:
    k = state.k
    deficits = [k - state.degree(v) for v in range(state.n)]
    print(f"turn {state.turn}, {state.mover} to move")
    print(f"edges: {list(state.edges)}")
    print(f"deficits: {deficits}")
    comps = [c for c in components(state) if len(c.vertices) > 1]
    if comps:
        print("components:", "; ".join(f"{c.vertices} (def {c.deficit})" for c in comps))


def cmd_play(args) -> int:
    config = GameConfig(
        n=args.n, k=args.k, first_player="A", seed=args.seed
    )
    human_seat = "A" if args.human_first else "B"
    engine_seat = "B" if args.human_first else "A"
    try:
        engine = make_player(args.engine, engine_seat, config, ell=args.ell)
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    state = new_game(config)
    last_human = None
    print(f"you are {human_seat}; enter moves as 'u v', or 'q' to quit")
    while not is_over(state):
        if state.mover == engine_seat:
            mv = engine.move(state, last_human)
            state = apply_move(state, mv)
            print(f"engine plays {mv.u} {mv.v}")
            continue
        _print_board(state)
        try:
            line = input("> ").strip()
        except EOFError:
            return EXIT_OK
        if line in ("q", "quit", "exit"):
            return EXIT_OK
        try:
            u, v = (int(tok) for tok in line.split())
        except ValueError:
            print("enter two vertex numbers")
            continue
        try:
            state = apply_move(state, Move(u, v, human_seat))
            last_human = Move(u, v, human_seat)
        except IllegalMove as exc:
            print(f"illegal: {exc.reason}")
    _print_board(state)
    from .planarity import is_planar

    print(f"game over after {state.turn} moves; planar: {is_planar(state.edges, state.n)}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    static = args.static
    if static is None:
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        static = str(bundled) if bundled.is_dir() else None
    app = create_app(static_dir=static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "simulate":
        return cmd_simulate(args)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "play":
        return cmd_play(args)
    if args.command == "serve":
        return cmd_serve(args)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
