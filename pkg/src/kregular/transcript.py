"""Replayable game records and their JSONL wire format.

One game serializes as UTF-8 JSON lines: a config line
``{"k":3,"n":20,"first":"A","seed":42}`` followed by one line per move
``{"t":1,"player":"A","u":0,"v":1}`` (t counts from 1, vertex indices
0-based), optionally closed by a single ``{"annotations":{...}}`` line.
A file may hold several games back to back; each new config line starts
the next one.  Encoding is canonical (no spaces, fixed key order), so
decode-encode round-trips are byte identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

from .errors import IllegalMove, TranscriptError
from .game import GameConfig, GameState, Move, apply_move, new_game

_SEPARATORS = (",", ":")


@dataclass(frozen=True)
class Transcript:
    """Full record of one game: config, ordered moves, optional verdicts."""

    config: GameConfig
    moves: tuple[Move, ...]
    annotations: dict[str, Any] | None = None

    def final_state(self) -> GameState:
        return replay(self)

    def prefix_state(self, upto: int) -> GameState:
        """Replay the first ``upto`` moves."""
        state = new_game(self.config)
        for move in self.moves[:upto]:
            state = apply_move(state, move)
        return state


def replay(t: Transcript) -> GameState:
    """Replay all moves from the empty graph, validating legality."""
    state = new_game(t.config)
    for i, move in enumerate(t.moves):
        try:
            state = apply_move(state, move)
        except IllegalMove as exc:
            raise TranscriptError(f"illegal move at turn {i + 1}: {exc}", turn=i + 1)
    return state


def encode_transcript(t: Transcript) -> bytes:
    """Serialize one game to canonical JSONL bytes."""
    lines = [
        json.dumps(
            {
                "k": t.config.k,
                "n": t.config.n,
                "first": t.config.first_player,
                "seed": t.config.seed,
            },
            separators=_SEPARATORS,
        )
    ]
    for i, move in enumerate(t.moves):
        lines.append(
            json.dumps(
                {"t": i + 1, "player": move.player, "u": move.u, "v": move.v},
                separators=_SEPARATORS,
            )
        )
    if t.annotations:
        lines.append(
            json.dumps({"annotations": t.annotations}, separators=_SEPARATORS, sort_keys=True)
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def decode_transcript(data: bytes) -> Transcript:
    """Parse and validate a single-game stream (replays every move)."""
    games = list(iter_transcripts(data))
    if not games:
        raise TranscriptError("empty transcript stream")
    if len(games) > 1:
        raise TranscriptError(f"expected one game, stream holds {len(games)}")
    return games[0]


def iter_transcripts(data: bytes, validate: bool = True) -> Iterator[Transcript]:
    """Yield every game in a (possibly multi-game) JSONL stream.

    With ``validate`` (the default) each yielded transcript has been
    replayed from the empty graph, so illegal streams fail here with the
    offending turn index; the verifier parses without validation and
    reports replay problems itself.
    """
    config: GameConfig | None = None
    moves: list[Move] = []
    annotations: dict[str, Any] | None = None
    lineno = 0

    def flush() -> Transcript | None:
        nonlocal config, moves, annotations
        if config is None:
            return None
        t = Transcript(config, tuple(moves), annotations)
        if validate:
            replay(t)
        config, moves, annotations = None, [], None
        return t

    for raw in data.decode("utf-8").splitlines():
        lineno += 1
        raw = raw.strip()
        if not raw:
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise TranscriptError(f"line {lineno}: invalid JSON ({exc.msg})")
        if not isinstance(obj, dict):
            raise TranscriptError(f"line {lineno}: expected a JSON object")
        if "k" in obj and "n" in obj:
            done = flush()
            if done is not None:
                yield done
            try:
                config = GameConfig(
                    n=obj["n"],
                    k=obj["k"],
                    first_player=obj.get("first", "A"),
                    seed=obj.get("seed", 0),
                )
            except Exception as exc:
                raise TranscriptError(f"line {lineno}: bad config ({exc})")
        elif "annotations" in obj:
            if config is None:
                raise TranscriptError(f"line {lineno}: annotations before any config")
            annotations = obj["annotations"]
        elif "t" in obj:
            if config is None:
                raise TranscriptError(f"line {lineno}: move before any config")
            if annotations is not None:
                raise TranscriptError(f"line {lineno}: move after annotations")
            try:
                move = Move(u=obj["u"], v=obj["v"], player=obj["player"])
            except Exception as exc:
                raise TranscriptError(f"line {lineno}: bad move ({exc})")
            if obj["t"] != len(moves) + 1:
                raise TranscriptError(
                    f"line {lineno}: move index {obj['t']} out of order",
                    turn=len(moves) + 1,
                )
            moves.append(move)
        else:
            raise TranscriptError(f"line {lineno}: unrecognized record")
    done = flush()
    if done is not None:
        yield done


def write_transcripts(path: str, transcripts: Iterable[Transcript]) -> int:
    """Append-encode the given games into one file; returns count."""
    count = 0
    with open(path, "wb") as fh:
        for t in transcripts:
            fh.write(encode_transcript(t))
            count += 1
    return count


def read_transcripts(path: str) -> list[Transcript]:
    with open(path, "rb") as fh:
        return list(iter_transcripts(fh.read()))
