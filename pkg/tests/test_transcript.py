"""JSONL transcript round-trips and replay validation."""

from __future__ import annotations

import json
import random

import pytest

from kregular.errors import TranscriptError
from kregular.game import GameConfig, Move, apply_move, is_over, legal_moves, new_game
from kregular.transcript import (
    Transcript,
    decode_transcript,
    encode_transcript,
    iter_transcripts,
)


def random_transcript(rng: random.Random, n=8, k=3, stop_early=False) -> Transcript:
    config = GameConfig(n=n, k=k, seed=rng.randrange(2**32))
    state = new_game(config)
    moves = []
    while not is_over(state):
        options = legal_moves(state)
        u, v = options[rng.randrange(len(options))]
        mv = Move(u, v, state.mover)
        state = apply_move(state, mv)
        moves.append(mv)
        if stop_early and rng.random() < 0.2:
            break
    return Transcript(config, tuple(moves))


def test_empty_move_list_round_trips():
    t = Transcript(GameConfig(n=4, k=3, seed=9), ())
    assert decode_transcript(encode_transcript(t)) == t


def test_exact_wire_format():
    t = Transcript(
        GameConfig(n=20, k=3, first_player="A", seed=42),
        (Move(0, 1, "A"), Move(2, 3, "B")),
    )
    lines = encode_transcript(t).decode().splitlines()
    assert lines[0] == '{"k":3,"n":20,"first":"A","seed":42}'
    assert lines[1] == '{"t":1,"player":"A","u":0,"v":1}'
    assert lines[2] == '{"t":2,"player":"B","u":2,"v":3}'


def test_ten_move_game_round_trips_byte_identical(rng):
    for _ in range(25):
        t = random_transcript(rng, stop_early=True)
        data = encode_transcript(t)
        again = encode_transcript(decode_transcript(data))
        assert again == data


def test_duplicate_edge_fails_at_turn():
    t = Transcript(GameConfig(n=4, k=3), (Move(0, 1, "A"),))
    data = encode_transcript(t)
    bad = data + b'{"t":2,"player":"B","u":0,"v":1}\n'
    with pytest.raises(TranscriptError) as err:
        decode_transcript(bad)
    assert err.value.turn == 2


def test_malformed_json_rejected():
    with pytest.raises(TranscriptError):
        decode_transcript(b'{"k":3,"n":4}\nnot json\n')


def test_move_before_config_rejected():
    with pytest.raises(TranscriptError):
        decode_transcript(b'{"t":1,"player":"A","u":0,"v":1}\n')


def test_out_of_order_index_rejected():
    with pytest.raises(TranscriptError):
        decode_transcript(
            b'{"k":3,"n":4,"first":"A","seed":0}\n{"t":2,"player":"A","u":0,"v":1}\n'
        )


def test_annotations_round_trip():
    t = Transcript(
        GameConfig(n=4, k=3),
        (Move(0, 1, "A"),),
        {"planar": True, "players": {"A": "planar", "B": "random"}},
    )
    back = decode_transcript(encode_transcript(t))
    assert back.annotations == t.annotations


def test_multi_game_stream(rng):
    games = [random_transcript(rng, n=6) for _ in range(3)]
    blob = b"".join(encode_transcript(t) for t in games)
    parsed = list(iter_transcripts(blob))
    assert parsed == games


def test_wrong_player_tag_rejected():
    raw = b'{"k":3,"n":4,"first":"A","seed":0}\n{"t":1,"player":"B","u":0,"v":1}\n'
    with pytest.raises(TranscriptError):
        decode_transcript(raw)
