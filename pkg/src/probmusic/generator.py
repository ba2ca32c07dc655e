"""Seeded weighted random generation of mscores.

Each stream draws from its own substream of the master seed, so a piece
is fully determined by (spec, params) while streams stay statistically
independent of each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import EmptyBag, TooManyStreams
from .spec_model import CompositionSpec, NoteElement, OctaveDurationToken

DEFAULT_LENGTH = 120
DEFAULT_STREAMS = 3
DEFAULT_CHANGE_PROB = 0.4
DEFAULT_STAGGER_S = 3.0
DEFAULT_TEMPO_NAME = "Allegro"

MAX_STREAMS = 15  # 16 MIDI channels minus the percussion channel


@dataclass(frozen=True)
class GenParams:
    length_ms: int = DEFAULT_LENGTH
    streams_k: int = DEFAULT_STREAMS
    change_prob_p: float = DEFAULT_CHANGE_PROB
    stagger_s: float = DEFAULT_STAGGER_S
    master_seed: int = 0

    def __post_init__(self):
        if self.length_ms < 1:
            raise ValueError("length_ms must be >= 1")
        if not 1 <= self.streams_k <= MAX_STREAMS:
            raise TooManyStreams(
                f"streams_k must be in 1..{MAX_STREAMS}, got {self.streams_k}"
            )
        if not 0.0 <= self.change_prob_p <= 1.0:
            raise ValueError("change_prob_p must be in [0, 1]")
        if self.stagger_s < 0:
            raise ValueError("stagger_s must be >= 0")


@dataclass(frozen=True)
class Tempo:
    name: str = DEFAULT_TEMPO_NAME


@dataclass(frozen=True)
class InstrumentChange:
    instrument: str


@dataclass(frozen=True)
class Word:
    notes: NoteElement
    od: OctaveDurationToken


ScoreEvent = Tempo | InstrumentChange | Word


@dataclass(frozen=True)
class MScore:
    events: tuple[ScoreEvent, ...]
    stream_index: int = 0

    def words(self):
        return [e for e in self.events if isinstance(e, Word)]


_MASK64 = (1 << 64) - 1


def _splitmix64(x):
    """One round of the splitmix64 avalanche; mixes seeds for substreams."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def substream_rng(master_seed, index):
    """Deterministic per-stream RNG derived from (master_seed, index)."""
    mixed = _splitmix64((master_seed & _MASK64) ^ _splitmix64(index))
    return random.Random(mixed)


def pick_from_bag(bag, rng):
    """Uniform pick over bag positions; duplicates weight accordingly."""
    if not bag:
        raise EmptyBag("cannot pick from an empty bag")
    return bag[rng.randrange(len(bag))]


def generate_mscore(spec: CompositionSpec, params: GenParams, rng, stream_index=0):
    """One stream: tempo, initial instrument, then exactly length_ms words.

    After every word except the last, the instrument is re-picked with
    probability change_prob_p; the fresh pick may repeat the current
    instrument and is still emitted.
    """
    events = [Tempo(), InstrumentChange(pick_from_bag(spec.instruments, rng))]
    for w in range(params.length_ms):
        note = pick_from_bag(spec.notes, rng)
        od = pick_from_bag(spec.octave_durations, rng)
        events.append(Word(note, od))
        if w < params.length_ms - 1 and rng.random() < params.change_prob_p:
            events.append(InstrumentChange(pick_from_bag(spec.instruments, rng)))
    return MScore(tuple(events), stream_index)


def generate_piece(spec: CompositionSpec, params: GenParams):
    """K mscores, stream i seeded from substream (master_seed, i)."""
    return [
        generate_mscore(spec, params, substream_rng(params.master_seed, i), i)
        for i in range(params.streams_k)
    ]
