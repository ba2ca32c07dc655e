"""Offline rendering: mscores -> tick-stamped events -> type-1 SMF bytes.

Rendering is a pure function of its inputs, so the same (spec, params,
timing) always produces byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import TooManyStreams
from .generator import GenParams, InstrumentChange, MScore, Tempo, Word
from .instruments import program_number
from .pitch import duration_ticks, note_number

PERCUSSION_CHANNEL = 9

PROGRAM_CHANGE = "program_change"
NOTE_ON = "note_on"
NOTE_OFF = "note_off"
CONTROL_CHANGE = "control_change"

VOLUME_CC = 7
ALL_NOTES_OFF_CC = 123

FADE_WINDOW_S = 5.0
FADE_STEPS = 20
BASELINE_VOLUME = 100


@dataclass(frozen=True)
class TimingConfig:
    ppq: int = 480
    bpm: int = 120  # the tempo assigned to "Allegro"
    velocity: int = 64

    def __post_init__(self):
        if self.ppq <= 0:
            raise ValueError("ppq must be positive")
        if not 20 <= self.bpm <= 300:
            raise ValueError("bpm must be in 20..300")
        if not 0 <= self.velocity <= 127:
            raise ValueError("velocity must be in 0..127")

    def seconds_to_ticks(self, seconds):
        return round(seconds * (self.bpm / 60.0) * self.ppq)

    def ticks_to_seconds(self, ticks):
        return ticks / self.ppq * 60.0 / self.bpm


@dataclass(frozen=True)
class MidiEvent:
    tick: int
    channel: int
    kind: str
    data1: int  # note / program / controller number
    data2: int = 0  # velocity / controller value


# Sort order inside one tick: setup messages, then offs, then ons.
_KIND_ORDER = {PROGRAM_CHANGE: 0, CONTROL_CHANGE: 0, NOTE_OFF: 1, NOTE_ON: 2}


def _event_key(e):
    return (e.tick, _KIND_ORDER[e.kind])


@dataclass(frozen=True)
class SmfDocument:
    ppq: int
    bpm: int
    tracks: tuple[tuple[MidiEvent, ...], ...]
    format: int = 1


def stream_channel(index):
    """Melodic channel for stream index; skips the percussion channel."""
    return index if index < PERCUSSION_CHANNEL else index + 1


def render_mscore(m: MScore, channel, timing: TimingConfig):
    """Walk score events with a tick cursor starting at 0."""
    events = []
    cursor = 0
    for event in m.events:
        if isinstance(event, Tempo):
            continue  # tempo lives in the document header
        if isinstance(event, InstrumentChange):
            events.append(
                MidiEvent(cursor, channel, PROGRAM_CHANGE, program_number(event.instrument))
            )
        elif isinstance(event, Word):
            ticks = duration_ticks(event.od.duration, timing.ppq)
            for letter in event.notes.letters:
                number = note_number(letter, event.od.octave)
                events.append(MidiEvent(cursor, channel, NOTE_ON, number, timing.velocity))
                events.append(MidiEvent(cursor + ticks, channel, NOTE_OFF, number))
                cursor += ticks
    return sorted(events, key=_event_key)


def apply_fadeout(track, channel, timing: TimingConfig, window_s=FADE_WINDOW_S):
    """Volume ramp over the final window: CC7 steps from 100 down to 0.

    A CC7=100 at tick 0 establishes the baseline so earlier material
    plays at full volume.
    """
    events = list(track)
    baseline = MidiEvent(0, channel, CONTROL_CHANGE, VOLUME_CC, BASELINE_VOLUME)
    if not events:
        return [baseline]
    end_tick = max(e.tick for e in events)
    start_tick = max(0, end_tick - timing.seconds_to_ticks(window_s))
    span = end_tick - start_tick
    fade = [
        MidiEvent(
            start_tick + round(span * k / (FADE_STEPS - 1)),
            channel,
            CONTROL_CHANGE,
            VOLUME_CC,
            round(BASELINE_VOLUME * (FADE_STEPS - 1 - k) / (FADE_STEPS - 1)),
        )
        for k in range(FADE_STEPS)
    ]
    return sorted(events + [baseline] + fade, key=_event_key)


def assemble_smf(mscores, params: GenParams, timing: TimingConfig):
    """Build the SmfDocument and its serialized bytes.

    Stream i renders on its own channel and track, every tick offset by
    round(i * stagger_s * bpm/60 * ppq); fade-out applied per track.
    """
    if len(mscores) > 15:
        raise TooManyStreams(f"{len(mscores)} streams exceed the 15-channel budget")
    tracks = []
    for i, m in enumerate(mscores):
        channel = stream_channel(i)
        events = render_mscore(m, channel, timing)
        events = apply_fadeout(events, channel, timing)
        offset = timing.seconds_to_ticks(i * params.stagger_s)
        tracks.append(tuple(replace(e, tick=e.tick + offset) for e in events))
    doc = SmfDocument(ppq=timing.ppq, bpm=timing.bpm, tracks=tuple(tracks))
    return doc, write_smf(doc)


# ---------------------------------------------------------------------------
# SMF serialization

def encode_vlq(value):
    """MIDI variable-length quantity, big-endian 7-bit groups."""
    if value < 0:
        raise ValueError("VLQ must be non-negative")
    out = bytearray([value & 0x7F])
    value >>= 7
    while value:
        out.insert(0, 0x80 | (value & 0x7F))
        value >>= 7
    return bytes(out)


def _event_bytes(e: MidiEvent):
    if e.kind == NOTE_ON:
        return bytes([0x90 | e.channel, e.data1, e.data2])
    if e.kind == NOTE_OFF:
        return bytes([0x80 | e.channel, e.data1, 0])
    if e.kind == PROGRAM_CHANGE:
        return bytes([0xC0 | e.channel, e.data1])
    if e.kind == CONTROL_CHANGE:
        return bytes([0xB0 | e.channel, e.data1, e.data2])
    raise ValueError(f"unknown event kind {e.kind!r}")


def _tempo_meta(bpm):
    usec_per_quarter = round(60_000_000 / bpm)
    return b"\xff\x51\x03" + usec_per_quarter.to_bytes(3, "big")


def write_smf(doc: SmfDocument) -> bytes:
    header = b"MThd" + (6).to_bytes(4, "big")
    header += doc.format.to_bytes(2, "big")
    header += len(doc.tracks).to_bytes(2, "big")
    header += doc.ppq.to_bytes(2, "big")

    chunks = [header]
    for index, track in enumerate(doc.tracks):
        body = bytearray()
        cursor = 0
        if index == 0:
            body += encode_vlq(0) + _tempo_meta(doc.bpm)
        for event in sorted(track, key=_event_key):
            body += encode_vlq(event.tick - cursor)
            body += _event_bytes(event)
            cursor = event.tick
        body += encode_vlq(0) + b"\xff\x2f\x00"
        chunks.append(b"MTrk" + len(body).to_bytes(4, "big") + bytes(body))
    return b"".join(chunks)
