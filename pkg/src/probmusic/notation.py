"""Console notation for mscores.

Tokens: `T[Name]` tempo, `I[Name]` instrument change, and note tokens
like `A3q` or `Eh` (pitch letter, optional octave, duration letter).
A multi-note word is flattened to consecutive note tokens sharing the
word's octave-duration pick.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime

from .errors import AmbiguousSequence, BadToken
from .generator import InstrumentChange, MScore, Tempo, Word
from .spec_model import CompositionSpec, NoteElement, parse_octave_duration

HEADER_TIME_FORMAT = "%Y/%m/%d %H:%M:%S"

_TEMPO_RE = re.compile(r"^T\[([A-Za-z]+)\]$")
_INSTR_RE = re.compile(r"^I\[([A-Za-z0-9_ ]+)\]$")
_NOTE_RE = re.compile(r"^([A-G])(10|[1-9])?([whqi])$")


@dataclass(frozen=True)
class ScoreText:
    header: str
    body: str

    def __str__(self):
        return f"{self.header}\n{self.body}\n"


def format_header(stream_index, start_time: datetime):
    return (
        f"Thread No{stream_index} has started on "
        f"{start_time.strftime(HEADER_TIME_FORMAT)}"
    )


def format_event(event):
    if isinstance(event, Tempo):
        return f"T[{event.name}]"
    if isinstance(event, InstrumentChange):
        return f"I[{event.instrument}]"
    od = str(event.od)
    return " ".join(f"{letter}{od}" for letter in event.notes.letters)


def format_mscore(m: MScore, start_time: datetime) -> ScoreText:
    body = " ".join(format_event(e) for e in m.events)
    return ScoreText(format_header(m.stream_index, start_time), body)


def parse_mscore(text, spec: CompositionSpec) -> MScore:
    """Inverse of format_mscore (header timestamp discarded).

    Only specs whose note bag holds single-note elements can be parsed
    back: multi-note elements make token grouping ambiguous.
    """
    if spec.has_multinote_elements():
        raise AmbiguousSequence(
            "spec contains multi-note elements; token grouping is ambiguous"
        )
    stream_index = 0
    if isinstance(text, ScoreText):
        body = text.body
        m = re.match(r"^Thread No(\d+)", text.header)
        if m:
            stream_index = int(m.group(1))
    else:
        lines = [ln for ln in str(text).splitlines() if ln.strip()]
        if lines:
            m = re.match(r"^Thread No(\d+)", lines[0])
            if m:
                stream_index = int(m.group(1))
                lines = lines[1:]
        body = " ".join(lines)

    events = []
    for token in body.split():
        m = _TEMPO_RE.match(token)
        if m:
            events.append(Tempo(m.group(1)))
            continue
        m = _INSTR_RE.match(token)
        if m:
            events.append(InstrumentChange(m.group(1)))
            continue
        m = _NOTE_RE.match(token)
        if m:
            letter, octave, duration = m.groups()
            od = parse_octave_duration(f"{octave or ''}{duration}")
            events.append(Word(NoteElement((letter,)), od))
            continue
        raise BadToken(f"bad score token {token!r}")
    return MScore(tuple(events), stream_index)
