"""Composition specifications: the four-row brace format.

A spec is four (optionally five) brace-delimited rows of quoted strings:
title, note bag, octave-duration bag, instrument bag, and an optional
keyword row. All bags are ordered multisets; duplicating an element
raises its selection probability proportionally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import instruments
from .errors import (
    BadNoteToken,
    BadOctaveDuration,
    EmptyBag,
    MissingRow,
    SpecError,
    UnbalancedBraces,
)
from .pitch import (
    DURATION_QUARTERS,
    OCTAVE_MAX,
    OCTAVE_MIN,
    PITCH_OFFSETS,
    note_number,
)
from .errors import OutOfMidiRange


@dataclass(frozen=True)
class NoteElement:
    """One note-bag entry: a single pitch letter or a sequence of them."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise BadNoteToken("empty note element")
        for letter in self.letters:
            if letter not in PITCH_OFFSETS:
                raise BadNoteToken(f"{letter!r} is not a pitch letter")

    def __str__(self):
        return " ".join(self.letters)


@dataclass(frozen=True)
class OctaveDurationToken:
    """Octave digit(s) 1..10 (optional) followed by a duration letter."""

    octave: int | None
    duration: str

    def __post_init__(self):
        if self.duration not in DURATION_QUARTERS:
            raise BadOctaveDuration(f"unknown duration letter {self.duration!r}")
        if self.octave is not None and not OCTAVE_MIN <= self.octave <= OCTAVE_MAX:
            raise BadOctaveDuration(f"octave {self.octave} out of range 1..10")

    def __str__(self):
        return f"{self.octave if self.octave is not None else ''}{self.duration}"


_OD_RE = re.compile(r"^(10|[1-9])?([a-z])$")


def parse_octave_duration(text):
    m = _OD_RE.match(text)
    if not m:
        raise BadOctaveDuration(f"bad octave-duration token {text!r}")
    octave = int(m.group(1)) if m.group(1) else None
    return OctaveDurationToken(octave, m.group(2))


_INSTRUMENT_RE = re.compile(r"^[A-Za-z0-9_ ]+$")


@dataclass(frozen=True)
class CompositionSpec:
    title: str
    notes: tuple[NoteElement, ...]
    octave_durations: tuple[OctaveDurationToken, ...]
    instruments: tuple[str, ...]
    keywords: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.notes:
            raise EmptyBag("note bag is empty")
        if not self.octave_durations:
            raise EmptyBag("octave-duration bag is empty")
        if not self.instruments:
            raise EmptyBag("instrument bag is empty")

    def has_multinote_elements(self):
        return any(len(e.letters) > 1 for e in self.notes)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str


# ---------------------------------------------------------------------------
# Tokenizer / parser

_PUNCT = {"{", "}", ","}


def _tokenize(text):
    """Yield (kind, value, line, col); kind is 'punct' or 'string'."""
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
        elif c.isspace():
            i += 1
            col += 1
        elif c == "/" and text[i : i + 2] == "//":
            while i < n and text[i] != "\n":
                i += 1
        elif c in _PUNCT:
            tokens.append(("punct", c, line, col))
            i += 1
            col += 1
        elif c == '"':
            start_line, start_col = line, col
            i += 1
            col += 1
            buf = []
            while i < n and text[i] != '"':
                if text[i] == "\n":
                    line += 1
                    col = 1
                else:
                    col += 1
                buf.append(text[i])
                i += 1
            if i >= n:
                raise SpecError("unterminated string", start_line, start_col)
            i += 1
            col += 1
            tokens.append(("string", "".join(buf), start_line, start_col))
        else:
            raise SpecError(f"unexpected character {c!r}", line, col)
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def expect_punct(self, value, err=SpecError):
        tok = self.peek()
        if tok is None:
            raise err(f"expected {value!r}, got end of input")
        kind, val, line, col = tok
        if kind != "punct" or val != value:
            raise err(f"expected {value!r}, got {val!r}", line, col)
        self.pos += 1
        return tok

    def parse_rows(self):
        self.expect_punct("{", UnbalancedBraces)
        rows = []
        while True:
            tok = self.peek()
            if tok is None:
                raise UnbalancedBraces("missing closing brace")
            if tok[0] == "punct" and tok[1] == "}":
                self.pos += 1
                break
            rows.append(self.parse_row())
            tok = self.peek()
            if tok is None:
                raise UnbalancedBraces("missing closing brace")
            if tok[0] == "punct" and tok[1] == ",":
                self.pos += 1
            elif not (tok[0] == "punct" and tok[1] == "}"):
                raise SpecError(f"expected ',' or '}}', got {tok[1]!r}", tok[2], tok[3])
        tok = self.peek()
        if tok is not None:
            raise SpecError("trailing input after spec", tok[2], tok[3])
        return rows

    def parse_row(self):
        open_tok = self.expect_punct("{", UnbalancedBraces)
        strings = []
        while True:
            tok = self.peek()
            if tok is None:
                raise UnbalancedBraces("missing closing brace in row")
            if tok[0] == "punct" and tok[1] == "}":
                self.pos += 1
                break
            if tok[0] != "string":
                raise SpecError(f"expected string, got {tok[1]!r}", tok[2], tok[3])
            strings.append(tok)
            self.pos += 1
            tok = self.peek()
            if tok is None:
                raise UnbalancedBraces("missing closing brace in row")
            if tok[0] == "punct" and tok[1] == ",":
                self.pos += 1
            elif not (tok[0] == "punct" and tok[1] == "}"):
                raise SpecError(f"expected ',' or '}}', got {tok[1]!r}", tok[2], tok[3])
        return open_tok, strings


def _positioned(err_cls, message, tok):
    return err_cls(message, tok[2], tok[3])


def parse_spec(text) -> CompositionSpec:
    """Parse brace-format spec text. Raises SpecError subclasses."""
    rows = _Parser(_tokenize(text)).parse_rows()
    if len(rows) < 4:
        raise MissingRow(f"spec has {len(rows)} rows, need at least 4")
    if len(rows) > 5:
        raise SpecError(f"spec has {len(rows)} rows, at most 5 allowed")

    title_tok, title_strings = rows[0]
    if len(title_strings) != 1:
        raise _positioned(SpecError, "title row must contain exactly one string", title_tok)
    title = title_strings[0][1]

    notes = []
    for tok in rows[1][1]:
        parts = tok[1].split()
        if not parts:
            raise _positioned(BadNoteToken, "empty note element", tok)
        try:
            notes.append(NoteElement(tuple(parts)))
        except BadNoteToken as exc:
            raise _positioned(BadNoteToken, str(exc), tok) from None
    if not notes:
        raise _positioned(EmptyBag, "note bag is empty", rows[1][0])

    ods = []
    for tok in rows[2][1]:
        try:
            ods.append(parse_octave_duration(tok[1].strip()))
        except BadOctaveDuration as exc:
            raise _positioned(BadOctaveDuration, str(exc), tok) from None
    if not ods:
        raise _positioned(EmptyBag, "octave-duration bag is empty", rows[2][0])

    instrs = []
    for tok in rows[3][1]:
        name = tok[1].strip()
        if not name or not _INSTRUMENT_RE.match(name):
            raise _positioned(SpecError, f"bad instrument name {tok[1]!r}", tok)
        instrs.append(name)
    if not instrs:
        raise _positioned(EmptyBag, "instrument bag is empty", rows[3][0])

    keywords = frozenset()
    if len(rows) == 5:
        keywords = frozenset(tok[1].strip() for tok in rows[4][1] if tok[1].strip())

    return CompositionSpec(
        title=title,
        notes=tuple(notes),
        octave_durations=tuple(ods),
        instruments=tuple(instrs),
        keywords=keywords,
    )


def serialize_spec(spec: CompositionSpec) -> str:
    """Emit the brace format; re-parsing yields a structurally equal spec."""

    def row(items):
        return "  {" + ",".join(f'"{item}"' for item in items) + "},"

    lines = ["{"]
    lines.append(row([spec.title]))
    lines.append(row(str(e) for e in spec.notes))
    lines.append(row(str(od) for od in spec.octave_durations))
    lines.append(row(spec.instruments))
    if spec.keywords:
        lines.append(row(sorted(spec.keywords)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def validate_spec(spec: CompositionSpec) -> list[Violation]:
    """Range-check every reachable note and resolve every instrument."""
    violations = []
    octaves = {od.octave for od in spec.octave_durations}
    letters = {letter for e in spec.notes for letter in e.letters}
    for letter in sorted(letters):
        for octave in sorted(octaves, key=lambda o: (o is None, o)):
            try:
                note_number(letter, octave)
            except OutOfMidiRange as exc:
                violations.append(Violation("OutOfMidiRange", str(exc)))
    for name in spec.instruments:
        if not instruments.is_known(name):
            violations.append(
                Violation("UnknownInstrument", f"unknown instrument: {name!r}")
            )
    return violations


def distinct_counts(spec: CompositionSpec):
    """(|N|, |OD|, |I|): set cardinalities of the three bags."""
    n = len(set(spec.notes))
    od = len(set(spec.octave_durations))
    i = len({instruments.canonical_name(name) for name in spec.instruments})
    return n, od, i
