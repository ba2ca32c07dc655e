"""Independent Standard MIDI File structural checker.

Written directly against the SMF specification; deliberately shares no
code with the package's writer so it can act as an oracle for it.
"""

from dataclasses import dataclass


class SmfStructureError(AssertionError):
    pass


@dataclass
class ParsedEvent:
    tick: int
    status: int
    data: tuple


@dataclass
class ParsedSmf:
    format: int
    ntrks: int
    division: int
    tracks: list  # list of list[ParsedEvent]


def read_vlq(data, pos):
    value = 0
    for _ in range(4):
        if pos >= len(data):
            raise SmfStructureError("VLQ runs past end of track")
        byte = data[pos]
        pos += 1
        value = (value << 7) | (byte & 0x7F)
        if not byte & 0x80:
            return value, pos
    raise SmfStructureError("VLQ longer than 4 bytes")


def _parse_track(data):
    events = []
    pos = 0
    tick = 0
    running_status = None
    ended = False
    while pos < len(data):
        if ended:
            raise SmfStructureError("data after end-of-track meta")
        delta, pos = read_vlq(data, pos)
        tick += delta
        status = data[pos]
        if status & 0x80:
            pos += 1
            if status < 0xF0:
                running_status = status
        else:
            if running_status is None:
                raise SmfStructureError("data byte with no running status")
            status = running_status
        if status == 0xFF:
            meta_type = data[pos]
            pos += 1
            length, pos = read_vlq(data, pos)
            payload = data[pos : pos + length]
            if len(payload) != length:
                raise SmfStructureError("meta event truncated")
            pos += length
            events.append(ParsedEvent(tick, status, (meta_type, bytes(payload))))
            if meta_type == 0x2F:
                ended = True
        elif status in (0xF0, 0xF7):
            length, pos = read_vlq(data, pos)
            pos += length
            events.append(ParsedEvent(tick, status, ()))
        else:
            kind = status & 0xF0
            n_data = 1 if kind in (0xC0, 0xD0) else 2
            payload = data[pos : pos + n_data]
            if len(payload) != n_data:
                raise SmfStructureError("channel event truncated")
            for b in payload:
                if b > 0x7F:
                    raise SmfStructureError(f"data byte {b:#x} out of range")
            pos += n_data
            events.append(ParsedEvent(tick, status, tuple(payload)))
    if not ended:
        raise SmfStructureError("track missing end-of-track meta")
    return events


def parse_smf(blob) -> ParsedSmf:
    if blob[:4] != b"MThd":
        raise SmfStructureError("missing MThd")
    header_len = int.from_bytes(blob[4:8], "big")
    if header_len != 6:
        raise SmfStructureError(f"bad header length {header_len}")
    fmt = int.from_bytes(blob[8:10], "big")
    ntrks = int.from_bytes(blob[10:12], "big")
    division = int.from_bytes(blob[12:14], "big")
    pos = 14
    tracks = []
    while pos < len(blob):
        if blob[pos : pos + 4] != b"MTrk":
            raise SmfStructureError(f"expected MTrk at offset {pos}")
        length = int.from_bytes(blob[pos + 4 : pos + 8], "big")
        body = blob[pos + 8 : pos + 8 + length]
        if len(body) != length:
            raise SmfStructureError("track chunk truncated")
        tracks.append(_parse_track(body))
        pos += 8 + length
    if len(tracks) != ntrks:
        raise SmfStructureError(f"header says {ntrks} tracks, found {len(tracks)}")
    return ParsedSmf(fmt, ntrks, division, tracks)


def check_note_pairing(parsed: ParsedSmf):
    """Every note-on has a later matching note-off on its channel/note."""
    for track in parsed.tracks:
        open_notes = {}
        for event in track:
            kind = event.status & 0xF0
            channel = event.status & 0x0F
            if kind == 0x90 and event.data[1] > 0:
                open_notes.setdefault((channel, event.data[0]), []).append(event.tick)
            elif kind == 0x80 or (kind == 0x90 and event.data[1] == 0):
                key = (channel, event.data[0])
                if not open_notes.get(key):
                    raise SmfStructureError(f"unmatched note-off {key}")
                open_notes[key].pop(0)
        leftovers = {k: v for k, v in open_notes.items() if v}
        if leftovers:
            raise SmfStructureError(f"unclosed notes: {leftovers}")


def check_monotone_ticks(parsed: ParsedSmf):
    for track in parsed.tracks:
        ticks = [e.tick for e in track]
        if ticks != sorted(ticks):
            raise SmfStructureError("non-monotone ticks in track")


def full_check(blob) -> ParsedSmf:
    parsed = parse_smf(blob)
    check_monotone_ticks(parsed)
    check_note_pairing(parsed)
    return parsed
