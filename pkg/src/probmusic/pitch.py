"""Pitch-letter and duration arithmetic.

Octave numbering follows 12*octave + offset, so C5 = 60 (middle C) and
the valid composer octaves 1..10 only partially fit the 0..127 MIDI range
(A10 = 129 is out of range and must be rejected).
"""

from .errors import OutOfMidiRange

PITCH_LETTERS = "ABCDEFG"

# Semitone offsets within an octave, C-rooted.
PITCH_OFFSETS = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}

# Duration letter -> length in quarter notes.
DURATION_QUARTERS = {"w": 4.0, "h": 2.0, "q": 1.0, "i": 0.5}

DEFAULT_OCTAVE = 5

OCTAVE_MIN, OCTAVE_MAX = 1, 10


def note_number(letter, octave=None):
    """MIDI note number for a pitch letter and octave (default octave 5)."""
    if octave is None:
        octave = DEFAULT_OCTAVE
    value = 12 * octave + PITCH_OFFSETS[letter]
    if value > 127:
        raise OutOfMidiRange(f"{letter}{octave}", value)
    return value


def duration_ticks(duration, ppq):
    """Length of a duration letter in MIDI ticks at the given PPQ."""
    return int(DURATION_QUARTERS[duration] * ppq)
