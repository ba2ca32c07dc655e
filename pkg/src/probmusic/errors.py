"""Typed errors shared across the package."""


class ProbMusicError(Exception):
    """Base class for all domain errors."""


class SpecError(ProbMusicError):
    """A composition spec failed to parse or validate.

    Carries 1-based line/column of the offending token when known.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnbalancedBraces(SpecError):
    pass


class MissingRow(SpecError):
    pass


class EmptyBag(SpecError):
    pass


class BadNoteToken(SpecError):
    pass


class BadOctaveDuration(SpecError):
    pass


class BadToken(ProbMusicError):
    """A score-notation token does not match the token grammar."""


class AmbiguousSequence(ProbMusicError):
    """Score text cannot be re-grouped into words because the spec
    contains multi-note elements."""


class UnknownInstrument(ProbMusicError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown instrument: {name!r}")


class OutOfMidiRange(ProbMusicError):
    def __init__(self, note, value):
        self.note = note
        self.value = value
        super().__init__(f"{note} maps to MIDI note {value}, outside 0..127")


class TooManyStreams(ProbMusicError):
    pass


class DeviceUnavailable(ProbMusicError):
    pass
