"""General MIDI Level-1 instrument table.

Names are matched case-insensitively with underscores treated as spaces,
so "Choir_AAHS", "choir aahs" and "CHOIR AAHS" all resolve to program 52.
ALIASES adds common alternative spellings (including the underscore-style
names many MIDI libraries use) on top of the 128 published GM names.
"""

import re

from .errors import UnknownInstrument

# Programs 0..127, GM Level-1 order.
GM_PROGRAMS = (
    "Acoustic Grand Piano", "Bright Acoustic Piano", "Electric Grand Piano",
    "Honky-tonk Piano", "Electric Piano 1", "Electric Piano 2",
    "Harpsichord", "Clavi",
    "Celesta", "Glockenspiel", "Music Box", "Vibraphone", "Marimba",
    "Xylophone", "Tubular Bells", "Dulcimer",
    "Drawbar Organ", "Percussive Organ", "Rock Organ", "Church Organ",
    "Reed Organ", "Accordion", "Harmonica", "Tango Accordion",
    "Acoustic Guitar (nylon)", "Acoustic Guitar (steel)",
    "Electric Guitar (jazz)", "Electric Guitar (clean)",
    "Electric Guitar (muted)", "Overdriven Guitar", "Distortion Guitar",
    "Guitar Harmonics",
    "Acoustic Bass", "Electric Bass (finger)", "Electric Bass (pick)",
    "Fretless Bass", "Slap Bass 1", "Slap Bass 2", "Synth Bass 1",
    "Synth Bass 2",
    "Violin", "Viola", "Cello", "Contrabass", "Tremolo Strings",
    "Pizzicato Strings", "Orchestral Harp", "Timpani",
    "String Ensemble 1", "String Ensemble 2", "SynthStrings 1",
    "SynthStrings 2", "Choir Aahs", "Voice Oohs", "Synth Voice",
    "Orchestra Hit",
    "Trumpet", "Trombone", "Tuba", "Muted Trumpet", "French Horn",
    "Brass Section", "SynthBrass 1", "SynthBrass 2",
    "Soprano Sax", "Alto Sax", "Tenor Sax", "Baritone Sax", "Oboe",
    "English Horn", "Bassoon", "Clarinet",
    "Piccolo", "Flute", "Recorder", "Pan Flute", "Blown Bottle",
    "Shakuhachi", "Whistle", "Ocarina",
    "Lead 1 (square)", "Lead 2 (sawtooth)", "Lead 3 (calliope)",
    "Lead 4 (chiff)", "Lead 5 (charang)", "Lead 6 (voice)",
    "Lead 7 (fifths)", "Lead 8 (bass + lead)",
    "Pad 1 (new age)", "Pad 2 (warm)", "Pad 3 (polysynth)",
    "Pad 4 (choir)", "Pad 5 (bowed)", "Pad 6 (metallic)", "Pad 7 (halo)",
    "Pad 8 (sweep)",
    "FX 1 (rain)", "FX 2 (soundtrack)", "FX 3 (crystal)",
    "FX 4 (atmosphere)", "FX 5 (brightness)", "FX 6 (goblins)",
    "FX 7 (echoes)", "FX 8 (sci-fi)",
    "Sitar", "Banjo", "Shamisen", "Koto", "Kalimba", "Bag pipe", "Fiddle",
    "Shanai",
    "Tinkle Bell", "Agogo", "Steel Drums", "Woodblock", "Taiko Drum",
    "Melodic Tom", "Synth Drum", "Reverse Cymbal",
    "Guitar Fret Noise", "Breath Noise", "Seashore", "Bird Tweet",
    "Telephone Ring", "Helicopter", "Applause", "Gunshot",
)

# Alternative names -> program number. Keys are matched through the same
# canonicalization as the GM names themselves.
ALIASES = {
    "piano": 0,
    "grand piano": 0,
    "electric jazz guitar": 26,
    "electric clean guitar": 27,
    "electric muted guitar": 28,
    "nylon guitar": 24,
    "steel guitar": 25,
    "finger bass": 33,
    "pick bass": 34,
    "choir": 52,
    "choir aahs": 52,
    "synth strings 1": 50,
    "synth strings 2": 51,
    "synth brass 1": 62,
    "synth brass 2": 63,
    "harp": 46,
    "strings": 48,
    "square": 80,
    "sawtooth": 81,
    "calliope": 82,
    "chiff": 83,
    "charang": 84,
    "voice": 85,
    "fifths": 86,
    "bass lead": 87,
    "new age": 88,
    "warm": 89,
    "polysynth": 90,
    "bowed": 92,
    "metallic": 93,
    "halo": 94,
    "sweep": 95,
    "rain": 96,
    "soundtrack": 97,
    "crystal": 98,
    "atmosphere": 99,
    "brightness": 100,
    "goblins": 101,
    "echoes": 102,
    "sci fi": 103,
    "bagpipe": 109,
    "fret noise": 120,
}


def canonical_name(name):
    """Lower-case, underscores to spaces, collapsed whitespace."""
    return re.sub(r"\s+", " ", name.replace("_", " ")).strip().lower()


def _build_table():
    table = {}
    for program, name in enumerate(GM_PROGRAMS):
        table[canonical_name(name)] = program
        # Parenthesized qualifiers are also accepted bare: "electric
        # guitar jazz" for "Electric Guitar (jazz)".
        stripped = canonical_name(re.sub(r"[()+-]", " ", name))
        table.setdefault(stripped, program)
    for alias, program in ALIASES.items():
        table.setdefault(canonical_name(alias), program)
    return table


_TABLE = _build_table()


def program_number(name):
    """GM Level-1 program number (0-based) for an instrument name."""
    try:
        return _TABLE[canonical_name(name)]
    except KeyError:
        raise UnknownInstrument(name) from None


def is_known(name):
    return canonical_name(name) in _TABLE


def all_names():
    """The 128 canonical GM names, program order."""
    return GM_PROGRAMS
