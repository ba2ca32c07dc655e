"""probmusic: probabilistic multi-stream MIDI composition and playback."""

from .combinatorics import multiplicity_report, serialization_count, total_count, word_count
from .generator import GenParams, MScore, generate_mscore, generate_piece, pick_from_bag
from .midi_render import SmfDocument, TimingConfig, assemble_smf, render_mscore
from .notation import format_mscore, parse_mscore
from .spec_model import (
    CompositionSpec,
    distinct_counts,
    parse_spec,
    serialize_spec,
    validate_spec,
)

__all__ = [
    "CompositionSpec",
    "GenParams",
    "MScore",
    "SmfDocument",
    "TimingConfig",
    "assemble_smf",
    "distinct_counts",
    "format_mscore",
    "generate_mscore",
    "generate_piece",
    "multiplicity_report",
    "parse_mscore",
    "parse_spec",
    "pick_from_bag",
    "render_mscore",
    "serialization_count",
    "serialize_spec",
    "total_count",
    "validate_spec",
    "word_count",
]
