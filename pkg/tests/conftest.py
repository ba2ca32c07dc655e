import pytest
from hypothesis import strategies as st

from probmusic.spec_model import (
    CompositionSpec,
    NoteElement,
    OctaveDurationToken,
)

# Verbatim text of the example piece used throughout the suite.
FIG1_TEXT = """{
  {"Relaxing, Oct 24, 2013"},
  {"A","C","E","G"},
  {"3q","2h","5w","h","4h"},
  {"Oboe","ELECTRIC_JAZZ_GUITAR","Atmosphere","Choir","Choir_AAHS"},
}
"""

MINIMAL_TEXT = '{{"t"},{"C"},{"q"},{"Oboe"}}'


@pytest.fixture
def fig1_text():
    return FIG1_TEXT


@pytest.fixture
def fig1_spec():
    from probmusic import parse_spec

    return parse_spec(FIG1_TEXT)


@pytest.fixture
def library_dir(tmp_path):
    (tmp_path / "relaxing.pm").write_text(FIG1_TEXT)
    return tmp_path


# ---------------------------------------------------------------------------
# Hypothesis strategies

PITCHES = "ABCDEFG"
SAFE_INSTRUMENTS = ["Oboe", "Flute", "Violin", "Choir_AAHS", "Atmosphere", "Banjo"]

note_elements = st.lists(
    st.sampled_from(list(PITCHES)), min_size=1, max_size=3
).map(lambda letters: NoteElement(tuple(letters)))

single_note_elements = st.sampled_from(list(PITCHES)).map(
    lambda letter: NoteElement((letter,))
)

# Octaves capped at 9 so every pitch letter stays inside the MIDI range.
od_tokens = st.builds(
    OctaveDurationToken,
    octave=st.one_of(st.none(), st.integers(1, 9)),
    duration=st.sampled_from("whqi"),
)


def spec_strategy(elements=note_elements):
    return st.builds(
        CompositionSpec,
        title=st.text(
            alphabet=st.characters(min_codepoint=32, max_codepoint=126, exclude_characters='"'),
            max_size=20,
        ),
        notes=st.lists(elements, min_size=1, max_size=5).map(tuple),
        octave_durations=st.lists(od_tokens, min_size=1, max_size=5).map(tuple),
        instruments=st.lists(
            st.sampled_from(SAFE_INSTRUMENTS), min_size=1, max_size=4
        ).map(tuple),
        keywords=st.sets(st.sampled_from(["calm", "night", "work"]), max_size=2).map(
            frozenset
        ),
    )


specs = spec_strategy()
single_note_specs = spec_strategy(single_note_elements)
