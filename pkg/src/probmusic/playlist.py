"""Piece library: a flat directory of `.pm` spec files.

Files are authoritative; an optional playlist.json manifest may pin
ordering and display names but is advisory only.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass

from .errors import ProbMusicError, SpecError
from .spec_model import CompositionSpec, parse_spec

SPEC_EXTENSION = ".pm"


class DirectoryMissing(ProbMusicError):
    pass


@dataclass
class PlaylistEntry:
    id: str
    spec: CompositionSpec
    file_path: str

    @property
    def keywords(self):
        return self.spec.keywords


@dataclass
class LibraryDiagnostic:
    file_path: str
    message: str


_SLUG_RE = re.compile(r"^[A-Za-z0-9._-]+$")


def is_valid_slug(piece_id):
    return bool(piece_id) and bool(_SLUG_RE.match(piece_id))


class Library:
    def __init__(self, directory):
        if not os.path.isdir(directory):
            raise DirectoryMissing(f"library directory not found: {directory}")
        self.directory = directory

    def _path(self, piece_id):
        return os.path.join(self.directory, piece_id + SPEC_EXTENSION)

    def load(self):
        """(entries sorted by id, diagnostics for unparseable files)."""
        entries, diagnostics = [], []
        manifest_order = self._manifest_order()
        for name in sorted(os.listdir(self.directory)):
            if not name.endswith(SPEC_EXTENSION):
                continue
            path = os.path.join(self.directory, name)
            piece_id = name[: -len(SPEC_EXTENSION)]
            try:
                with open(path, encoding="utf-8") as fh:
                    spec = parse_spec(fh.read())
            except (SpecError, OSError) as exc:
                diagnostics.append(LibraryDiagnostic(path, str(exc)))
                continue
            entries.append(PlaylistEntry(piece_id, spec, path))
        if manifest_order:
            rank = {pid: i for i, pid in enumerate(manifest_order)}
            entries.sort(key=lambda e: (rank.get(e.id, len(rank)), e.id))
        return entries, diagnostics

    def _manifest_order(self):
        path = os.path.join(self.directory, "playlist.json")
        if not os.path.isfile(path):
            return None
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
            order = data.get("order", [])
            return [str(p) for p in order] if isinstance(order, list) else None
        except (json.JSONDecodeError, OSError):
            return None

    def read_text(self, piece_id):
        path = self._path(piece_id)
        if not os.path.isfile(path):
            raise KeyError(piece_id)
        with open(path, encoding="utf-8") as fh:
            return fh.read()

    def get(self, piece_id):
        text = self.read_text(piece_id)
        return PlaylistEntry(piece_id, parse_spec(text), self._path(piece_id))

    def upsert(self, piece_id, spec_text):
        """Validate and atomically write; returns the stored entry."""
        if not is_valid_slug(piece_id):
            raise SpecError(f"invalid piece id {piece_id!r}")
        spec = parse_spec(spec_text)  # raises SpecError with diagnostics
        path = self._path(piece_id)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(spec_text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return PlaylistEntry(piece_id, spec, path)

    def all_keywords(self):
        entries, _ = self.load()
        keywords = set()
        for entry in entries:
            keywords |= entry.keywords
        return sorted(keywords)


def play_all_queue(entries, excluded_keywords):
    """Entries whose keywords avoid the exclusion set, in library order."""
    excluded = set(excluded_keywords)
    return [e for e in entries if not (e.keywords & excluded)]
