"""HTTP API around the library, generator, renderer and player.

Single-performance policy: at most one playback session exists at a
time; play requests while something is sounding get a 409.
"""

from __future__ import annotations

import random
import threading
from datetime import datetime, timedelta

from fastapi import FastAPI, HTTPException, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .combinatorics import multiplicity_report
from .errors import ProbMusicError, SpecError
from .generator import (
    DEFAULT_CHANGE_PROB,
    DEFAULT_LENGTH,
    DEFAULT_STAGGER_S,
    DEFAULT_STREAMS,
    GenParams,
    generate_piece,
)
from .midi_render import TimingConfig, assemble_smf
from .notation import format_mscore
from .playback import NullDevice, SystemClock, play_piece
from .playlist import Library, play_all_queue

DEFAULT_PORT = 8642
QUEUE_GAP_S = 1.0


class GenerateRequest(BaseModel):
    length_ms: int = Field(DEFAULT_LENGTH, ge=1)
    streams_k: int = Field(DEFAULT_STREAMS, ge=1, le=15)
    seed: int | None = None


class PlayRequest(BaseModel):
    length_ms: int = Field(DEFAULT_LENGTH, ge=1)
    streams_k: int = Field(DEFAULT_STREAMS, ge=1, le=15)
    stagger_s: float = Field(DEFAULT_STAGGER_S, ge=0)
    seed: int | None = None


class SaveRequest(BaseModel):
    spec_text: str


class FiltersRequest(BaseModel):
    excluded: list[str] = Field(default_factory=list)


def _draw_seed():
    return random.getrandbits(64)


class Player:
    """Serializes playback: one session or one play-all queue at a time."""

    def __init__(self, device_factory, clock_factory, timing):
        self.device_factory = device_factory
        self.clock_factory = clock_factory
        self.timing = timing
        self._lock = threading.Lock()
        self._session = None
        self._queue_thread = None
        self._queue_stop = threading.Event()
        self._session_counter = 0

    def _busy(self):
        if self._session is not None and self._session.is_active():
            return True
        return self._queue_thread is not None and self._queue_thread.is_alive()

    def play(self, piece_id, mscores, params):
        with self._lock:
            if self._busy():
                return None
            self._session_counter += 1
            session = play_piece(
                mscores,
                self.timing,
                params,
                self.device_factory(),
                self.clock_factory(),
                piece_id=piece_id,
            )
            self._session = session
            return f"session-{self._session_counter}"

    def play_queue(self, queued_pieces):
        """queued_pieces: list of (piece_id, mscores, params)."""
        with self._lock:
            if self._busy():
                return False
            self._queue_stop.clear()
            clock = self.clock_factory()
            self._queue_thread = threading.Thread(
                target=self._run_queue, args=(queued_pieces, clock), daemon=True
            )
            self._queue_thread.start()
            return True

    def _run_queue(self, queued_pieces, clock):
        for piece_id, mscores, params in queued_pieces:
            if self._queue_stop.is_set():
                break
            with self._lock:
                self._session_counter += 1
                session = play_piece(
                    mscores, self.timing, params, self.device_factory(), clock,
                    piece_id=piece_id,
                )
                self._session = session
            session.join()
            if self._queue_stop.is_set():
                break
            clock.wait_until(clock.now() + QUEUE_GAP_S, self._queue_stop)

    def stop(self):
        self._queue_stop.set()
        with self._lock:
            session = self._session
        if session is not None:
            session.stop()
        if self._queue_thread is not None:
            self._queue_thread.join(5.0)
        return "stopped"

    def status(self):
        with self._lock:
            session = self._session
        if session is None:
            return {"state": "stopped", "elapsed_s": 0.0, "progress": []}
        info = session.status()
        if session.piece_id is not None:
            info["piece_id"] = session.piece_id
        return info


def create_app(
    directory,
    device_factory=NullDevice,
    clock_factory=SystemClock,
    timing: TimingConfig | None = None,
    static_dir=None,
):
    timing = timing or TimingConfig()
    library = Library(directory)
    player = Player(device_factory, clock_factory, timing)
    filters = {"excluded": set()}
    library_lock = threading.Lock()

    app = FastAPI(title="probmusic")
    app.state.player = player

    def _get_entry(piece_id):
        try:
            with library_lock:
                return library.get(piece_id)
        except KeyError:
            raise HTTPException(404, f"no piece {piece_id!r}") from None
        except SpecError as exc:
            raise HTTPException(422, str(exc)) from None

    def _gen(entry, length_ms, streams_k, seed, stagger_s=DEFAULT_STAGGER_S):
        params = GenParams(
            length_ms=length_ms,
            streams_k=streams_k,
            change_prob_p=DEFAULT_CHANGE_PROB,
            stagger_s=stagger_s,
            master_seed=seed,
        )
        return params, generate_piece(entry.spec, params)

    @app.get("/api/pieces")
    def list_pieces():
        with library_lock:
            entries, _ = library.load()
        return [
            {"id": e.id, "title": e.spec.title, "keywords": sorted(e.keywords)}
            for e in entries
        ]

    @app.get("/api/pieces/{piece_id}")
    def get_piece(piece_id: str):
        entry = _get_entry(piece_id)
        with library_lock:
            text = library.read_text(piece_id)
        return {
            "id": entry.id,
            "title": entry.spec.title,
            "keywords": sorted(entry.keywords),
            "spec_text": text,
        }

    @app.put("/api/pieces/{piece_id}")
    def put_piece(piece_id: str, body: SaveRequest):
        try:
            with library_lock:
                entry = library.upsert(piece_id, body.spec_text)
        except SpecError as exc:
            raise HTTPException(
                422,
                {"message": str(exc), "line": exc.line, "column": exc.column},
            ) from None
        return {"id": entry.id, "title": entry.spec.title, "keywords": sorted(entry.keywords)}

    @app.post("/api/pieces/{piece_id}/generate")
    def generate(piece_id: str, body: GenerateRequest):
        entry = _get_entry(piece_id)
        seed = body.seed if body.seed is not None else _draw_seed()
        params, mscores = _gen(entry, body.length_ms, body.streams_k, seed)
        now = datetime.now()
        scores = [
            str(format_mscore(m, now + timedelta(seconds=i * params.stagger_s)))
            for i, m in enumerate(mscores)
        ]
        report = multiplicity_report(entry.spec, params.length_ms, params.streams_k)
        return {
            "seed": seed,
            "scores": scores,
            "multiplicity": {
                "w": report.w,
                "per_stream_digits": report.per_stream_digits,
                "total_digits": report.decimal_digits_total,
            },
        }

    @app.post("/api/pieces/{piece_id}/play")
    def play(piece_id: str, body: PlayRequest):
        entry = _get_entry(piece_id)
        seed = body.seed if body.seed is not None else _draw_seed()
        params, mscores = _gen(
            entry, body.length_ms, body.streams_k, seed, body.stagger_s
        )
        session_id = player.play(piece_id, mscores, params)
        if session_id is None:
            raise HTTPException(409, "already playing")
        return {"session_id": session_id, "seed": seed}

    @app.post("/api/pieces/{piece_id}/render")
    def render(piece_id: str, body: GenerateRequest):
        entry = _get_entry(piece_id)
        seed = body.seed if body.seed is not None else _draw_seed()
        params, mscores = _gen(entry, body.length_ms, body.streams_k, seed)
        try:
            _, data = assemble_smf(mscores, params, timing)
        except ProbMusicError as exc:
            raise HTTPException(422, str(exc)) from None
        return Response(
            content=data,
            media_type="audio/midi",
            headers={"X-Seed": str(seed)},
        )

    @app.post("/api/stop")
    def stop():
        return {"state": player.stop()}

    @app.get("/api/status")
    def status():
        return player.status()

    @app.get("/api/keywords")
    def keywords():
        with library_lock:
            return library.all_keywords()

    @app.post("/api/filters")
    def set_filters(body: FiltersRequest):
        filters["excluded"] = set(body.excluded)
        return {"excluded": sorted(filters["excluded"])}

    @app.get("/api/filters")
    def get_filters():
        return {"excluded": sorted(filters["excluded"])}

    @app.post("/api/playall")
    def playall():
        with library_lock:
            entries, _ = library.load()
        queue = play_all_queue(entries, filters["excluded"])
        queued = []
        for entry in queue:
            seed = _draw_seed()
            params, mscores = _gen(entry, DEFAULT_LENGTH, DEFAULT_STREAMS, seed)
            queued.append((entry.id, mscores, params))
        if queued and not player.play_queue(queued):
            raise HTTPException(409, "already playing")
        return {"queue": [entry.id for entry in queue]}

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
