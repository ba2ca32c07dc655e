"""Live playback: K staggered, unsynchronized streams on one device.

Each stream thread schedules events absolutely against its own start
instant ("stream start + cumulative duration"), so drift does not
accumulate within a stream while streams stay free-running relative to
each other. Clocks and devices are injectable so every timing invariant
is testable without audio hardware.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass

from .errors import DeviceUnavailable, TooManyStreams
from .generator import GenParams, InstrumentChange, MScore, Tempo, Word
from .instruments import program_number
from .midi_render import (
    ALL_NOTES_OFF_CC,
    BASELINE_VOLUME,
    FADE_STEPS,
    FADE_WINDOW_S,
    TimingConfig,
    VOLUME_CC,
    stream_channel,
)
from .pitch import duration_ticks, note_number

PLAYING = "playing"
STOPPING = "stopping"
STOPPED = "stopped"


class SystemClock:
    """Wall clock; wait is interruptible by the stop event."""

    def __init__(self):
        self._epoch = time.monotonic()

    def now(self):
        return time.monotonic() - self._epoch

    def register(self):
        pass

    def unregister(self):
        pass

    def wait_until(self, deadline, interrupt):
        """Block until the deadline or the interrupt; True if interrupted."""
        while True:
            remaining = deadline - self.now()
            if remaining <= 0:
                return interrupt.is_set()
            if interrupt.wait(min(remaining, 0.05)):
                return True

    def kick(self):
        pass


class VirtualClock:
    """Deterministic clock for tests.

    Time only advances when every registered participant is blocked in
    wait_until; it then jumps straight to the earliest pending deadline.
    """

    def __init__(self):
        self._time = 0.0
        self._cond = threading.Condition()
        self._participants = 0
        self._deadlines = {}

    def now(self):
        with self._cond:
            return self._time

    def register(self):
        with self._cond:
            self._participants += 1

    def unregister(self):
        with self._cond:
            self._participants -= 1
            self._advance_if_ready()
            self._cond.notify_all()

    def wait_until(self, deadline, interrupt):
        me = threading.get_ident()
        with self._cond:
            self._deadlines[me] = deadline
            self._advance_if_ready()
            self._cond.notify_all()
            try:
                while self._time < deadline and not interrupt.is_set():
                    self._cond.wait(0.02)
                    self._advance_if_ready()
            finally:
                del self._deadlines[me]
                self._cond.notify_all()
            return interrupt.is_set()

    def kick(self):
        with self._cond:
            self._cond.notify_all()

    def _advance_if_ready(self):
        if self._deadlines and len(self._deadlines) >= self._participants:
            target = min(self._deadlines.values())
            if target > self._time:
                self._time = target
                self._cond.notify_all()


class FakeDevice:
    """Records (time, message) pairs instead of producing sound."""

    def __init__(self, clock=None):
        self.clock = clock
        self.messages = []

    def send(self, message: bytes):
        stamp = self.clock.now() if self.clock else 0.0
        self.messages.append((stamp, bytes(message)))

    def close(self):
        pass

    def sounding_notes(self):
        """(channel, note) pairs currently on, per the recorded trace."""
        sounding = set()
        for _, msg in self.messages:
            status = msg[0] & 0xF0
            channel = msg[0] & 0x0F
            if status == 0x90 and msg[2] > 0:
                sounding.add((channel, msg[1]))
            elif status in (0x80, 0x90):
                sounding.discard((channel, msg[1]))
            elif status == 0xB0 and msg[1] == ALL_NOTES_OFF_CC:
                sounding = {s for s in sounding if s[0] != channel}
        return sounding


class NullDevice:
    """Discards every message; lets `play` run on hosts without MIDI."""

    def send(self, message):
        pass

    def close(self):
        pass


def open_device(name=None):
    """Open a real MIDI output port by name or index.

    Recognizes "fake" and "null" for the test/silent devices; anything
    else requires a MIDI backend, which this build does not bundle.
    """
    if name in (None, "null"):
        return NullDevice()
    if name == "fake":
        return FakeDevice()
    raise DeviceUnavailable(
        f"no MIDI backend available to open device {name!r}; "
        "use --device null for silent operation"
    )


@dataclass(frozen=True)
class _TimedSend:
    at: float  # seconds from the stream's own start
    message: bytes
    word_started: int | None = None  # word index whose first note begins here


def _stream_schedule(m: MScore, channel, timing: TimingConfig, fade=True):
    """Absolute (seconds, message) schedule for one stream."""
    sends = []
    cursor = 0
    word_index = 0
    for event in m.events:
        if isinstance(event, Tempo):
            continue
        at = timing.ticks_to_seconds(cursor)
        if isinstance(event, InstrumentChange):
            sends.append(
                _TimedSend(at, bytes([0xC0 | channel, program_number(event.instrument)]))
            )
        elif isinstance(event, Word):
            ticks = duration_ticks(event.od.duration, timing.ppq)
            for j, letter in enumerate(event.notes.letters):
                number = note_number(letter, event.od.octave)
                on_at = timing.ticks_to_seconds(cursor)
                off_at = timing.ticks_to_seconds(cursor + ticks)
                sends.append(
                    _TimedSend(
                        on_at,
                        bytes([0x90 | channel, number, timing.velocity]),
                        word_started=word_index if j == 0 else None,
                    )
                )
                sends.append(_TimedSend(off_at, bytes([0x80 | channel, number, 0])))
                cursor += ticks
            word_index += 1
    end = timing.ticks_to_seconds(cursor)
    sends.append(_TimedSend(0.0, bytes([0xB0 | channel, VOLUME_CC, BASELINE_VOLUME])))
    if fade and end > 0:
        start = max(0.0, end - FADE_WINDOW_S)
        span = end - start
        for k in range(FADE_STEPS):
            value = round(BASELINE_VOLUME * (FADE_STEPS - 1 - k) / (FADE_STEPS - 1))
            sends.append(
                _TimedSend(start + span * k / (FADE_STEPS - 1),
                           bytes([0xB0 | channel, VOLUME_CC, value]))
            )
    # Stable order at equal times: volume/program setup, offs, then ons.
    def key(s):
        status = s.message[0] & 0xF0
        return (s.at, {0xB0: 0, 0xC0: 0, 0x80: 1, 0x90: 2}[status])

    return sorted(sends, key=key)


class PlaybackSession:
    """One live performance; owns K stream threads and the device lock."""

    def __init__(self, mscores, timing, params, device, clock=None, piece_id=None):
        if len(mscores) > 15:
            raise TooManyStreams(f"{len(mscores)} streams exceed the channel budget")
        self.piece_id = piece_id
        self.clock = clock or SystemClock()
        self.device = device
        self.params = params
        self.timing = timing
        self._device_lock = threading.Lock()
        self._stop_event = threading.Event()
        self._state_lock = threading.Lock()
        self._state = PLAYING
        self.length_ms = params.length_ms
        self._progress = [0] * len(mscores)
        self._channels = [stream_channel(i) for i in range(len(mscores))]
        self._schedules = [
            _stream_schedule(m, self._channels[i], timing)
            for i, m in enumerate(mscores)
        ]
        self._threads = []
        self.started_at = None

    def start(self):
        self.started_at = self.clock.now()
        for i in range(len(self._schedules)):
            self.clock.register()
        for i, schedule in enumerate(self._schedules):
            t = threading.Thread(
                target=self._run_stream, args=(i, schedule), daemon=True
            )
            self._threads.append(t)
            t.start()
        return self

    def _run_stream(self, index, schedule):
        stream_start = self.started_at + index * self.params.stagger_s
        try:
            for send in schedule:
                if self.clock.wait_until(stream_start + send.at, self._stop_event):
                    return
                with self._device_lock:
                    self.device.send(send.message)
                if send.word_started is not None:
                    self._progress[index] = send.word_started + 1
        finally:
            self.clock.unregister()
            self._maybe_finish()

    def _maybe_finish(self):
        with self._state_lock:
            if self._state == PLAYING and all(not t.is_alive() or t is threading.current_thread()
                                              for t in self._threads):
                self._state = STOPPED

    def stop(self, timeout=2.0):
        """Halt all streams and silence every used channel. Idempotent."""
        with self._state_lock:
            if self._state == STOPPED and not any(t.is_alive() for t in self._threads):
                self._silence()
                return STOPPED
            self._state = STOPPING
        self._stop_event.set()
        self.clock.kick()
        for t in self._threads:
            t.join(timeout)
        self._silence()
        with self._state_lock:
            self._state = STOPPED
        return STOPPED

    def _silence(self):
        with self._device_lock:
            for channel in self._channels:
                self.device.send(bytes([0xB0 | channel, ALL_NOTES_OFF_CC, 0]))
                self.device.send(bytes([0xB0 | channel, VOLUME_CC, BASELINE_VOLUME]))

    @property
    def state(self):
        with self._state_lock:
            return self._state

    def is_active(self):
        return any(t.is_alive() for t in self._threads)

    def join(self, timeout=None):
        for t in self._threads:
            t.join(timeout)
        self._maybe_finish()

    def status(self):
        elapsed = max(0.0, self.clock.now() - (self.started_at or 0.0))
        state = self.state
        if state == PLAYING and not self.is_active() and self._threads:
            state = STOPPED
        return {
            "state": state,
            "elapsed_s": elapsed,
            "progress": list(self._progress),
            "length_ms": self.length_ms,
        }


def play_piece(mscores, timing, params, device, clock=None, piece_id=None):
    """Launch K staggered stream threads; returns the running session."""
    session = PlaybackSession(mscores, timing, params, device, clock, piece_id)
    return session.start()
