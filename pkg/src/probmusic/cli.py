"""Command line front end: parse, info, generate, render, play, serve."""

from __future__ import annotations

import argparse
import random
import sys
from datetime import datetime, timedelta

from .combinatorics import abbreviate, multiplicity_report
from .errors import ProbMusicError
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
from .playback import open_device, play_piece
from .spec_model import parse_spec, serialize_spec, validate_spec

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_gen_flags(p):
    p.add_argument("--length", type=int, default=DEFAULT_LENGTH,
                   help="words per stream (default 120)")
    p.add_argument("--threads", type=int, default=DEFAULT_STREAMS,
                   help="number of streams (default 3)")
    p.add_argument("--stagger", type=float, default=DEFAULT_STAGGER_S,
                   help="seconds between stream starts (default 3)")
    p.add_argument("--seed", type=int, default=None,
                   help="64-bit master seed (random if omitted)")


def _add_timing_flags(p):
    p.add_argument("--bpm", type=int, default=120)
    p.add_argument("--ppq", type=int, default=480)


def build_parser():
    parser = _Parser(prog="probmusic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate a spec file and echo it normalized")
    p.add_argument("file")

    p = sub.add_parser("info", help="print the multiplicity report")
    p.add_argument("file")
    _add_gen_flags(p)

    p = sub.add_parser("generate", help="print generated score texts")
    p.add_argument("file")
    _add_gen_flags(p)

    p = sub.add_parser("render", help="write a type-1 MIDI file")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="output .mid path")
    _add_gen_flags(p)
    _add_timing_flags(p)

    p = sub.add_parser("play", help="play a piece live")
    p.add_argument("file")
    p.add_argument("--device", default=None, help="MIDI output device")
    _add_gen_flags(p)
    _add_timing_flags(p)

    p = sub.add_parser("serve", help="start the playlist HTTP service")
    p.add_argument("--dir", required=True, help="library directory of .pm files")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--device", default=None)
    p.add_argument("--ui", default=None, help="static web UI directory")

    return parser


def _read_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_spec(fh.read())
    except FileNotFoundError:
        raise ProbMusicError(f"file not found: {path}") from None


def _params(args):
    seed = args.seed if args.seed is not None else random.getrandbits(64)
    return GenParams(
        length_ms=args.length,
        streams_k=args.threads,
        change_prob_p=DEFAULT_CHANGE_PROB,
        stagger_s=args.stagger,
        master_seed=seed,
    )


def cmd_parse(args, out):
    spec = _read_spec(args.file)
    for violation in validate_spec(spec):
        print(f"warning: {violation.kind}: {violation.message}", file=sys.stderr)
    out.write(serialize_spec(spec))
    return EXIT_OK


def cmd_info(args, out):
    spec = _read_spec(args.file)
    report = multiplicity_report(spec, args.length, args.threads)
    out.write(f"n={report.n} od={report.od} i={report.i} w={report.w}\n")
    out.write(f"per-stream serializations (w^{report.ms}): "
              f"{abbreviate(report.per_stream)}\n")
    out.write(f"total serializations (w^{report.ms * report.k}): "
              f"{abbreviate(report.total)}\n")
    return EXIT_OK


def cmd_generate(args, out):
    spec = _read_spec(args.file)
    params = _params(args)
    if args.seed is None:
        print(f"seed: {params.master_seed}", file=sys.stderr)
    start = datetime.now()
    for i, m in enumerate(generate_piece(spec, params)):
        text = format_mscore(m, start + timedelta(seconds=i * params.stagger_s))
        out.write(str(text))
        out.write("\n")
    return EXIT_OK


def cmd_render(args, out):
    spec = _read_spec(args.file)
    params = _params(args)
    timing = TimingConfig(ppq=args.ppq, bpm=args.bpm)
    mscores = generate_piece(spec, params)
    _, data = assemble_smf(mscores, params, timing)
    with open(args.out, "wb") as fh:
        fh.write(data)
    print(f"wrote {args.out} ({len(data)} bytes, seed {params.master_seed})",
          file=sys.stderr)
    return EXIT_OK


def cmd_play(args, out):
    spec = _read_spec(args.file)
    params = _params(args)
    timing = TimingConfig(ppq=args.ppq, bpm=args.bpm)
    mscores = generate_piece(spec, params)
    device = open_device(args.device)
    session = play_piece(mscores, timing, params, device)
    print(f"playing (seed {params.master_seed}); Ctrl-C to stop", file=sys.stderr)
    try:
        session.join()
    except KeyboardInterrupt:
        session.stop()
    finally:
        device.close()
    return EXIT_OK


def cmd_serve(args, out):
    import uvicorn

    from .playback import NullDevice
    from .service import create_app

    def device_factory():
        return open_device(args.device) if args.device else NullDevice()

    app = create_app(args.dir, device_factory=device_factory, static_dir=args.ui)
    uvicorn.run(app, host="127.0.0.1", port=args.port)
    return EXIT_OK


_COMMANDS = {
    "parse": cmd_parse,
    "info": cmd_info,
    "generate": cmd_generate,
    "render": cmd_render,
    "play": cmd_play,
    "serve": cmd_serve,
}


def run_cli(argv, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, out)
    except ProbMusicError as exc:
        print(f"probmusic: {exc}", file=sys.stderr)
        return EXIT_DATA


def main():
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
