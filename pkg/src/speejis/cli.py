"""Command-line entry point: analyze a WAV, render a descriptor, validate
an emoji table, or run the service.

Exit codes: 0 success, 2 input/configuration error, 3 backend failure
(`analyze` finished but augmentation failed). Errors go to stderr as one
JSON object per line so scripts can parse them.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import socket
import sys
import tempfile
from pathlib import Path

from . import __version__
from .audio import decode_wav, encode_wav
from .config import ServiceConfig, config_from_env, resolve_table
from .backends import BackendConfig, BaselineBackend, ExternalSerBackend, ExternalTranscriber
from .descriptor import STATUS_DONE, parse_descriptor, serialize_descriptor
from .emotion import load_table
from .errors import ConfigError, DecodeError, InputError, SchemaError, SpeejisError
from .pipeline import PipelineConfig, augment
from .svg import render_svg

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BACKEND_FAILED = 3


def _error(message: str) -> None:
    print(json.dumps({"error": message}), file=sys.stderr)


def _write_output(path: str | None, content: str) -> None:
    """Write to stdout, or atomically to a file (never a partial file)."""
    if path is None or path == "-":
        sys.stdout.write(content)
        if not content.endswith("\n"):
            sys.stdout.write("\n")
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=target.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(content)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        wav_bytes = Path(args.input_wav).read_bytes()
    except OSError as exc:
        _error(f"cannot read {args.input_wav}: {exc}")
        return EXIT_INPUT

    try:
        # analyze the canonical form, exactly as the service stores it
        canonical = encode_wav(decode_wav(wav_bytes))
        clip = decode_wav(canonical)
        table = load_table(args.table) if args.table else resolve_table(config_from_env())
        ser_url = args.ser_url or os.environ.get("SPEEJI_SER_URL")
        asr_url = args.asr_url or os.environ.get("SPEEJI_ASR_URL")
        if args.backend == "external":
            if not ser_url:
                raise ConfigError("--backend external requires --ser-url or SPEEJI_SER_URL")
            ser = ExternalSerBackend(BackendConfig(kind="external", endpoint_url=ser_url))
        else:
            ser = BaselineBackend()
        transcriber = (
            ExternalTranscriber(BackendConfig(kind="external", endpoint_url=asr_url))
            if asr_url
            else None
        )
        cfg = PipelineConfig(
            ser=ser,
            transcriber=transcriber,
            neutral_tau=args.neutral_tau,
            interest_tau=args.interest_tau,
            chunk_s=args.chunk_s,
        )
        # content-derived id keeps repeated runs byte-identical
        message_id = hashlib.sha256(canonical).hexdigest()[:16]
        descriptor = augment(clip, table, cfg, message_id=message_id)
    except (DecodeError, ConfigError, InputError) as exc:
        _error(str(exc))
        return EXIT_INPUT

    _write_output(args.out, serialize_descriptor(descriptor))
    if descriptor.status != STATUS_DONE:
        _error("augmentation failed; descriptor carries playable-message fields only")
        return EXIT_BACKEND_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------

def cmd_render(args: argparse.Namespace) -> int:
    try:
        raw = Path(args.descriptor).read_text(encoding="utf-8")
    except OSError as exc:
        _error(f"cannot read {args.descriptor}: {exc}")
        return EXIT_INPUT
    try:
        descriptor = parse_descriptor(raw)
    except SchemaError as exc:
        _error(f"descriptor schema violation at {exc.path}: {exc.reason}")
        return EXIT_INPUT
    try:
        svg = render_svg(
            descriptor, args.width, args.height, show_segment_emojis=bool(args.segments)
        )
    except InputError as exc:
        _error(str(exc))
        return EXIT_INPUT
    _write_output(args.out, svg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# table-check
# ---------------------------------------------------------------------------

def cmd_table_check(args: argparse.Namespace) -> int:
    try:
        table = load_table(args.table)
    except ConfigError as exc:
        _error(str(exc))
        return EXIT_INPUT
    vs = [e.valence for e in table.entries]
    As = [e.arousal for e in table.entries]
    print(f"{len(table)} entries")
    print(f"valence range [{min(vs):+.3f}, {max(vs):+.3f}]")
    print(f"arousal range [{min(As):+.3f}, {max(As):+.3f}]")
    return EXIT_OK


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------

def cmd_serve(args: argparse.Namespace) -> int:
    try:
        cfg = config_from_env()
        if args.data_dir:
            cfg.data_dir = Path(args.data_dir)
        if args.backend:
            cfg.ser_backend = args.backend
        if args.ser_url:
            cfg.ser_url = args.ser_url
        if args.asr_url:
            cfg.asr_url = args.asr_url
        if args.table:
            cfg.emoji_table_path = Path(args.table)
        if args.port is not None:
            cfg.port = args.port
        if args.host:
            cfg.host = args.host
        if args.neutral_tau is not None:
            cfg.neutral_tau = args.neutral_tau
        if args.interest_tau is not None:
            cfg.interest_tau = args.interest_tau
        if args.workers is not None:
            cfg.workers = args.workers
        if args.static_dir:
            static = Path(args.static_dir)
            if not static.is_dir():
                raise ConfigError(f"static dir {static} does not exist")
            cfg.static_dir = static
        cfg.validate()
        resolve_table(cfg)  # fail before binding if the table is unusable
    except ConfigError as exc:
        _error(str(exc))
        return EXIT_INPUT

    import uvicorn

    from .service.app import create_app

    app = create_app(cfg)
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    sock.bind((cfg.host, cfg.port))
    host, port = sock.getsockname()[:2]
    print(f"listening on http://{host}:{port}", flush=True)

    server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
    server.run(sockets=[sock])
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="speejis", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="augment one WAV file into a descriptor")
    p.add_argument("input_wav")
    p.add_argument("--backend", choices=["baseline", "external"], default="baseline")
    p.add_argument("--table", help="emoji table JSON (default: built-in 22-entry table)")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--chunk-s", type=float, default=0.5, dest="chunk_s")
    p.add_argument("--neutral-tau", type=float, default=0.15, dest="neutral_tau")
    p.add_argument("--interest-tau", type=float, default=0.35, dest="interest_tau")
    p.add_argument("--ser-url", dest="ser_url", help="external emotion model base URL")
    p.add_argument("--asr-url", dest="asr_url", help="external transcription base URL")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("render", help="render a descriptor to SVG")
    p.add_argument("descriptor")
    p.add_argument("--width", type=float, default=640.0)
    p.add_argument("--height", type=float, default=96.0)
    p.add_argument("--segments", type=int, choices=[0, 1], default=0)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("table-check", help="validate an emoji table file")
    p.add_argument("table")
    p.set_defaults(func=cmd_table_check)

    p = sub.add_parser("serve", help="run the messaging service")
    p.add_argument("--data-dir", dest="data_dir")
    p.add_argument("--backend", choices=["baseline", "external"])
    p.add_argument("--ser-url", dest="ser_url")
    p.add_argument("--asr-url", dest="asr_url")
    p.add_argument("--table")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--neutral-tau", type=float, dest="neutral_tau")
    p.add_argument("--interest-tau", type=float, dest="interest_tau")
    p.add_argument("--workers", type=int)
    p.add_argument("--static-dir", dest="static_dir", help="serve a browser UI from this directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpeejisError as exc:
        _error(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
