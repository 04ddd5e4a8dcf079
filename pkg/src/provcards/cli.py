"""Command-line interface: ingest logs, summarize, serve, generate data."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .export import EXPORT_FORMATS, export
from .ingest import CorpusError, LOG_FORMATS, LogParseError, load_corpus, parse_log
from .model import corpus_to_jsonl, session_to_jsonl
from .segmenter import SegmentationParams
from .service import serve
from .synth import generate_synthetic
from .workspace import CORPUS_FILE, SESSIONS_DIR, Workspace

_REQUIRED = object()

# Per-subcommand option names and their built-in defaults. A value of
# _REQUIRED must come from either the command line or the config file.
_DEFAULTS: dict[str, dict[str, Any]] = {
    "ingest": {
        "format": _REQUIRED,
        "logs": _REQUIRED,
        "workspace": _REQUIRED,
        "corpus": None,
        "session_id": None,
    },
    "summarize": {
        "workspace": _REQUIRED,
        "session": _REQUIRED,
        "segments": None,
        "out": None,
        "export_format": "json",
    },
    "serve": {
        "workspace": _REQUIRED,
        "port": 8000,
        "host": "127.0.0.1",
    },
    "gen": {
        "workspace": _REQUIRED,
        "seed": 0,
        "docs": 120,
        "events": 600,
        "phases": 4,
    },
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="provcards",
        description="Turn exploration logs into segmented session summaries.",
    )
    parser.add_argument(
        "--config",
        help="JSON config file with per-command sections; explicit flags win",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a log file into a workspace")
    p.add_argument("--format", choices=LOG_FORMATS)
    p.add_argument("--logs", help="log file to parse")
    p.add_argument("--corpus", help="document corpus (JSONL file or directory of .txt)")
    p.add_argument("--workspace", help="workspace directory to write into")
    p.add_argument("--session-id", dest="session_id", help="session id (default: log file stem)")

    p = sub.add_parser("summarize", help="summarize a session from a workspace")
    p.add_argument("--workspace")
    p.add_argument("--session")
    p.add_argument("--segments", type=int, help="maximum number of cards")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--export-format", dest="export_format", choices=EXPORT_FORMATS)

    p = sub.add_parser("serve", help="serve the HTTP API and web UI")
    p.add_argument("--workspace")
    p.add_argument("--port", type=int)
    p.add_argument("--host")

    p = sub.add_parser("gen", help="generate a synthetic workspace")
    p.add_argument("--workspace")
    p.add_argument("--seed", type=int)
    p.add_argument("--docs", type=int)
    p.add_argument("--events", type=int)
    p.add_argument("--phases", type=int)

    return parser


def _load_config(path: str | None) -> dict[str, Any]:
    if not path:
        return {}
    try:
        cfg = json.loads(Path(path).read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(f"cannot read config {path}: {exc}")
    if not isinstance(cfg, dict):
        raise SystemExit(f"config {path} must hold a JSON object")
    return cfg


def _resolve(args: argparse.Namespace, config: dict[str, Any]) -> dict[str, Any]:
    """Merge flag values over config-file values over built-in defaults."""
    section = config.get(args.command, {})
    if not isinstance(section, dict):
        raise SystemExit(f"config section {args.command!r} must be an object")
    options: dict[str, Any] = {}
    missing: list[str] = []
    for key, default in _DEFAULTS[args.command].items():
        value = getattr(args, key, None)
        if value is None:
            value = section.get(key, default)
        if value is _REQUIRED:
            missing.append("--" + key.replace("_", "-"))
            continue
        options[key] = value
    if missing:
        raise SystemExit(
            f"{args.command}: missing required option(s): {', '.join(missing)}"
        )
    return options


def _cmd_ingest(opt: dict[str, Any]) -> int:
    root = Path(opt["workspace"])
    (root / SESSIONS_DIR).mkdir(parents=True, exist_ok=True)
    session_id = opt["session_id"] or Path(opt["logs"]).stem
    with open(opt["logs"], "rb") as fh:
        session = parse_log(fh, opt["format"], session_id=session_id)
    out = root / SESSIONS_DIR / f"{session_id}.jsonl"
    out.write_text(session_to_jsonl(session), encoding="utf-8")
    print(f"ingested {len(session.events)} events -> {out}")
    if opt["corpus"]:
        docs = load_corpus(opt["corpus"])
        (root / CORPUS_FILE).write_text(corpus_to_jsonl(docs), encoding="utf-8")
        print(f"loaded {len(docs)} documents -> {root / CORPUS_FILE}")
    return 0


def _cmd_summarize(opt: dict[str, Any]) -> int:
    workspace = Workspace.load(opt["workspace"])
    params = None
    if opt["segments"] is not None:
        params = SegmentationParams(max_segments=int(opt["segments"]))
    rendered = export(workspace, opt["session"], params, opt["export_format"], opt["out"])
    if opt["out"]:
        print(f"wrote {opt['export_format']} summary -> {opt['out']}")
    else:
        print(rendered)
    return 0


def _cmd_serve(opt: dict[str, Any]) -> int:
    workspace = Workspace.load(opt["workspace"])
    serve(workspace, port=int(opt["port"]), host=opt["host"])
    return 0


def _cmd_gen(opt: dict[str, Any]) -> int:
    root = Path(opt["workspace"])
    (root / SESSIONS_DIR).mkdir(parents=True, exist_ok=True)
    docs, session, truth = generate_synthetic(
        int(opt["seed"]), n_docs=int(opt["docs"]),
        n_events=int(opt["events"]), n_phases=int(opt["phases"]),
    )
    (root / CORPUS_FILE).write_text(corpus_to_jsonl(docs), encoding="utf-8")
    session_path = root / SESSIONS_DIR / f"{session.id}.jsonl"
    session_path.write_text(session_to_jsonl(session), encoding="utf-8")
    truth_path = root / SESSIONS_DIR / f"{session.id}.truth.json"
    truth_path.write_text(json.dumps({
        "n_phases": truth.n_phases,
        "boundaries": list(truth.boundaries),
        "phase_first_seqs": list(truth.phase_first_seqs),
    }, indent=2), encoding="utf-8")
    print(f"generated {len(docs)} docs and {len(session.events)} events -> {root}")
    print(f"ground truth boundaries: {list(truth.boundaries)}")
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "summarize": _cmd_summarize,
    "serve": _cmd_serve,
    "gen": _cmd_gen,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = _load_config(args.config)
    options = _resolve(args, config)
    try:
        return _COMMANDS[args.command](options)
    except (LogParseError, CorpusError, FileNotFoundError, KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
