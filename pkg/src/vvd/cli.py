"""Command-line entry point: scan, corpus, and eval workflows.

Exit codes: 0 success (scan: no findings), 1 scan found violations,
2 usage/content error, 3 fatal I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .config import DEFAULT_CONFIG, ConfigError, DetectorConfig, load_config
from .corpus import (
    bucket_tables,
    category_table,
    evaluate,
    fill_missing_metadata,
    load_metadata,
    load_truthset,
    metadata_index,
    overlap_table,
    scan_app,
    scan_corpus,
)
from .render import eval_rows_text, write_corpus_outputs
from .report import SchemaError, render_text, to_json

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vvd",
        description="Detect potential human-values violations in Android app source trees.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        help="detector configuration file (JSON); falls back to $VVD_CONFIG",
    )
    common.add_argument(
        "--nfc-aar-pseudocode-mode",
        action="store_true",
        help="flag NFC writes when the application-record call IS present "
        "(literal pseudocode reading) instead of when it is absent",
    )

    scan = sub.add_parser("scan", parents=[common], help="scan one app source tree")
    scan.add_argument("app_dir", help="app root directory")
    scan.add_argument("--format", choices=("json", "text"), default="text")

    corpus = sub.add_parser(
        "corpus", parents=[common], help="scan a corpus and write aggregate tables"
    )
    corpus.add_argument("root", help="directory with one subdirectory per app")
    corpus.add_argument("--metadata", required=True, help="CSV or JSON-lines app metadata")
    corpus.add_argument("--out", required=True, help="output directory")
    corpus.add_argument("--truthset", help="optional truthset for eval_metrics output")
    corpus.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    corpus.add_argument("--format", choices=("json", "text"), default="json")

    ev = sub.add_parser("eval", parents=[common], help="evaluate against a truthset")
    ev.add_argument("root", help="directory with one subdirectory per app")
    ev.add_argument("--truthset", required=True, help="JSON-lines truthset")
    ev.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    return parser


def _load_effective_config(args: argparse.Namespace) -> DetectorConfig:
    path = args.config or os.environ.get("VVD_CONFIG")
    config = load_config(path) if path else DEFAULT_CONFIG
    if getattr(args, "nfc_aar_pseudocode_mode", False):
        config = DetectorConfig(
            **{
                **{f: getattr(config, f) for f in config.__dataclass_fields__},
                "nfc_aar_pseudocode_mode": True,
            }
        )
    return config


def _cmd_scan(args: argparse.Namespace) -> int:
    config = _load_effective_config(args)
    if not Path(args.app_dir).is_dir():
        print(f"vvd: app directory not found: {args.app_dir}", file=sys.stderr)
        return EXIT_IO
    result = scan_app(args.app_dir, config)
    if args.format == "json":
        sys.stdout.write(to_json(result))
    else:
        sys.stdout.write(render_text(result))
    return EXIT_FINDINGS if result.findings else EXIT_OK


def _cmd_corpus(args: argparse.Namespace) -> int:
    config = _load_effective_config(args)
    root = Path(args.root)
    metadata_path = Path(args.metadata)
    if not root.is_dir():
        print(f"vvd: corpus root not found: {root}", file=sys.stderr)
        return EXIT_IO
    if not metadata_path.is_file():
        print(f"vvd: metadata file not found: {metadata_path}", file=sys.stderr)
        return EXIT_IO
    if args.jobs < 1:
        print("vvd: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE

    meta = metadata_index(load_metadata(metadata_path))
    results = scan_corpus(
        root,
        config,
        jobs=args.jobs,
        on_error=lambda app, msg: print(f"vvd: skipping {app}: {msg}", file=sys.stderr),
    )
    meta = fill_missing_metadata(results, meta)
    category_rows = category_table(results, meta)
    overlap_rows = overlap_table(results, meta)
    rating_rows, install_rows = bucket_tables(results, meta)
    if args.truthset:
        truthset_path = Path(args.truthset)
        if not truthset_path.is_file():
            print(f"vvd: truthset file not found: {truthset_path}", file=sys.stderr)
            return EXIT_IO
        eval_rows = evaluate(results, load_truthset(truthset_path))
    else:
        eval_rows = []
    written = write_corpus_outputs(
        args.out, results, category_rows, overlap_rows, rating_rows, install_rows, eval_rows
    )
    summary = {
        "apps": len(results),
        "violating_apps": sum(1 for r in results if r.violating),
        "findings": sum(len(r.findings) for r in results),
        "outputs": len(written),
        "out_dir": str(args.out),
    }
    if args.format == "json":
        print(json.dumps(summary, indent=2))
    else:
        for key, value in summary.items():
            print(f"{key}: {value}")
    return EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> int:
    config = _load_effective_config(args)
    root = Path(args.root)
    truthset_path = Path(args.truthset)
    if not root.is_dir():
        print(f"vvd: corpus root not found: {root}", file=sys.stderr)
        return EXIT_IO
    if not truthset_path.is_file():
        print(f"vvd: truthset file not found: {truthset_path}", file=sys.stderr)
        return EXIT_IO
    if args.jobs < 1:
        print("vvd: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    truthset = load_truthset(truthset_path)
    results = scan_corpus(
        root,
        config,
        jobs=args.jobs,
        on_error=lambda app, msg: print(f"vvd: skipping {app}: {msg}", file=sys.stderr),
    )
    metrics = evaluate(results, truthset)
    sys.stdout.write(eval_rows_text(metrics))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help/--version
        return int(exc.code or 0)
    try:
        if args.command == "scan":
            return _cmd_scan(args)
        if args.command == "corpus":
            return _cmd_corpus(args)
        if args.command == "eval":
            return _cmd_eval(args)
    except (SchemaError, ConfigError) as err:
        print(f"vvd: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"vvd: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
