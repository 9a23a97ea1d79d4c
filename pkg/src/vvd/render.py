"""Serializers for the aggregate tables: JSON documents and aligned text.

Every writer is deterministic; corpus runs with different job counts produce
byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .corpus import (
    INSTALL_BUCKET_LABELS,
    RATING_BUCKET_LABELS,
    REPORTED_VALUES,
    BucketRow,
    CategoryRow,
    EvalMetrics,
    OverlapRow,
    round_half_up,
)
from .report import AppScanResult, to_json


def _fmt(value: float, decimals: int) -> str:
    return f"{value:.{decimals}f}"


def _fmt_or_na(value: float | None, decimals: int) -> str:
    return "NA" if value is None else _fmt(value, decimals)


def _aligned(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def _table_json(table: str, rows: list[dict]) -> str:
    return json.dumps({"schema_version": 1, "table": table, "rows": rows}, indent=2) + "\n"


# -- category table -------------------------------------------------------------


def category_rows_json(rows: list[CategoryRow]) -> str:
    payload = [
        {
            "category": r.category,
            "app_count": r.app_count,
            "violating_count": r.violating_count,
            "rate_percent": r.rate_percent,
            **{
                value.value: count
                for value, count in zip(REPORTED_VALUES, r.value_counts)
            },
        }
        for r in rows
    ]
    return _table_json("category", payload)


def category_rows_text(rows: list[CategoryRow]) -> str:
    headers = ["category", "apps", "violating", "rate%"] + [
        v.value for v in REPORTED_VALUES
    ]
    body = [
        [r.category, str(r.app_count), str(r.violating_count), _fmt(r.rate_percent, 1)]
        + [str(c) for c in r.value_counts]
        for r in rows
    ]
    return _aligned(headers, body)


# -- overlap table ---------------------------------------------------------------


def overlap_rows_json(rows: list[OverlapRow]) -> str:
    payload = [
        {
            "value": r.value.value,
            "api": r.api.value,
            "virus_and_violation": r.virus_and_violation_count,
            "violation": r.violation_count,
            "overlap_rate_percent": r.overlap_rate_percent,
        }
        for r in rows
    ]
    return _table_json("overlap", payload)


def overlap_rows_text(rows: list[OverlapRow]) -> str:
    headers = ["value", "api", "virus_and_violation", "violation", "overlap%"]
    body = [
        [
            r.value.value,
            r.api.value,
            str(r.virus_and_violation_count),
            str(r.violation_count),
            _fmt_or_na(r.overlap_rate_percent, 2),
        ]
        for r in rows
    ]
    return _aligned(headers, body)


# -- bucket tables ----------------------------------------------------------------


def bucket_rows_json(table: str, labels: tuple[str, ...], rows: list[BucketRow]) -> str:
    payload = [
        {
            "value": r.value.value,
            "api": r.api.value,
            "buckets": {label: count for label, count in zip(labels, r.counts)},
            "unknown": r.unknown,
        }
        for r in rows
    ]
    return _table_json(table, payload)


def bucket_rows_text(labels: tuple[str, ...], rows: list[BucketRow]) -> str:
    headers = ["value", "api", *labels, "unknown"]
    body = [
        [r.value.value, r.api.value, *(str(c) for c in r.counts), str(r.unknown)]
        for r in rows
    ]
    return _aligned(headers, body)


# -- eval metrics -------------------------------------------------------------------


def _accuracy3(r: EvalMetrics) -> float:
    return round_half_up(r.tp + r.tn, r.tp + r.fp + r.fn + r.tn, 3)


def _recall3(r: EvalMetrics) -> float | None:
    return None if r.recall is None else round_half_up(r.tp, r.tp + r.fn, 3)


def eval_rows_json(rows: list[EvalMetrics]) -> str:
    payload = [
        {
            "detector": r.detector.value,
            "api": r.detector.api.value,
            "values": [v.value for v in r.detector.values],
            "tp": r.tp,
            "fp": r.fp,
            "fn": r.fn,
            "tn": r.tn,
            "accuracy": _accuracy3(r),
            "recall": _recall3(r),
        }
        for r in rows
    ]
    return _table_json("eval", payload)


def eval_rows_text(rows: list[EvalMetrics]) -> str:
    headers = ["detector", "api", "values", "tp", "fp", "fn", "tn", "accuracy", "recall"]
    body = [
        [
            r.detector.value,
            r.detector.api.value,
            "+".join(v.value for v in r.detector.values),
            str(r.tp),
            str(r.fp),
            str(r.fn),
            str(r.tn),
            _fmt(_accuracy3(r), 3),
            "NA" if r.recall is None else _fmt(_recall3(r), 3),
        ]
        for r in rows
    ]
    return _aligned(headers, body)


# -- corpus output files ---------------------------------------------------------------


def write_corpus_outputs(
    out_dir: str | Path,
    results: list[AppScanResult],
    category_rows: list[CategoryRow],
    overlap_rows: list[OverlapRow],
    rating_rows: list[BucketRow],
    install_rows: list[BucketRow],
    eval_rows: list[EvalMetrics],
) -> list[Path]:
    """Write per-app results and the five aggregate tables (JSON + text)."""
    out = Path(out_dir)
    apps_dir = out / "apps"
    apps_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for result in results:
        path = apps_dir / f"{result.app_id}.json"
        path.write_text(to_json(result), encoding="utf-8")
        written.append(path)
    outputs = {
        "category_table.json": category_rows_json(category_rows),
        "category_table.txt": category_rows_text(category_rows),
        "overlap_table.json": overlap_rows_json(overlap_rows),
        "overlap_table.txt": overlap_rows_text(overlap_rows),
        "rating_buckets.json": bucket_rows_json(
            "rating_buckets", RATING_BUCKET_LABELS, rating_rows
        ),
        "rating_buckets.txt": bucket_rows_text(RATING_BUCKET_LABELS, rating_rows),
        "install_buckets.json": bucket_rows_json(
            "install_buckets", INSTALL_BUCKET_LABELS, install_rows
        ),
        "install_buckets.txt": bucket_rows_text(INSTALL_BUCKET_LABELS, install_rows),
        "eval_metrics.json": eval_rows_json(eval_rows),
        "eval_metrics.txt": eval_rows_text(eval_rows),
    }
    for name, content in outputs.items():
        path = out / name
        path.write_text(content, encoding="utf-8")
        written.append(path)
    return written
