"""Corpus scanning, metadata joins, aggregate tables, and truthset evaluation.

Aggregates count apps, not findings: an app contributes once to a cell when
it has at least one finding with the relevant (value, API) tag. Percentages
round half-up at the stated precision (one decimal for category rates, two
for virus-overlap rates, three for accuracy/recall).
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from .android_xml import XmlError, parse_layout, parse_manifest
from .config import DEFAULT_CONFIG, DetectorConfig
from .detectors import ApiFamily, AppBundle, DetectorId, ParsedJavaFile, ValueCategory, run_all
from .java_ast import ParseDiagnostic, Severity
from .java_parser import parse_file
from .report import AppScanResult, SchemaError, assemble
from .spans import Span

# (value, API) rows reported by the overlap and bucket tables, in the order
# the detectors' tags pair up: one row per distinct detector tag.
VALUE_API_ROWS: tuple[tuple[ValueCategory, ApiFamily], ...] = (
    (ValueCategory.SELF_DIRECTION, ApiFamily.MTP),
    (ValueCategory.SELF_DIRECTION, ApiFamily.MEDIA),
    (ValueCategory.SELF_DIRECTION, ApiFamily.NFC),
    (ValueCategory.SECURITY, ApiFamily.HARDWARE),
    (ValueCategory.SECURITY, ApiFamily.TELEPHONY),
    (ValueCategory.SECURITY, ApiFamily.NFC),
    (ValueCategory.HEDONISM, ApiFamily.MEDIA),
    (ValueCategory.HEDONISM, ApiFamily.ANIMATION),
    (ValueCategory.UNIVERSALISM, ApiFamily.MEDIA),
    (ValueCategory.CONFORMITY, ApiFamily.TELEPHONY),
)

REPORTED_VALUES: tuple[ValueCategory, ...] = (
    ValueCategory.HEDONISM,
    ValueCategory.SELF_DIRECTION,
    ValueCategory.UNIVERSALISM,
    ValueCategory.SECURITY,
    ValueCategory.CONFORMITY,
)

RATING_BUCKET_LABELS: tuple[str, ...] = ("0", "0-1", "1-2", "2-3", "3-4", "4-5")
INSTALL_BUCKET_LABELS: tuple[str, ...] = (
    "0-100",
    "100-1000",
    "1000-10000",
    "10000-50000",
    "50000-1e+05",
    "1e+05-1e+06",
    ">=1e+06",
)
_INSTALL_BOUNDS = (100, 1000, 10000, 50000, 100000, 1000000)


@dataclass(frozen=True)
class AppMetadata:
    app_id: str
    category: str
    installs: int | None = None
    rating_stars: float | None = None
    virus_positive: int | None = None

    @property
    def is_virus_positive(self) -> bool:
        return bool(self.virus_positive)


@dataclass(frozen=True)
class CategoryRow:
    category: str
    app_count: int
    violating_count: int
    rate_percent: float
    value_counts: tuple[int, ...]  # in REPORTED_VALUES order


@dataclass(frozen=True)
class OverlapRow:
    value: ValueCategory
    api: ApiFamily
    virus_and_violation_count: int
    violation_count: int
    overlap_rate_percent: float | None  # None = NA (zero denominator)


@dataclass(frozen=True)
class BucketRow:
    value: ValueCategory
    api: ApiFamily
    counts: tuple[int, ...]
    unknown: int


@dataclass(frozen=True)
class TruthsetRecord:
    app_id: str
    detector: DetectorId
    label: bool


@dataclass(frozen=True)
class EvalMetrics:
    detector: DetectorId
    tp: int
    fp: int
    fn: int
    tn: int
    accuracy: float
    recall: float | None  # None = NA (no labeled positives)


def round_half_up(numerator: int, denominator: int, decimals: int) -> float:
    """Percentage-free exact division rounded half-up to ``decimals``."""
    quantum = Decimal(1).scaleb(-decimals)
    return float((Decimal(numerator) / Decimal(denominator)).quantize(quantum, ROUND_HALF_UP))


def pct_half_up(numerator: int, denominator: int, decimals: int) -> float:
    return round_half_up(100 * numerator, denominator, decimals)


# -- scanning -------------------------------------------------------------------


def scan_app(app_dir: str | Path, config: DetectorConfig = DEFAULT_CONFIG) -> AppScanResult:
    """Scan one app source tree (``.java`` recursively, manifest, layouts).

    Span file names are recorded relative to the app root (posix style) so
    results are position-independent. Unreadable or fatally unparseable
    files count as failed; a missing ``app_dir`` raises OSError.
    """
    root = Path(app_dir)
    if not root.is_dir():
        raise FileNotFoundError(f"app directory not found: {root}")
    app_id = root.name
    bundle = AppBundle()
    files_scanned = 0
    files_failed = 0
    diagnostics: list[ParseDiagnostic] = []

    java_paths = sorted(
        (p for p in root.rglob("*.java") if p.is_file()),
        key=lambda p: p.relative_to(root).as_posix(),
    )
    for path in java_paths:
        rel = path.relative_to(root).as_posix()
        try:
            result = parse_file(path, label=rel)
        except OSError as err:
            files_failed += 1
            diagnostics.append(
                ParseDiagnostic(Span.point(rel, 1, 1), f"unreadable: {err}", Severity.FATAL)
            )
            continue
        diagnostics.extend(result.diagnostics)
        if result.unit is None:
            files_failed += 1
        else:
            files_scanned += 1
        bundle.java_files.append(ParsedJavaFile(rel, result.unit, result.diagnostics))

    manifest_path = root / "AndroidManifest.xml"
    if manifest_path.is_file():
        try:
            bundle.manifest = parse_manifest(
                manifest_path.read_text(encoding="utf-8", errors="replace"),
                file="AndroidManifest.xml",
            )
            files_scanned += 1
        except XmlError as err:
            files_failed += 1
            diagnostics.append(
                ParseDiagnostic(
                    Span.point("AndroidManifest.xml", err.line, max(err.col, 1)),
                    str(err),
                    Severity.FATAL,
                )
            )

    layout_paths = sorted(
        (p for p in root.glob("res/layout*/*.xml") if p.is_file()),
        key=lambda p: p.relative_to(root).as_posix(),
    )
    for path in layout_paths:
        rel = path.relative_to(root).as_posix()
        try:
            bundle.layouts.append(
                parse_layout(path.read_text(encoding="utf-8", errors="replace"), file=rel)
            )
            files_scanned += 1
        except XmlError as err:
            files_failed += 1
            diagnostics.append(
                ParseDiagnostic(
                    Span.point(rel, err.line, max(err.col, 1)), str(err), Severity.FATAL
                )
            )

    findings = run_all(bundle, config)
    return assemble(app_id, files_scanned, files_failed, findings, diagnostics)


def _scan_app_entry(args: tuple[str, DetectorConfig]) -> tuple[str, AppScanResult | None, str]:
    app_dir, config = args
    try:
        return app_dir, scan_app(app_dir, config), ""
    except Exception as err:  # per-app failures are reported, not fatal
        return app_dir, None, f"{type(err).__name__}: {err}"


def scan_corpus(
    root: str | Path,
    config: DetectorConfig = DEFAULT_CONFIG,
    jobs: int = 1,
    on_error=None,
) -> list[AppScanResult]:
    """Scan every app subdirectory of ``root``; output order is by app id.

    ``on_error(app_dir, message)`` is invoked for apps that failed to scan.
    Results are identical for any ``jobs`` value.
    """
    base = Path(root)
    if not base.is_dir():
        raise FileNotFoundError(f"corpus root not found: {base}")
    app_dirs = sorted((d for d in base.iterdir() if d.is_dir()), key=lambda d: d.name)
    tasks = [(str(d), config) for d in app_dirs]
    results: list[AppScanResult] = []
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_scan_app_entry, tasks))
    else:
        outcomes = [_scan_app_entry(t) for t in tasks]
    for app_dir, result, message in outcomes:
        if result is None:
            if on_error is not None:
                on_error(app_dir, message)
            continue
        results.append(result)
    results.sort(key=lambda r: r.app_id)
    return results


# -- metadata / truthset loading ---------------------------------------------------


def _parse_optional_int(raw: object, field_name: str, line: int) -> int | None:
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        raise SchemaError(field_name, f"line {line}: not an integer: {raw!r}")
    if value < 0:
        raise SchemaError(field_name, f"line {line}: must be >= 0")
    return value


def _parse_optional_rating(raw: object, line: int) -> float | None:
    if raw is None or raw == "":
        return None
    try:
        value = float(raw)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        raise SchemaError("rating_stars", f"line {line}: not a number: {raw!r}")
    if not 0.0 <= value <= 5.0:
        raise SchemaError("rating_stars", f"line {line}: must be in [0, 5]")
    return value


def _metadata_record(row: dict, line: int) -> AppMetadata:
    app_id = row.get("app_id")
    if not app_id or not isinstance(app_id, str):
        raise SchemaError("app_id", f"line {line}: missing")
    category = row.get("category")
    if not category or not isinstance(category, str):
        raise SchemaError("category", f"line {line}: missing")
    return AppMetadata(
        app_id=app_id,
        category=category.upper(),
        installs=_parse_optional_int(row.get("installs"), "installs", line),
        rating_stars=_parse_optional_rating(row.get("rating_stars"), line),
        virus_positive=_parse_optional_int(row.get("virus_positive"), "virus_positive", line),
    )


def load_metadata(path: str | Path) -> list[AppMetadata]:
    """Load app metadata from CSV (with header) or JSON-lines."""
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    records: list[AppMetadata] = []
    if stripped.startswith("{"):
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as err:
                raise SchemaError("metadata", f"line {line_no}: invalid JSON: {err}")
            if not isinstance(row, dict):
                raise SchemaError("metadata", f"line {line_no}: not an object")
            records.append(_metadata_record(row, line_no))
    else:
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None or "app_id" not in reader.fieldnames:
            raise SchemaError("app_id", "missing CSV header")
        for line_no, row in enumerate(reader, start=2):
            records.append(_metadata_record(row, line_no))
    seen: set[str] = set()
    for record in records:
        if record.app_id in seen:
            raise SchemaError("app_id", f"duplicate app_id {record.app_id!r}")
        seen.add(record.app_id)
    return records


def load_truthset(path: str | Path) -> list[TruthsetRecord]:
    """Load JSON-lines truthset records {app_id, detector, label}."""
    text = Path(path).read_text(encoding="utf-8")
    records: list[TruthsetRecord] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as err:
            raise SchemaError("truthset", f"line {line_no}: invalid JSON: {err}")
        if not isinstance(row, dict):
            raise SchemaError("truthset", f"line {line_no}: not an object")
        app_id = row.get("app_id")
        if not isinstance(app_id, str) or not app_id:
            raise SchemaError("app_id", f"line {line_no}: missing")
        raw_detector = row.get("detector")
        try:
            detector = DetectorId(raw_detector)
        except ValueError:
            raise SchemaError("detector", f"line {line_no}: unknown detector {raw_detector!r}")
        label = row.get("label")
        if not isinstance(label, bool):
            raise SchemaError("label", f"line {line_no}: must be true or false")
        records.append(TruthsetRecord(app_id, detector, label))
    return records


def metadata_index(records: list[AppMetadata]) -> dict[str, AppMetadata]:
    return {r.app_id: r for r in records}


def fill_missing_metadata(
    results: list[AppScanResult], meta: dict[str, AppMetadata]
) -> dict[str, AppMetadata]:
    """Return a copy of ``meta`` with UNKNOWN-category records for unmatched apps."""
    out = dict(meta)
    for result in results:
        if result.app_id not in out:
            out[result.app_id] = AppMetadata(app_id=result.app_id, category="UNKNOWN")
    return out


# -- aggregate tables ----------------------------------------------------------------


def category_table(
    results: list[AppScanResult], meta: dict[str, AppMetadata]
) -> list[CategoryRow]:
    """Per-category app counts, violating counts, rates, per-value app counts."""
    by_category: dict[str, list[AppScanResult]] = {}
    for result in results:
        record = meta.get(result.app_id)
        if record is None:
            raise SchemaError("app_id", f"no metadata for app {result.app_id!r}")
        by_category.setdefault(record.category, []).append(result)
    rows = []
    for category in sorted(by_category):
        members = by_category[category]
        violating = [r for r in members if r.violating]
        value_counts = tuple(
            sum(1 for r in members if value in r.values_present())
            for value in REPORTED_VALUES
        )
        rows.append(
            CategoryRow(
                category=category,
                app_count=len(members),
                violating_count=len(violating),
                rate_percent=pct_half_up(len(violating), len(members), 1),
                value_counts=value_counts,
            )
        )
    return rows


def overlap_table(
    results: list[AppScanResult], meta: dict[str, AppMetadata]
) -> list[OverlapRow]:
    """Violation counts vs virus-positive overlap for each (value, API) row."""
    rows = []
    for value, api in VALUE_API_ROWS:
        violating = [r for r in results if (value, api) in r.pairs_present()]
        overlap = [
            r
            for r in violating
            if (record := meta.get(r.app_id)) is not None and record.is_virus_positive
        ]
        violation_count = len(violating)
        rate = (
            pct_half_up(len(overlap), violation_count, 2) if violation_count else None
        )
        rows.append(OverlapRow(value, api, len(overlap), violation_count, rate))
    return rows


def rating_bucket_index(rating: float) -> int:
    """0 -> bucket 0 (no feedback); otherwise (a, b] half-open buckets."""
    if rating == 0:
        return 0
    for i, bound in enumerate((1, 2, 3, 4, 5), start=1):
        if rating <= bound:
            return i
    return 5


def install_bucket_index(installs: int) -> int:
    for i, bound in enumerate(_INSTALL_BOUNDS):
        if installs < bound:
            return i
    return len(_INSTALL_BOUNDS)


def bucket_tables(
    results: list[AppScanResult], meta: dict[str, AppMetadata]
) -> tuple[list[BucketRow], list[BucketRow]]:
    """(rating rows, install rows): violating-app histograms per (value, API)."""
    rating_rows = []
    install_rows = []
    for value, api in VALUE_API_ROWS:
        violating = [r for r in results if (value, api) in r.pairs_present()]
        rating_counts = [0] * len(RATING_BUCKET_LABELS)
        rating_unknown = 0
        install_counts = [0] * len(INSTALL_BUCKET_LABELS)
        install_unknown = 0
        for result in violating:
            record = meta.get(result.app_id)
            rating = record.rating_stars if record else None
            installs = record.installs if record else None
            if rating is None:
                rating_unknown += 1
            else:
                rating_counts[rating_bucket_index(rating)] += 1
            if installs is None:
                install_unknown += 1
            else:
                install_counts[install_bucket_index(installs)] += 1
        rating_rows.append(BucketRow(value, api, tuple(rating_counts), rating_unknown))
        install_rows.append(BucketRow(value, api, tuple(install_counts), install_unknown))
    return rating_rows, install_rows


def evaluate(
    results: list[AppScanResult], truthset: list[TruthsetRecord]
) -> list[EvalMetrics]:
    """Per-detector confusion matrix of scan verdicts against labels."""
    by_id = {r.app_id: r for r in results}
    confusion: dict[DetectorId, list[int]] = {}
    for record in truthset:
        result = by_id.get(record.app_id)
        if result is None:
            raise SchemaError("app_id", f"truthset references unscanned app {record.app_id!r}")
        verdict = result.verdict(record.detector)
        cell = confusion.setdefault(record.detector, [0, 0, 0, 0])  # tp fp fn tn
        if verdict and record.label:
            cell[0] += 1
        elif verdict and not record.label:
            cell[1] += 1
        elif not verdict and record.label:
            cell[2] += 1
        else:
            cell[3] += 1
    metrics = []
    for detector in DetectorId:
        if detector not in confusion:
            continue
        tp, fp, fn, tn = confusion[detector]
        total = tp + fp + fn + tn
        accuracy = (tp + tn) / total
        recall = tp / (tp + fn) if (tp + fn) else None
        metrics.append(EvalMetrics(detector, tp, fp, fn, tn, accuracy, recall))
    return metrics
