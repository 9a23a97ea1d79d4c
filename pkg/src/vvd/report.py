"""Per-app scan results and their JSON interchange format (schema_version 1).

``to_json``/``from_json`` round-trip structurally; field order is fixed so
repeated runs serialize byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .detectors import ApiFamily, DetectorId, Finding, ValueCategory
from .java_ast import ParseDiagnostic, Severity
from .spans import Span

SCHEMA_VERSION = 1


class SchemaError(Exception):
    """A result/metadata/truthset document does not match its schema."""

    def __init__(self, field_name: str, detail: str = "") -> None:
        message = f"invalid or missing field {field_name!r}"
        if detail:
            message += f": {detail}"
        super().__init__(message)
        self.field_name = field_name


@dataclass
class AppScanResult:
    app_id: str
    files_scanned: int
    files_failed: int
    findings: list[Finding] = field(default_factory=list)
    verdicts: dict[DetectorId, bool] = field(default_factory=dict)
    diagnostics: list[ParseDiagnostic] = field(default_factory=list)

    def verdict(self, detector: DetectorId) -> bool:
        return self.verdicts.get(detector, False)

    @property
    def violating(self) -> bool:
        return any(self.verdicts.values())

    def values_present(self) -> set[ValueCategory]:
        return {f.value for f in self.findings}

    def pairs_present(self) -> set[tuple[ValueCategory, ApiFamily]]:
        return {(f.value, f.api) for f in self.findings}


def assemble(
    app_id: str,
    files_scanned: int,
    files_failed: int,
    findings: list[Finding],
    diagnostics: list[ParseDiagnostic],
) -> AppScanResult:
    """Build a result; the verdict map is the projection of the findings."""
    fired = {f.detector for f in findings}
    verdicts = {detector: detector in fired for detector in DetectorId}
    return AppScanResult(
        app_id=app_id,
        files_scanned=files_scanned,
        files_failed=files_failed,
        findings=list(findings),
        verdicts=verdicts,
        diagnostics=list(diagnostics),
    )


def _span_to_dict(span: Span) -> dict:
    return {
        "file": span.file,
        "start_line": span.start_line,
        "start_col": span.start_col,
        "end_line": span.end_line,
        "end_col": span.end_col,
    }


def result_to_dict(result: AppScanResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "app_id": result.app_id,
        "files_scanned": result.files_scanned,
        "files_failed": result.files_failed,
        "findings": [
            {
                "detector": f.detector.value,
                "api": f.api.value,
                "value": f.value.value,
                "span": _span_to_dict(f.span),
                "evidence": f.evidence,
            }
            for f in result.findings
        ],
        "verdicts": {d.value: result.verdicts.get(d, False) for d in DetectorId},
        "diagnostics": [
            {
                "severity": d.severity.value,
                "message": d.message,
                "span": _span_to_dict(d.span),
            }
            for d in result.diagnostics
        ],
    }


def to_json(result: AppScanResult) -> str:
    return json.dumps(result_to_dict(result), indent=2) + "\n"


def _require(data: dict, key: str, types: type | tuple) -> object:
    if key not in data:
        raise SchemaError(key)
    value = data[key]
    if not isinstance(value, types):
        raise SchemaError(key, f"unexpected type {type(value).__name__}")
    return value


def _int_field(data: dict, key: str) -> int:
    if key not in data:
        raise SchemaError(key)
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(key, f"unexpected type {type(value).__name__}")
    return value


def _span_from_dict(data: object, context: str) -> Span:
    if not isinstance(data, dict):
        raise SchemaError(context, "span must be an object")
    try:
        return Span(
            file=str(_require(data, "file", str)),
            start_line=_int_field(data, "start_line"),
            start_col=_int_field(data, "start_col"),
            end_line=_int_field(data, "end_line"),
            end_col=_int_field(data, "end_col"),
        )
    except ValueError as err:
        raise SchemaError(context, str(err)) from err


def _enum_value(enum_cls, raw: object, field_name: str):
    try:
        return enum_cls(raw)
    except ValueError as err:
        raise SchemaError(field_name, f"unknown value {raw!r}") from err


def result_from_dict(data: object) -> AppScanResult:
    if not isinstance(data, dict):
        raise SchemaError("document", "must be a JSON object")
    version = _int_field(data, "schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError("schema_version", f"unsupported version {version}")
    app_id = str(_require(data, "app_id", str))
    files_scanned = _int_field(data, "files_scanned")
    files_failed = _int_field(data, "files_failed")

    raw_findings = _require(data, "findings", list)
    findings = []
    for raw in raw_findings:  # type: ignore[union-attr]
        if not isinstance(raw, dict):
            raise SchemaError("findings", "entries must be objects")
        detector = _enum_value(DetectorId, _require(raw, "detector", str), "detector")
        api = _enum_value(ApiFamily, _require(raw, "api", str), "api")
        value = _enum_value(ValueCategory, _require(raw, "value", str), "value")
        evidence = str(_require(raw, "evidence", str))
        if not evidence:
            raise SchemaError("evidence", "must be non-empty")
        findings.append(
            Finding(detector, api, value, _span_from_dict(raw.get("span"), "span"), evidence)
        )

    raw_verdicts = _require(data, "verdicts", dict)
    verdicts: dict[DetectorId, bool] = {}
    for detector in DetectorId:
        if detector.value not in raw_verdicts:  # type: ignore[operator]
            raise SchemaError("verdicts", f"missing detector {detector.value!r}")
        flag = raw_verdicts[detector.value]  # type: ignore[index]
        if not isinstance(flag, bool):
            raise SchemaError("verdicts", f"{detector.value} must be a boolean")
        verdicts[detector] = flag

    raw_diags = _require(data, "diagnostics", list)
    diagnostics = []
    for raw in raw_diags:  # type: ignore[union-attr]
        if not isinstance(raw, dict):
            raise SchemaError("diagnostics", "entries must be objects")
        severity_raw = _require(raw, "severity", str)
        try:
            severity = Severity(severity_raw)
        except ValueError as err:
            raise SchemaError("severity", f"unknown value {severity_raw!r}") from err
        diagnostics.append(
            ParseDiagnostic(
                _span_from_dict(raw.get("span"), "span"),
                str(_require(raw, "message", str)),
                severity,
            )
        )

    return AppScanResult(
        app_id=app_id,
        files_scanned=files_scanned,
        files_failed=files_failed,
        findings=findings,
        verdicts=verdicts,
        diagnostics=diagnostics,
    )


def from_json(text: str) -> AppScanResult:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError("document", f"invalid JSON: {err}") from err
    return result_from_dict(data)


def render_text(result: AppScanResult) -> str:
    """Human-readable view over the same result, one finding per line."""
    lines = [
        f"app: {result.app_id}",
        f"files: {result.files_scanned} scanned, {result.files_failed} failed",
    ]
    for f in result.findings:
        lines.append(
            f"{f.span.file}:{f.span.start_line}:{f.span.start_col}: "
            f"{f.detector.value} [{f.api.value}/{f.value.value}] {f.evidence}"
        )
    for d in result.diagnostics:
        lines.append(
            f"{d.span.file}:{d.span.start_line}:{d.span.start_col}: "
            f"{d.severity.value}: {d.message}"
        )
    fired = [d.value for d in DetectorId if result.verdicts.get(d, False)]
    lines.append("verdicts: " + (", ".join(fired) if fired else "none"))
    return "\n".join(lines) + "\n"
