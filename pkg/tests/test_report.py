import pytest

from vvd.detectors import ApiFamily, DetectorId, Finding, ValueCategory
from vvd.java_ast import ParseDiagnostic, Severity
from vvd.report import (
    AppScanResult,
    SchemaError,
    assemble,
    from_json,
    render_text,
    result_to_dict,
    to_json,
)
from vvd.spans import Span


def _finding(detector=DetectorId.ANIMATION_HEDONISM, line=3):
    return Finding(
        detector,
        detector.api,
        detector.values[0],
        Span("src/A.java", line, 5, line, 25),
        "setDuration(3000)",
    )


def test_assemble_empty_has_all_false_verdicts():
    result = assemble("app", 2, 0, [], [])
    assert set(result.verdicts) == set(DetectorId)
    assert not any(result.verdicts.values())
    assert not result.violating


def test_assemble_single_finding_single_verdict():
    result = assemble("app", 2, 0, [_finding()], [])
    assert result.verdicts[DetectorId.ANIMATION_HEDONISM]
    assert sum(result.verdicts.values()) == 1


def test_assemble_duplicate_findings_project_once():
    result = assemble("app", 2, 0, [_finding(), _finding()], [])
    assert result.verdicts[DetectorId.ANIMATION_HEDONISM] is True
    again = assemble("app", 2, 0, result.findings, result.diagnostics)
    assert again.verdicts == result.verdicts


def test_round_trip_identity():
    diagnostics = [
        ParseDiagnostic(Span("src/B.java", 1, 1, 1, 4), "weird member", Severity.RECOVERED)
    ]
    result = assemble("app", 3, 1, [_finding(), _finding(DetectorId.TELEPHONY_SMS_SECURITY, 9)], diagnostics)
    assert from_json(to_json(result)) == result


def test_to_json_deterministic():
    result = assemble("app", 1, 0, [_finding()], [])
    assert to_json(result) == to_json(result)


def test_empty_result_serialization():
    result = assemble("empty", 0, 0, [], [])
    data = result_to_dict(result)
    assert data["findings"] == []
    assert set(data["verdicts"]) == {d.value for d in DetectorId}
    assert not any(data["verdicts"].values())


def test_from_json_missing_verdicts():
    result = assemble("app", 1, 0, [], [])
    data = result_to_dict(result)
    del data["verdicts"]
    import json

    with pytest.raises(SchemaError) as exc:
        from_json(json.dumps(data))
    assert exc.value.field_name == "verdicts"


def test_from_json_wrong_type_files_scanned():
    result = assemble("app", 1, 0, [], [])
    data = result_to_dict(result)
    data["files_scanned"] = "three"
    import json

    with pytest.raises(SchemaError) as exc:
        from_json(json.dumps(data))
    assert exc.value.field_name == "files_scanned"


def test_from_json_unknown_detector():
    result = assemble("app", 1, 0, [_finding()], [])
    data = result_to_dict(result)
    data["findings"][0]["detector"] = "made_up"
    import json

    with pytest.raises(SchemaError):
        from_json(json.dumps(data))


def test_from_json_invalid_document():
    with pytest.raises(SchemaError):
        from_json("not json at all")
    with pytest.raises(SchemaError):
        from_json("[1, 2]")


def test_render_text_lists_findings_and_verdicts():
    result = assemble("app", 1, 0, [_finding()], [])
    text = render_text(result)
    assert "src/A.java:3:5" in text
    assert "animation_hedonism" in text
    assert text.endswith("verdicts: animation_hedonism\n")


def test_render_text_clean_app():
    text = render_text(assemble("app", 1, 0, [], []))
    assert "verdicts: none" in text
