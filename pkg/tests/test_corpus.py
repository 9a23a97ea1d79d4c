import pytest

from conftest import FIXTURES
from vvd.corpus import (
    AppMetadata,
    TruthsetRecord,
    bucket_tables,
    category_table,
    evaluate,
    install_bucket_index,
    load_metadata,
    load_truthset,
    metadata_index,
    overlap_table,
    pct_half_up,
    rating_bucket_index,
    scan_app,
)
from vvd.detectors import ApiFamily, DetectorId, Finding, ValueCategory
from vvd.report import SchemaError, assemble
from vvd.spans import Span


def make_result(app_id, detectors=(), files=1):
    findings = []
    for i, detector in enumerate(detectors):
        for value in detector.values:
            findings.append(
                Finding(
                    detector,
                    detector.api,
                    value,
                    Span("src/F.java", i + 1, 1, i + 1, 9),
                    "planted",
                )
            )
    return assemble(app_id, files, 0, findings, [])


def meta(app_id, category="GAME", installs=None, rating=None, virus=None):
    return AppMetadata(app_id, category, installs, rating, virus)


# -- scan_app ---------------------------------------------------------------


def test_scan_app_empty_dir(tmp_path):
    result = scan_app(tmp_path)
    assert result.files_scanned == 0 and result.files_failed == 0
    assert not any(result.verdicts.values())


def test_scan_app_missing_dir(tmp_path):
    with pytest.raises(OSError):
        scan_app(tmp_path / "missing")


def test_scan_app_planted_all_has_all_verdicts():
    result = scan_app(FIXTURES / "planted_all")
    assert all(result.verdicts.values())
    assert len(result.findings) == 12


def test_scan_app_manifest_only_violation(tmp_path):
    app = tmp_path / "nfc_only"
    app.mkdir()
    (app / "AndroidManifest.xml").write_text(
        '<manifest xmlns:android="http://schemas.android.com/apk/res/android">'
        '<application><activity android:name=".A"><intent-filter>'
        '<action android:name="android.nfc.action.TAG_DISCOVERED"/>'
        '<action android:name="android.nfc.action.NDEF_DISCOVERED"/>'
        "</intent-filter></activity></application></manifest>"
    )
    result = scan_app(app)
    fired = {d for d, v in result.verdicts.items() if v}
    assert fired == {DetectorId.NFC_INTENT_SELF_DIRECTION}


def test_scan_app_counts_failed_files(tmp_path):
    app = tmp_path / "broken"
    (app / "src").mkdir(parents=True)
    (app / "src" / "Bad.java").write_text("% nope")
    (app / "src" / "Ok.java").write_text("class Ok {}")
    result = scan_app(app)
    assert result.files_scanned == 1
    assert result.files_failed == 1
    assert any(d.severity.value == "fatal" for d in result.diagnostics)


# -- metadata loading ----------------------------------------------------------


def test_load_metadata_csv(tmp_path):
    path = tmp_path / "meta.csv"
    path.write_text(
        "app_id,category,installs,rating_stars,virus_positive\n"
        "a1,GAME,5000,4.2,0\n"
        "a2,social,,,\n"
    )
    records = load_metadata(path)
    assert records[0] == AppMetadata("a1", "GAME", 5000, 4.2, 0)
    assert records[1] == AppMetadata("a2", "SOCIAL", None, None, None)
    assert not records[0].is_virus_positive


def test_load_metadata_jsonl(tmp_path):
    path = tmp_path / "meta.jsonl"
    path.write_text(
        '{"app_id": "a1", "category": "GAME", "installs": 10, "rating_stars": 0, "virus_positive": 3}\n'
        '{"app_id": "a2", "category": "TOOLS"}\n'
    )
    records = load_metadata(path)
    assert records[0].virus_positive == 3
    assert records[0].is_virus_positive
    assert records[1].installs is None


def test_load_metadata_duplicate_app_id(tmp_path):
    path = tmp_path / "meta.csv"
    path.write_text("app_id,category\na1,GAME\na1,TOOLS\n")
    with pytest.raises(SchemaError):
        load_metadata(path)


def test_load_metadata_bad_rating(tmp_path):
    path = tmp_path / "meta.csv"
    path.write_text("app_id,category,rating_stars\na1,GAME,9.5\n")
    with pytest.raises(SchemaError) as exc:
        load_metadata(path)
    assert "rating_stars" in str(exc.value)


def test_load_metadata_unknown_columns_ignored(tmp_path):
    path = tmp_path / "meta.csv"
    path.write_text("app_id,category,color\na1,GAME,red\n")
    assert load_metadata(path)[0].category == "GAME"


def test_load_truthset(tmp_path):
    path = tmp_path / "truth.jsonl"
    path.write_text(
        '{"app_id": "a1", "detector": "animation_hedonism", "label": true}\n'
        '{"app_id": "a1", "detector": "mtp_self_direction", "label": false}\n'
    )
    records = load_truthset(path)
    assert records[0] == TruthsetRecord("a1", DetectorId.ANIMATION_HEDONISM, True)


def test_load_truthset_unknown_detector(tmp_path):
    path = tmp_path / "truth.jsonl"
    path.write_text('{"app_id": "a1", "detector": "made_up", "label": true}\n')
    with pytest.raises(SchemaError):
        load_truthset(path)


# -- category table -------------------------------------------------------------


def category_fixture(sizes):
    """sizes: {category: (total, violating)} -> (results, meta index)."""
    results, records = [], []
    counter = 0
    for category, (total, violating) in sizes.items():
        for i in range(total):
            app_id = f"{category.lower()}{i:03}"
            detectors = (DetectorId.MEDIA_AD_UNIVERSALISM,) if i < violating else ()
            results.append(make_result(app_id, detectors))
            records.append(meta(app_id, category))
            counter += 1
    return results, metadata_index(records)


def test_category_rates_match_published_rows():
    # 5/20 -> 25.0, 0/8 -> 0.0, 1/7 -> 14.3, 1/17 -> 5.9
    results, index = category_fixture(
        {"DATING": (20, 5), "LIBRARIES": (8, 0), "COMICS": (7, 1), "ART": (17, 1)}
    )
    rows = {r.category: r for r in category_table(results, index)}
    assert rows["DATING"].rate_percent == 25.0
    assert rows["LIBRARIES"].rate_percent == 0.0
    assert rows["COMICS"].rate_percent == 14.3
    assert rows["ART"].rate_percent == 5.9


def test_category_value_counts_count_apps():
    results = [
        make_result("a", (DetectorId.MEDIA_AD_UNIVERSALISM, DetectorId.MEDIA_AD_SELF_DIRECTION)),
        make_result("b", (DetectorId.MEDIA_AD_UNIVERSALISM, DetectorId.ANIMATION_HEDONISM)),
        make_result("c", ()),
    ]
    index = metadata_index([meta("a"), meta("b"), meta("c")])
    (row,) = category_table(results, index)
    assert row.app_count == 3 and row.violating_count == 2
    by_value = dict(zip(("hedonism", "self_direction", "universalism", "security", "conformity"), row.value_counts))
    assert by_value["universalism"] == 2
    assert by_value["self_direction"] == 1
    assert by_value["hedonism"] == 1
    assert by_value["security"] == 0


def test_category_conservation():
    results, index = category_fixture({"GAME": (4, 1), "TOOLS": (3, 2), "ART": (2, 0)})
    rows = category_table(results, index)
    assert sum(r.app_count for r in rows) == len(results)
    assert {r.category for r in rows} == {"GAME", "TOOLS", "ART"}


def test_category_missing_metadata_raises():
    with pytest.raises(SchemaError):
        category_table([make_result("ghost")], {})


# -- overlap table -----------------------------------------------------------------


def overlap_fixture(violating, virus_overlap, detector=DetectorId.TELEPHONY_SMS_SECURITY):
    results, records = [], []
    for i in range(violating):
        app_id = f"v{i:04}"
        results.append(make_result(app_id, (detector,)))
        records.append(meta(app_id, virus=(2 if i < virus_overlap else 0)))
    return results, metadata_index(records)


def test_overlap_rates_match_published_cells():
    # 74/117 -> 63.25, 2/14 -> 14.29, 157/975 -> 16.10
    for violating, overlap, detector, value, api, expected in [
        (117, 74, DetectorId.TELEPHONY_SMS_SECURITY, ValueCategory.SECURITY, ApiFamily.TELEPHONY, 63.25),
        (14, 2, DetectorId.NFC_INTENT_SELF_DIRECTION, ValueCategory.SELF_DIRECTION, ApiFamily.NFC, 14.29),
        (975, 157, DetectorId.MEDIA_AD_SELF_DIRECTION, ValueCategory.SELF_DIRECTION, ApiFamily.MEDIA, 16.10),
    ]:
        results, index = overlap_fixture(violating, overlap, detector)
        rows = {(r.value, r.api): r for r in overlap_table(results, index)}
        row = rows[(value, api)]
        assert row.violation_count == violating
        assert row.virus_and_violation_count == overlap
        assert row.overlap_rate_percent == expected


def test_overlap_zero_denominator_is_na():
    rows = overlap_table([], {})
    assert all(r.overlap_rate_percent is None for r in rows)
    assert all(r.violation_count == 0 for r in rows)


def test_overlap_bounds():
    results, index = overlap_fixture(10, 10)
    rows = {(r.value, r.api): r for r in overlap_table(results, index)}
    row = rows[(ValueCategory.SECURITY, ApiFamily.TELEPHONY)]
    assert row.overlap_rate_percent == 100.0


# -- buckets -------------------------------------------------------------------------


def test_rating_bucket_edges():
    assert rating_bucket_index(0) == 0  # no feedback
    assert rating_bucket_index(0.5) == 1
    assert rating_bucket_index(1.0) == 1
    assert rating_bucket_index(4.0) == 4  # (3,4]
    assert rating_bucket_index(4.2) == 5
    assert rating_bucket_index(5.0) == 5


def test_install_bucket_edges():
    assert install_bucket_index(0) == 0
    assert install_bucket_index(99) == 0
    assert install_bucket_index(100) == 1
    assert install_bucket_index(60000) == 4  # [50000, 1e5)
    assert install_bucket_index(100000) == 5
    assert install_bucket_index(10_000_000) == 6


def test_bucket_tables_histogram_and_unknowns():
    detector = DetectorId.TELEPHONY_SMS_SECURITY
    results = [
        make_result("a", (detector,)),
        make_result("b", (detector,)),
        make_result("c", (detector,)),
        make_result("d", ()),  # not violating; ignored
    ]
    index = metadata_index(
        [
            meta("a", installs=60000, rating=0.0),
            meta("b", installs=None, rating=4.0),
            meta("c", installs=120, rating=None),
            meta("d", installs=5, rating=5.0),
        ]
    )
    rating_rows, install_rows = bucket_tables(results, index)
    rating = {(r.value, r.api): r for r in rating_rows}[
        (ValueCategory.SECURITY, ApiFamily.TELEPHONY)
    ]
    install = {(r.value, r.api): r for r in install_rows}[
        (ValueCategory.SECURITY, ApiFamily.TELEPHONY)
    ]
    assert rating.counts[0] == 1  # the 0 bucket
    assert rating.counts[4] == 1  # (3,4]
    assert rating.unknown == 1
    assert sum(rating.counts) == 2
    assert install.counts[4] == 1  # [50000,1e5)
    assert install.counts[1] == 1  # [100,1000)
    assert install.unknown == 1


# -- evaluate ----------------------------------------------------------------------------


def confusion_fixture(detector, tp, fp, fn, tn):
    results, records = [], []
    idx = 0
    for verdict, label, count in [
        (True, True, tp),
        (True, False, fp),
        (False, True, fn),
        (False, False, tn),
    ]:
        for _ in range(count):
            app_id = f"app{idx:04}"
            results.append(make_result(app_id, (detector,) if verdict else ()))
            records.append(TruthsetRecord(app_id, detector, label))
            idx += 1
    return results, records


def test_evaluate_media_universalism_row():
    # algebraic oracle: accuracy (9+33)/46, recall 9/11
    results, truthset = confusion_fixture(DetectorId.MEDIA_AD_UNIVERSALISM, 9, 2, 2, 33)
    (row,) = evaluate(results, truthset)
    assert (row.tp, row.fp, row.fn, row.tn) == (9, 2, 2, 33)
    assert row.accuracy == pytest.approx(42 / 46)
    assert row.recall == pytest.approx(9 / 11)
    assert pct_half_up(42, 46, 1) == 91.3


def test_evaluate_media_hedonism_row():
    # algebraic oracle: accuracy 35/46, recall 21/26
    results, truthset = confusion_fixture(DetectorId.MEDIA_PLAYER_NO_STOP, 21, 6, 5, 14)
    (row,) = evaluate(results, truthset)
    assert row.accuracy == pytest.approx(35 / 46)
    assert row.recall == pytest.approx(21 / 26)


def test_evaluate_all_negative_recall_na():
    results, truthset = confusion_fixture(DetectorId.MTP_SELF_DIRECTION, 0, 0, 0, 12)
    (row,) = evaluate(results, truthset)
    assert row.accuracy == 1.0
    assert row.recall is None


def test_evaluate_unknown_app_raises():
    with pytest.raises(SchemaError):
        evaluate([], [TruthsetRecord("ghost", DetectorId.ANIMATION_HEDONISM, True)])


def test_evaluate_self_consistent_truthset_perfect():
    results = [
        make_result("a", (DetectorId.ANIMATION_HEDONISM,)),
        make_result("b", ()),
    ]
    truthset = [
        TruthsetRecord(r.app_id, d, r.verdicts[d]) for r in results for d in DetectorId
    ]
    for row in evaluate(results, truthset):
        assert row.accuracy == 1.0


def test_half_up_rounding():
    assert pct_half_up(1, 16, 1) == 6.3  # 6.25 rounds half-up
    assert pct_half_up(1, 8, 2) == 12.5
    assert pct_half_up(1, 3, 2) == 33.33
