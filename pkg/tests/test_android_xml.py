import itertools

import pytest

from vvd.android_xml import (
    Dimension,
    DimensionUnit,
    XmlError,
    nfc_priority_violations,
    nfc_rank,
    parse_dimension,
    parse_layout,
    parse_manifest,
)

NDEF = "android.nfc.action.NDEF_DISCOVERED"
TECH = "android.nfc.action.TECH_DISCOVERED"
TAG = "android.nfc.action.TAG_DISCOVERED"


def manifest_with_actions(*action_groups):
    activities = []
    for i, actions in enumerate(action_groups):
        filters = "".join(f'<action android:name="{a}"/>' for a in actions)
        activities.append(
            f'<activity android:name=".A{i}"><intent-filter>{filters}</intent-filter></activity>'
        )
    return (
        '<?xml version="1.0" encoding="utf-8"?>'
        '<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="p">'
        f"<application>{''.join(activities)}</application></manifest>"
    )


def test_ranks():
    assert nfc_rank(NDEF) == 0
    assert nfc_rank(TECH) == 1
    assert nfc_rank(TAG) == 2
    assert nfc_rank("android.intent.action.VIEW") is None


def test_parse_manifest_document_order():
    model = parse_manifest(manifest_with_actions([TAG, NDEF]))
    actions = model.all_actions()
    assert [(a.name, a.document_order) for a in actions] == [(TAG, 0), (NDEF, 1)]


def test_parse_manifest_without_nfc_actions():
    model = parse_manifest(manifest_with_actions(["android.intent.action.VIEW"]))
    assert nfc_priority_violations(model) == []
    assert [a.name for a in model.all_actions()] == ["android.intent.action.VIEW"]


def test_parse_manifest_truncated_raises():
    with pytest.raises(XmlError):
        parse_manifest("<manifest><application>")


def test_violation_tag_before_ndef():
    model = parse_manifest(manifest_with_actions([TAG, NDEF]))
    violations = nfc_priority_violations(model)
    assert len(violations) == 1
    assert violations[0].earlier.name == TAG
    assert violations[0].later.name == NDEF


def test_priority_order_is_clean():
    model = parse_manifest(manifest_with_actions([NDEF, TECH, TAG]))
    assert nfc_priority_violations(model) == []


def test_single_action_no_pair():
    model = parse_manifest(manifest_with_actions([TECH]))
    assert nfc_priority_violations(model) == []


def test_violations_across_activities():
    model = parse_manifest(manifest_with_actions([TAG], [NDEF]))
    assert len(nfc_priority_violations(model)) == 1


def brute_force_inversions(actions):
    ranked = [(i, nfc_rank(a)) for i, a in enumerate(actions) if nfc_rank(a) is not None]
    return sum(
        1
        for (i, ri), (j, rj) in itertools.combinations(ranked, 2)
        if i < j and ri > rj
    )


@pytest.mark.parametrize("perm", list(itertools.permutations([NDEF, TECH, TAG])))
def test_all_permutations_match_bruteforce(perm):
    model = parse_manifest(manifest_with_actions(list(perm)))
    violations = nfc_priority_violations(model)
    assert len(violations) == brute_force_inversions(perm)
    ranks = [nfc_rank(a.name) for a in model.all_actions()]
    assert (violations == []) == (ranks == sorted(ranks))


def test_non_nfc_actions_do_not_matter():
    noisy = ["android.intent.action.MAIN", TAG, "android.intent.action.VIEW", NDEF]
    clean = [TAG, NDEF]
    noisy_model = parse_manifest(manifest_with_actions(noisy))
    clean_model = parse_manifest(manifest_with_actions(clean))
    assert len(nfc_priority_violations(noisy_model)) == len(
        nfc_priority_violations(clean_model)
    )


LAYOUT = """<?xml version="1.0" encoding="utf-8"?>
<FrameLayout xmlns:android="http://schemas.android.com/apk/res/android"
    android:layout_width="match_parent" android:layout_height="match_parent">
  <SurfaceView android:layout_width="1dp" android:layout_height="1dp"/>
  <TextView android:layout_width="wrap_content" android:layout_height="12sp"/>
</FrameLayout>
"""


def test_parse_layout_dimensions():
    model = parse_layout(LAYOUT, "res/layout/main.xml")
    tags = [e.tag for e in model.elements]
    assert tags == ["FrameLayout", "SurfaceView", "TextView"]
    surface = model.elements[1]
    assert surface.width == Dimension(1.0, DimensionUnit.DP)
    assert surface.height == Dimension(1.0, DimensionUnit.DP)
    frame = model.elements[0]
    assert frame.width.unit is DimensionUnit.MATCH_PARENT


def test_parse_layout_malformed():
    with pytest.raises(XmlError):
        parse_layout("<FrameLayout>", "res/layout/broken.xml")


@pytest.mark.parametrize(
    "raw,expected",
    [
        ("1dp", Dimension(1.0, DimensionUnit.DP)),
        ("10dip", Dimension(10.0, DimensionUnit.DP)),
        ("2.5px", Dimension(2.5, DimensionUnit.PX)),
        ("12sp", Dimension(12.0, DimensionUnit.SP)),
        ("match_parent", Dimension(None, DimensionUnit.MATCH_PARENT)),
        ("fill_parent", Dimension(None, DimensionUnit.MATCH_PARENT)),
        ("wrap_content", Dimension(None, DimensionUnit.WRAP_CONTENT)),
        ("@dimen/preview", Dimension(None, DimensionUnit.OTHER)),
        ("10mm", Dimension(None, DimensionUnit.OTHER)),
    ],
)
def test_parse_dimension(raw, expected):
    assert parse_dimension(raw) == expected
