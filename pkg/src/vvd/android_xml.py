"""AndroidManifest.xml and layout-resource models.

Input is decoded-text XML (as emitted by a decompile step). Attribute and
tag matching strips namespace prefixes so ``android:name`` and oddly
prefixed variants behave the same.
"""

from __future__ import annotations

import enum
import xml.parsers.expat
from dataclasses import dataclass

from .spans import Span

NFC_ACTION_RANK: dict[str, int] = {
    "android.nfc.action.NDEF_DISCOVERED": 0,
    "android.nfc.action.TECH_DISCOVERED": 1,
    "android.nfc.action.TAG_DISCOVERED": 2,
}


def nfc_rank(action: str) -> int | None:
    """Dispatch priority rank; lower rank = higher priority. None if not NFC."""
    return NFC_ACTION_RANK.get(action)


class XmlError(Exception):
    def __init__(self, message: str, file: str, line: int, col: int) -> None:
        super().__init__(f"{file}:{line}:{col}: {message}")
        self.file = file
        self.line = line
        self.col = col


@dataclass(frozen=True)
class IntentAction:
    name: str
    document_order: int
    span: Span


@dataclass(frozen=True)
class IntentFilter:
    actions: tuple[IntentAction, ...]


@dataclass(frozen=True)
class Activity:
    name: str
    intent_filters: tuple[IntentFilter, ...]


@dataclass(frozen=True)
class ManifestModel:
    file: str
    activities: tuple[Activity, ...]

    def all_actions(self) -> list[IntentAction]:
        out = [
            action
            for activity in self.activities
            for ifilter in activity.intent_filters
            for action in ifilter.actions
        ]
        out.sort(key=lambda a: a.document_order)
        return out


class DimensionUnit(enum.Enum):
    DP = "dp"
    PX = "px"
    SP = "sp"
    MATCH_PARENT = "match_parent"
    WRAP_CONTENT = "wrap_content"
    OTHER = "other"


@dataclass(frozen=True)
class Dimension:
    value: float | None
    unit: DimensionUnit

    @property
    def is_absolute(self) -> bool:
        return self.unit in (DimensionUnit.DP, DimensionUnit.PX) and self.value is not None


@dataclass(frozen=True)
class LayoutElement:
    tag: str
    width: Dimension | None
    height: Dimension | None
    span: Span


@dataclass(frozen=True)
class LayoutModel:
    file: str
    elements: tuple[LayoutElement, ...]


@dataclass(frozen=True)
class NfcOrderViolation:
    """A lower-priority NFC action declared before a higher-priority one."""

    earlier: IntentAction
    later: IntentAction


def _local(name: str) -> str:
    return name.rsplit(":", 1)[-1]


def _element_span(parser: xml.parsers.expat.XMLParserType, file: str, tag: str) -> Span:
    line = parser.CurrentLineNumber
    col = parser.CurrentColumnNumber + 1
    return Span(file, line, col, line, col + len(tag))


def parse_manifest(xml_text: str, file: str = "AndroidManifest.xml") -> ManifestModel:
    """Collect activities, their intent filters, and action strings in document order."""
    activities: list[Activity] = []
    stack: list[str] = []
    current_activity: dict | None = None
    current_filter: list[IntentAction] | None = None
    order = 0

    parser = xml.parsers.expat.ParserCreate()

    def start(name: str, attrs: dict[str, str]) -> None:
        nonlocal current_activity, current_filter, order
        tag = _local(name)
        stack.append(tag)
        if tag == "activity":
            current_activity = {"name": _attr(attrs, "name") or "", "filters": []}
        elif tag == "intent-filter" and current_activity is not None:
            current_filter = []
        elif tag == "action" and current_filter is not None:
            action_name = _attr(attrs, "name") or ""
            current_filter.append(
                IntentAction(action_name, order, _element_span(parser, file, name))
            )
            order += 1

    def end(name: str) -> None:
        nonlocal current_activity, current_filter
        tag = _local(name)
        while stack and stack.pop() != tag:
            pass
        if tag == "intent-filter" and current_filter is not None:
            if current_activity is not None:
                current_activity["filters"].append(IntentFilter(tuple(current_filter)))
            current_filter = None
        elif tag == "activity" and current_activity is not None:
            activities.append(
                Activity(current_activity["name"], tuple(current_activity["filters"]))
            )
            current_activity = None

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    try:
        parser.Parse(xml_text, True)
    except xml.parsers.expat.ExpatError as err:
        raise XmlError(
            xml.parsers.expat.errors.messages[err.code], file, err.lineno, err.offset + 1
        ) from err
    return ManifestModel(file, tuple(activities))


def _attr(attrs: dict[str, str], local_name: str) -> str | None:
    for key, value in attrs.items():
        if _local(key) == local_name:
            return value
    return None


_DIM_UNITS = {"dp": DimensionUnit.DP, "dip": DimensionUnit.DP, "px": DimensionUnit.PX,
              "sp": DimensionUnit.SP}


def parse_dimension(raw: str) -> Dimension:
    text = raw.strip()
    if text in ("match_parent", "fill_parent"):
        return Dimension(None, DimensionUnit.MATCH_PARENT)
    if text == "wrap_content":
        return Dimension(None, DimensionUnit.WRAP_CONTENT)
    for suffix, unit in _DIM_UNITS.items():
        if text.endswith(suffix):
            number = text[: -len(suffix)]
            try:
                return Dimension(float(number), unit)
            except ValueError:
                break
    return Dimension(None, DimensionUnit.OTHER)


def parse_layout(xml_text: str, file: str) -> LayoutModel:
    """Capture every element with its parsed layout_width/layout_height."""
    elements: list[LayoutElement] = []
    parser = xml.parsers.expat.ParserCreate()

    def start(name: str, attrs: dict[str, str]) -> None:
        width_raw = _attr(attrs, "layout_width")
        height_raw = _attr(attrs, "layout_height")
        elements.append(
            LayoutElement(
                tag=name,
                width=parse_dimension(width_raw) if width_raw is not None else None,
                height=parse_dimension(height_raw) if height_raw is not None else None,
                span=_element_span(parser, file, name),
            )
        )

    parser.StartElementHandler = start
    try:
        parser.Parse(xml_text, True)
    except xml.parsers.expat.ExpatError as err:
        raise XmlError(
            xml.parsers.expat.errors.messages[err.code], file, err.lineno, err.offset + 1
        ) from err
    return LayoutModel(file, tuple(elements))


def nfc_priority_violations(manifest: ManifestModel) -> list[NfcOrderViolation]:
    """Every pair where a lower-priority NFC action precedes a higher-priority one.

    Pairs are computed over the whole manifest in document order; empty iff
    the ranked actions appear in non-decreasing rank order.
    """
    ranked = [
        (action, NFC_ACTION_RANK[action.name])
        for action in manifest.all_actions()
        if action.name in NFC_ACTION_RANK
    ]
    violations: list[NfcOrderViolation] = []
    for i, (earlier, earlier_rank) in enumerate(ranked):
        for later, later_rank in ranked[i + 1 :]:
            if earlier_rank > later_rank:
                violations.append(NfcOrderViolation(earlier, later))
    return violations
