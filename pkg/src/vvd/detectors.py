"""The ten values-violation detectors and the per-app registry.

Each detector is a pure function from parsed artifacts (Java units with
their variable bindings, the manifest model, layout models) to findings.
``run_all`` runs every detector over one app bundle and returns findings in
a deterministic order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .android_xml import LayoutModel, ManifestModel, nfc_priority_violations
from .config import DEFAULT_CONFIG, DetectorConfig
from .java_ast import AstNode, ParseDiagnostic
from .query import (
    VarBinding,
    bind_variables,
    find_imports,
    find_invocations,
    receiver_variable,
    type_contains,
    type_equals,
)
from .spans import Span


class ValueCategory(enum.Enum):
    SELF_DIRECTION = "self_direction"
    STIMULATION = "stimulation"
    HEDONISM = "hedonism"
    ACHIEVEMENT = "achievement"
    POWER = "power"
    SECURITY = "security"
    TRADITION = "tradition"
    CONFORMITY = "conformity"
    BENEVOLENCE = "benevolence"
    UNIVERSALISM = "universalism"
    FACE = "face"
    HUMILITY = "humility"


class ApiFamily(enum.Enum):
    ANIMATION = "animation"
    MEDIA = "media"
    MTP = "mtp"
    NFC = "nfc"
    TELEPHONY = "telephony"
    HARDWARE = "hardware"


class DetectorId(enum.Enum):
    ANIMATION_HEDONISM = "animation_hedonism"
    MEDIA_AD_UNIVERSALISM = "media_ad_universalism"
    MEDIA_AD_SELF_DIRECTION = "media_ad_self_direction"
    MEDIA_PLAYER_NO_STOP = "media_player_no_stop"
    MTP_SELF_DIRECTION = "mtp_self_direction"
    NFC_INTENT_SELF_DIRECTION = "nfc_intent_self_direction"
    NFC_AAR_SECURITY = "nfc_aar_security"
    TELEPHONY_SMS_SECURITY = "telephony_sms_security"
    TELEPHONY_SMS_CONFORMITY = "telephony_sms_conformity"
    HARDWARE_CAMERA_SECURITY = "hardware_camera_security"

    @property
    def api(self) -> ApiFamily:
        return DETECTOR_TAGS[self][0]

    @property
    def values(self) -> tuple[ValueCategory, ...]:
        return DETECTOR_TAGS[self][1]


# (API family, value tags) carried by each detector. media_player_no_stop
# reports both self-direction and hedonism per site; everything else is
# single-valued.
DETECTOR_TAGS: dict[DetectorId, tuple[ApiFamily, tuple[ValueCategory, ...]]] = {
    DetectorId.ANIMATION_HEDONISM: (ApiFamily.ANIMATION, (ValueCategory.HEDONISM,)),
    DetectorId.MEDIA_AD_UNIVERSALISM: (ApiFamily.MEDIA, (ValueCategory.UNIVERSALISM,)),
    DetectorId.MEDIA_AD_SELF_DIRECTION: (ApiFamily.MEDIA, (ValueCategory.SELF_DIRECTION,)),
    DetectorId.MEDIA_PLAYER_NO_STOP: (
        ApiFamily.MEDIA,
        (ValueCategory.SELF_DIRECTION, ValueCategory.HEDONISM),
    ),
    DetectorId.MTP_SELF_DIRECTION: (ApiFamily.MTP, (ValueCategory.SELF_DIRECTION,)),
    DetectorId.NFC_INTENT_SELF_DIRECTION: (ApiFamily.NFC, (ValueCategory.SELF_DIRECTION,)),
    DetectorId.NFC_AAR_SECURITY: (ApiFamily.NFC, (ValueCategory.SECURITY,)),
    DetectorId.TELEPHONY_SMS_SECURITY: (ApiFamily.TELEPHONY, (ValueCategory.SECURITY,)),
    DetectorId.TELEPHONY_SMS_CONFORMITY: (ApiFamily.TELEPHONY, (ValueCategory.CONFORMITY,)),
    DetectorId.HARDWARE_CAMERA_SECURITY: (ApiFamily.HARDWARE, (ValueCategory.SECURITY,)),
}

_DETECTOR_ORDER = {d: i for i, d in enumerate(DetectorId)}
_VALUE_ORDER = {v: i for i, v in enumerate(ValueCategory)}

# Informational API -> value relationships (survey-derived); the detectors'
# own tags above are what findings carry.
API_VALUE_MAP: dict[ApiFamily, frozenset[ValueCategory]] = {
    ApiFamily.ANIMATION: frozenset({ValueCategory.HEDONISM}),
    ApiFamily.MEDIA: frozenset(
        {
            ValueCategory.SELF_DIRECTION,
            ValueCategory.STIMULATION,
            ValueCategory.HEDONISM,
            ValueCategory.HUMILITY,
        }
    ),
    ApiFamily.MTP: frozenset({ValueCategory.SELF_DIRECTION}),
    ApiFamily.NFC: frozenset({ValueCategory.SELF_DIRECTION, ValueCategory.TRADITION}),
    ApiFamily.TELEPHONY: frozenset({ValueCategory.FACE, ValueCategory.TRADITION}),
    ApiFamily.HARDWARE: frozenset({ValueCategory.FACE}),
}


@dataclass(frozen=True)
class Finding:
    detector: DetectorId
    api: ApiFamily
    value: ValueCategory
    span: Span
    evidence: str


def _finding(detector: DetectorId, value: ValueCategory, span: Span, evidence: str) -> Finding:
    return Finding(detector, detector.api, value, span, evidence)


@dataclass
class ParsedJavaFile:
    path: str
    unit: AstNode | None
    diagnostics: list[ParseDiagnostic] = field(default_factory=list)


@dataclass
class AppBundle:
    """Everything run_all needs for one app."""

    java_files: list[ParsedJavaFile] = field(default_factory=list)
    manifest: ManifestModel | None = None
    layouts: list[LayoutModel] = field(default_factory=list)
    xml_diagnostics: list[ParseDiagnostic] = field(default_factory=list)


# -- code detectors ----------------------------------------------------------


def detect_animation_hedonism(
    unit: AstNode, binding: VarBinding, config: DetectorConfig = DEFAULT_CONFIG
) -> list[Finding]:
    """Animations slower than the threshold or repeating forever."""
    findings: list[Finding] = []
    sites = find_invocations(
        unit, binding, type_contains("Animator"), {"setDuration", "setRepeatCount"}
    )
    for site in sites:
        if site.member == "setDuration":
            for constant in site.argument_constants:
                if (
                    isinstance(constant, int)
                    and not isinstance(constant, bool)
                    and constant > config.animation_duration_threshold_ms
                ):
                    findings.append(
                        _finding(
                            DetectorId.ANIMATION_HEDONISM,
                            ValueCategory.HEDONISM,
                            site.span,
                            f"setDuration({constant})",
                        )
                    )
                    break
        else:
            if any(c == "INFINITE" for c in site.argument_constants):
                findings.append(
                    _finding(
                        DetectorId.ANIMATION_HEDONISM,
                        ValueCategory.HEDONISM,
                        site.span,
                        "setRepeatCount(INFINITE)",
                    )
                )
    return findings


def detect_media_ad_import(
    unit: AstNode, config: DetectorConfig = DEFAULT_CONFIG
) -> list[Finding]:
    """Imports of ad/media-ad SDK packages; each import taints two values."""
    findings: list[Finding] = []
    seen: set[int] = set()
    for prefix in config.ad_import_prefixes:
        for node in find_imports(unit, prefix):
            if id(node) in seen:
                continue
            seen.add(id(node))
            for detector, value in (
                (DetectorId.MEDIA_AD_UNIVERSALISM, ValueCategory.UNIVERSALISM),
                (DetectorId.MEDIA_AD_SELF_DIRECTION, ValueCategory.SELF_DIRECTION),
            ):
                findings.append(_finding(detector, value, node.span, node.path or ""))
    return findings


def detect_media_player_no_stop(
    units: list[AstNode],
    bindings: list[VarBinding],
    config: DetectorConfig = DEFAULT_CONFIG,
) -> list[Finding]:
    """MediaPlayer variables that play but never stop/pause/release (per file)."""
    findings: list[Finding] = []
    members = config.media_play_members | config.media_stop_members
    for unit, binding in zip(units, bindings):
        sites = find_invocations(unit, binding, type_equals("MediaPlayer"), members)
        grouped: dict[str, dict] = {}
        for site in sites:
            var = receiver_variable(site, binding)
            if var is None:
                continue
            group = grouped.setdefault(var, {"members": set(), "first_play": None})
            group["members"].add(site.member)
            if site.member in config.media_play_members and group["first_play"] is None:
                group["first_play"] = site
        for var, group in grouped.items():
            plays = group["members"] & config.media_play_members
            stops = group["members"] & config.media_stop_members
            if plays and not stops and group["first_play"] is not None:
                site = group["first_play"]
                evidence = f"{var}.{site.member}() without stop/pause/release"
                for value in (ValueCategory.SELF_DIRECTION, ValueCategory.HEDONISM):
                    findings.append(
                        _finding(DetectorId.MEDIA_PLAYER_NO_STOP, value, site.span, evidence)
                    )
    return findings


def detect_mtp_self_direction(
    unit: AstNode, binding: VarBinding, config: DetectorConfig = DEFAULT_CONFIG
) -> list[Finding]:
    """MtpDevice transfers in only one direction within a file."""
    members = config.mtp_read_members | config.mtp_write_members
    sites = find_invocations(unit, binding, type_equals("MtpDevice"), members)
    reads = [s for s in sites if s.member in config.mtp_read_members]
    writes = [s for s in sites if s.member in config.mtp_write_members]
    if bool(reads) == bool(writes):
        return []
    first = sites[0]
    direction = "read" if reads else "write"
    return [
        _finding(
            DetectorId.MTP_SELF_DIRECTION,
            ValueCategory.SELF_DIRECTION,
            first.span,
            f"{direction}-only transfer: {first.member}",
        )
    ]


def detect_nfc_intent_self_direction(
    manifest: ManifestModel, config: DetectorConfig = DEFAULT_CONFIG
) -> list[Finding]:
    """NFC intent actions declared against dispatch priority order."""
    findings = []
    for violation in nfc_priority_violations(manifest):
        earlier = violation.earlier.name.rsplit(".", 1)[-1]
        later = violation.later.name.rsplit(".", 1)[-1]
        findings.append(
            _finding(
                DetectorId.NFC_INTENT_SELF_DIRECTION,
                ValueCategory.SELF_DIRECTION,
                violation.earlier.span,
                f"{earlier} declared before {later}",
            )
        )
    return findings


def detect_nfc_aar_security(
    units: list[AstNode],
    bindings: list[VarBinding],
    config: DetectorConfig = DEFAULT_CONFIG,
) -> list[Finding]:
    """NDEF writes without an Android Application Record anywhere in the app.

    In pseudocode-compatibility mode the polarity flips: a finding is
    emitted when both the write and the AAR call are present.
    """
    write_sites = []
    aar_present = False
    for unit, binding in zip(units, bindings):
        write_sites.extend(
            find_invocations(unit, binding, None, {"writeNdefMessage"})
        )
        if find_invocations(
            unit, binding, type_equals("NdefRecord"), {"createApplicationRecord"}
        ):
            aar_present = True
    if not write_sites:
        return []
    if config.nfc_aar_pseudocode_mode:
        fire = aar_present
        evidence = "writeNdefMessage with createApplicationRecord"
    else:
        fire = not aar_present
        evidence = "writeNdefMessage without createApplicationRecord"
    if not fire:
        return []
    first = min(write_sites, key=lambda s: s.span)
    return [
        _finding(DetectorId.NFC_AAR_SECURITY, ValueCategory.SECURITY, first.span, evidence)
    ]


def detect_telephony_sms(
    unit: AstNode, binding: VarBinding, config: DetectorConfig = DEFAULT_CONFIG
) -> list[Finding]:
    """SMS/MMS sends through SmsManager; each send taints two values."""
    findings = []
    sites = find_invocations(
        unit, binding, type_equals("SmsManager"), config.sms_send_members
    )
    for site in sites:
        for detector, value in (
            (DetectorId.TELEPHONY_SMS_SECURITY, ValueCategory.SECURITY),
            (DetectorId.TELEPHONY_SMS_CONFORMITY, ValueCategory.CONFORMITY),
        ):
            findings.append(_finding(detector, value, site.span, f"{site.member}()"))
    return findings


def detect_hardware_camera(
    units: list[AstNode],
    bindings: list[VarBinding],
    layouts: list[LayoutModel],
    config: DetectorConfig = DEFAULT_CONFIG,
) -> list[Finding]:
    """Silent capture calls and sub-threshold camera preview surfaces."""
    findings = []
    for unit, binding in zip(units, bindings):
        for site in find_invocations(unit, binding, type_equals("Camera"), {"takePicture"}):
            findings.append(
                _finding(
                    DetectorId.HARDWARE_CAMERA_SECURITY,
                    ValueCategory.SECURITY,
                    site.span,
                    "takePicture()",
                )
            )
        for site in find_invocations(
            unit, binding, type_equals("CameraDevice"), {"createCaptureSession"}
        ):
            findings.append(
                _finding(
                    DetectorId.HARDWARE_CAMERA_SECURITY,
                    ValueCategory.SECURITY,
                    site.span,
                    "createCaptureSession()",
                )
            )
    threshold = config.surface_size_threshold
    for layout in layouts:
        for element in layout.elements:
            if "SurfaceView" not in element.tag and "TextureView" not in element.tag:
                continue
            width, height = element.width, element.height
            if (
                width is not None
                and height is not None
                and width.is_absolute
                and height.is_absolute
                and width.value < threshold
                and height.value < threshold
            ):
                evidence = (
                    f"{element.tag} {_fmt_dim(width)} x {_fmt_dim(height)}"
                )
                findings.append(
                    _finding(
                        DetectorId.HARDWARE_CAMERA_SECURITY,
                        ValueCategory.SECURITY,
                        element.span,
                        evidence,
                    )
                )
    return findings


def _fmt_dim(dim) -> str:
    value = dim.value
    text = f"{value:g}"
    return f"{text}{dim.unit.value}"


# -- registry ------------------------------------------------------------------


def run_all(bundle: AppBundle, config: DetectorConfig = DEFAULT_CONFIG) -> list[Finding]:
    """Run every detector over one app; deterministic output order.

    Files with fatal diagnostics contribute no code findings (their units are
    None); they are still counted by the caller's scan statistics.
    """
    parsed = [f for f in bundle.java_files if f.unit is not None]
    units = [f.unit for f in parsed]
    bindings = [bind_variables(u) for u in units]

    findings: list[Finding] = []
    for unit, binding in zip(units, bindings):
        findings.extend(detect_animation_hedonism(unit, binding, config))
        findings.extend(detect_media_ad_import(unit, config))
        findings.extend(detect_mtp_self_direction(unit, binding, config))
        findings.extend(detect_telephony_sms(unit, binding, config))
    findings.extend(detect_media_player_no_stop(units, bindings, config))
    findings.extend(detect_nfc_aar_security(units, bindings, config))
    findings.extend(detect_hardware_camera(units, bindings, bundle.layouts, config))
    if bundle.manifest is not None:
        findings.extend(detect_nfc_intent_self_direction(bundle.manifest, config))

    findings.sort(
        key=lambda f: (f.span, _DETECTOR_ORDER[f.detector], _VALUE_ORDER[f.value])
    )
    return findings
