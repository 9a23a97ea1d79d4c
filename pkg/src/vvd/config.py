"""Detector configuration: method-name sets, import prefixes, thresholds.

Defaults come from the public Android API surface; a JSON file (or the
VVD_CONFIG environment variable pointing at one) overrides any subset of
keys. Schema:

    {
      "ad_import_prefixes": ["com.google.android.exoplayer", ...],
      "media_play_members": ["start"],
      "media_stop_members": ["stop", "pause", "release"],
      "mtp_read_members": ["getObject", "importFile", "getThumbnail",
                           "getPartialObject"],
      "mtp_write_members": ["sendObject"],
      "sms_send_members": ["sendTextMessage", "sendMultipartTextMessage",
                           "sendDataMessage", "sendMultimediaMessage"],
      "animation_duration_threshold_ms": 2000,
      "surface_size_threshold": 10,
      "nfc_aar_pseudocode_mode": false
    }
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class DetectorConfig:
    ad_import_prefixes: tuple[str, ...] = (
        "com.google.android.exoplayer",
        "com.google.android.gms.ads",
        "com.google.ads.interactivemedia",
    )
    media_play_members: frozenset[str] = frozenset({"start"})
    media_stop_members: frozenset[str] = frozenset({"stop", "pause", "release"})
    mtp_read_members: frozenset[str] = frozenset(
        {"getObject", "importFile", "getThumbnail", "getPartialObject"}
    )
    mtp_write_members: frozenset[str] = frozenset({"sendObject"})
    sms_send_members: frozenset[str] = frozenset(
        {
            "sendTextMessage",
            "sendMultipartTextMessage",
            "sendDataMessage",
            "sendMultimediaMessage",
        }
    )
    animation_duration_threshold_ms: int = 2000
    surface_size_threshold: float = 10.0
    nfc_aar_pseudocode_mode: bool = False


DEFAULT_CONFIG = DetectorConfig()

_STRING_LIST_KEYS = {
    "ad_import_prefixes",
    "media_play_members",
    "media_stop_members",
    "mtp_read_members",
    "mtp_write_members",
    "sms_send_members",
}


def config_from_dict(data: dict) -> DetectorConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    known = {f.name for f in dataclasses.fields(DetectorConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    kwargs: dict[str, object] = {}
    for key, value in data.items():
        if key in _STRING_LIST_KEYS:
            if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                raise ConfigError(f"{key} must be a list of strings")
            kwargs[key] = (
                tuple(value) if key == "ad_import_prefixes" else frozenset(value)
            )
        elif key == "animation_duration_threshold_ms":
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"{key} must be an integer")
            kwargs[key] = value
        elif key == "surface_size_threshold":
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{key} must be a number")
            kwargs[key] = float(value)
        elif key == "nfc_aar_pseudocode_mode":
            if not isinstance(value, bool):
                raise ConfigError(f"{key} must be a boolean")
            kwargs[key] = value
    return DetectorConfig(**kwargs)  # type: ignore[arg-type]


def load_config(path: str | Path) -> DetectorConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"invalid JSON in {path}: {err}") from err
    return config_from_dict(data)
