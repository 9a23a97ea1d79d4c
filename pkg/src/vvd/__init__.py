"""vvd: values-violation detector for Android app source trees."""

__version__ = "0.1.0"

from .config import DEFAULT_CONFIG, DetectorConfig, load_config
from .detectors import (
    API_VALUE_MAP,
    ApiFamily,
    AppBundle,
    DetectorId,
    Finding,
    ValueCategory,
    run_all,
)
from .report import AppScanResult, assemble, from_json, to_json
from .spans import Span

__all__ = [
    "API_VALUE_MAP",
    "ApiFamily",
    "AppBundle",
    "AppScanResult",
    "DEFAULT_CONFIG",
    "DetectorConfig",
    "DetectorId",
    "Finding",
    "Span",
    "ValueCategory",
    "assemble",
    "from_json",
    "load_config",
    "run_all",
    "to_json",
    "__version__",
]
