from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from vvd.java_parser import parse_source
from vvd.query import bind_variables

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


def parse_ok(source: str, file: str = "test.java"):
    """Parse source that must produce a unit; returns (unit, diagnostics)."""
    result = parse_source(source, file)
    assert result.unit is not None, result.diagnostics
    return result.unit, result.diagnostics


def unit_and_binding(source: str, file: str = "test.java"):
    unit, _ = parse_ok(source, file)
    return unit, bind_variables(unit)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
