import numpy as np
import pytest

from koitertube.ebt import ResultantLoads
from koitertube.geometry import FourierCurveSpec, build_section
from koitertube.shell import stiffnesses

UNIT_LOADS = {
    "R1": ResultantLoads(force=(1.0, 0.0, 0.0)),
    "R2": ResultantLoads(force=(0.0, 1.0, 0.0)),
    "R3": ResultantLoads(force=(0.0, 0.0, 1.0)),
    "M1": ResultantLoads(moment=(1.0, 0.0, 0.0)),
    "M2": ResultantLoads(moment=(0.0, 1.0, 0.0)),
    "M3": ResultantLoads(moment=(0.0, 0.0, 1.0)),
}
EBT_LOADS = ("R3", "M1", "M2", "M3")
FLEXURE_LOADS = ("R1", "R2")

_sections = {}

# criterion number -> (passed, detail); filled by the acceptance tests
ACCEPTANCE = {}


def section(kind, n):
    """Cached section build; kind is "circle" (R0 = 1) or "ellipse" (2, 1)."""
    key = (kind, n)
    if key not in _sections:
        spec = FourierCurveSpec.circle(1.0) if kind == "circle" else FourierCurveSpec.ellipse(2.0, 1.0)
        _sections[key] = build_section(spec, n)
    return _sections[key]


@pytest.fixture(scope="session")
def mat():
    return stiffnesses(1.0, 0.3, 0.01)


@pytest.fixture(scope="session")
def circle():
    return section("circle", 256)


@pytest.fixture(scope="session")
def ellipse():
    return section("ellipse", 256)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
