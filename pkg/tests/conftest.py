import numpy as np
import pytest

from spherekit.geom import platonic_vertices, solid_tangency_points

ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line per acceptance criterion and assert it."""

    def _verdict(label: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return _verdict


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(params=["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"])
def solid(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


__all__ = ["platonic_vertices", "solid_tangency_points"]
