"""Shared test helpers and the acceptance-criteria summary."""

from __future__ import annotations

import numpy as np
import pytest

from selsr import Image

# populated by tests/test_acceptance.py; printed after the run
_ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


def record_criterion(number: int, label: str, passed: bool) -> None:
    _ACCEPTANCE_RESULTS[number] = (label, passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE_RESULTS):
        label, passed = _ACCEPTANCE_RESULTS[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:02d} ({label}): {status}")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260823)


def random_image(
    rng: np.random.Generator,
    height: int,
    width: int,
    channels: int = 1,
    integral: bool = True,
) -> Image:
    """Random test image; integral=True mimics freshly decoded 8-bit data."""
    if integral:
        data = rng.integers(0, 256, size=(height, width, channels)).astype(np.float64)
    else:
        data = rng.uniform(0.0, 255.0, size=(height, width, channels))
    return Image(data)
