from collections import defaultdict

import numpy as np
import pytest

from chebilateral import generate_test_image


@pytest.fixture
def checker64():
    return generate_test_image("checkerboard", 64, 64, tile=8, levels=(0, 255))


@pytest.fixture
def gradient64():
    return generate_test_image("gradient", 64, 64, levels=(0, 255))


@pytest.fixture
def noise_image():
    rng = np.random.default_rng(20160914)
    return rng.integers(0, 256, size=(24, 31)).astype(np.float64)


@pytest.fixture
def smooth_image():
    """Band-limited 8-bit-range image: a few low-frequency cosines."""
    y, x = np.mgrid[0:64, 0:64] / 64.0
    img = 127.5 + 60 * np.cos(2 * np.pi * (1.5 * x + 0.5 * y)) + 50 * np.sin(2 * np.pi * 2 * y)
    return np.clip(img, 0, 255)


# Acceptance bookkeeping: every test marked ``criterion(n, title)`` contributes
# to criterion n, which passes only if all of its tests pass.
_CRITERIA = {}
_OUTCOMES = defaultdict(list)


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _CRITERIA[number] = title
            item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    number = dict(report.user_properties).get("criterion")
    if number is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _OUTCOMES[number].append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        results = _OUTCOMES[number]
        failed = [name for name, outcome in results if outcome != "passed"]
        verdict = "FAIL" if failed else "PASS"
        line = f"criterion {number} [{_CRITERIA[number]}]: {verdict}"
        if failed:
            line += f" ({len(failed)}/{len(results)} failing: {', '.join(failed)})"
        terminalreporter.write_line(line)
