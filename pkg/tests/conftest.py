import numpy as np
import pytest

from imfilt import GrayImage, _backend


@pytest.fixture(params=_backend.available())
def backend(request):
    """Run the test once per available kernel backend."""
    with _backend.use(request.param) as k:
        yield k


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_image(rng, h, w, low=0, high=256):
    return GrayImage(rng.integers(low, high, size=(h, w)))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
