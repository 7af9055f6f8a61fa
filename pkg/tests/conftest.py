import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE: list[tuple[int, str, str, float]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion tracked in the summary")
    config.addinivalue_line("markers", "slow: runs for more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None and rep.when == "call":
        n, text = mark.args
        _ACCEPTANCE.append((n, text, "PASS" if rep.passed else "FAIL", rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, text, verdict, dt in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{verdict}] criterion {n}: {text} ({dt:.2f} s)")


_MODELS: dict = {}


@pytest.fixture(scope="session")
def model_for():
    """theta_model(g) built once per session."""
    from mforge.realization import theta_model

    def get(g):
        if g not in _MODELS:
            _MODELS[g] = theta_model(g)
        return _MODELS[g]

    return get
