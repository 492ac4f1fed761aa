import os

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from coboson.spectrum import from_raw

settings.register_profile("default", max_examples=100, deadline=None)
settings.register_profile("thorough", max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

weights = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def spectra(draw, min_modes=1, max_modes=40):
    raw = draw(st.lists(weights, min_size=min_modes, max_size=max_modes))
    if sum(raw) <= 1e-6 * len(raw):
        raw[0] = 1.0
    return from_raw(raw)


@st.composite
def small_spectra(draw, max_modes=6):
    return draw(spectra(1, max_modes))


_acceptance_lines = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        status = "PASS" if report.passed else "FAIL"
        _acceptance_lines.append(f"[{status}] criterion {props['criterion']}: {props.get('detail', '')}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split("criterion ")[1].split(" ")[0])):
            terminalreporter.write_line(line)
