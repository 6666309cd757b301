import pytest
from hypothesis import strategies as st

from mzmxcorr import DeviceParams, RateSet

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    param = getattr(item, "callspec", None)
    suffix = f" [{'-'.join(str(v) for v in param.params.values())}]" if param else ""
    _ACCEPTANCE.append((number, f"{title}{suffix}", report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {number:2d}: {title}")


couplings = st.floats(min_value=0.05, max_value=3.0)
energies = st.floats(min_value=-10.0, max_value=10.0)


@st.composite
def device_params(draw, temperature=0.0):
    return DeviceParams(
        draw(couplings),
        draw(couplings),
        draw(couplings),
        draw(couplings),
        epsilon_m=draw(st.floats(min_value=-3.0, max_value=3.0)),
        mu_L=draw(energies),
        mu_R=draw(energies),
        temperature=temperature,
    )


@pytest.fixture
def ideal_symmetric_rates():
    """Infinite symmetric bias, all couplings 1: every lead fully occupied."""
    return RateSet.from_values((1, 1), (0, 0), (1, 1), (0, 0))


@pytest.fixture
def ideal_antisymmetric_rates():
    """Infinite bias mu_L = -mu_R > 0, all couplings 1."""
    return RateSet.from_values((1, 0), (0, 1), (1, 0), (0, 1))
