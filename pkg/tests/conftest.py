import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    """Record one pass/fail line per acceptance criterion; echoed in the terminal summary."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> str:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
        print(line)
        _ACCEPTANCE_LINES.append(line)
        return line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def circular_orbit():
    """Equal-mass circular orbit, 1 m separation, integrated over 1.25 periods at tol 1e-10."""
    from dimcalc.gravsim import circular_two_body, integrate

    system, init, period = circular_two_body(5e10, 5e10, 1.0)
    traj = integrate(system, init, 0.0, 1.25 * period, tol=1e-10, samples=12501)
    return traj, period
