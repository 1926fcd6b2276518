import pathlib

from hypothesis import HealthCheck, settings

from ffkronecker.slp import parse_system, parse_system_full

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SYSTEMS = pathlib.Path(__file__).resolve().parent.parent / "systems"


def system_text(name: str) -> str:
    return (SYSTEMS / name).read_text()


def load(text: str):
    return parse_system(text)


def load_full(text: str):
    return parse_system_full(text)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'}  {detail}")
