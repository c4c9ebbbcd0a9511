from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# criterion number -> list of (part, passed); filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[str, bool]]] = {}


@pytest.fixture
def record():
    def _record(criterion: int, part: str, passed: bool) -> None:
        ACCEPTANCE.setdefault(criterion, []).append((part, bool(passed)))
        print(f"criterion {criterion:2d} [{'pass' if passed else 'FAIL'}] {part}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[crit]
        failed = [p for p, ok in parts if not ok]
        line = f"criterion {crit:2d}: {'FAIL' if failed else 'PASS'} ({len(parts) - len(failed)}/{len(parts)} parts)"
        if failed:
            line += " unmet: " + "; ".join(failed)
        terminalreporter.write_line(line)
