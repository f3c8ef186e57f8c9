import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def record(request):
    """Store ``(criterion, part, passed, detail)`` for the end-of-run summary."""
    store = request.config.stash.setdefault(_KEY, [])

    def _record(criterion, part, passed, detail=""):
        store.append((criterion, part, bool(passed), detail))
        return passed

    return _record


_KEY = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_KEY, [])
    if not results:
        return
    by_criterion = {}
    for criterion, part, passed, detail in results:
        by_criterion.setdefault(criterion, []).append((part, passed, detail))
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(by_criterion):
        parts = by_criterion[criterion]
        ok = all(p for _, p, _ in parts)
        notes = "; ".join(f"{part}: {'ok' if p else 'FAILED'}{' (' + d + ')' if d else ''}"
                          for part, p, d in parts)
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} -- {notes}")
