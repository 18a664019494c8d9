import pytest

_RESULTS = pytest.StashKey()


@pytest.fixture
def criterion(request):
    """record(n, ok, note="") logs one acceptance line for the summary."""
    store = request.config.stash.setdefault(_RESULTS, {})

    def record(n, ok, note=""):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f"  ({note})" if note else "")
        store[n] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_RESULTS, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for k in sorted(store, key=str):
            terminalreporter.write_line(store[k])
