import contextlib
import time

ACCEPTANCE = []


@contextlib.contextmanager
def criterion(number, title):
    """Record a PASS/FAIL line for an acceptance criterion; re-raises failures."""
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        ACCEPTANCE.append((number, "FAIL", title, time.perf_counter() - t0, str(exc).splitlines()[0][:120] if str(exc) else type(exc).__name__))
        raise
    ACCEPTANCE.append((number, "PASS", title, time.perf_counter() - t0, ""))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, secs, note in sorted(ACCEPTANCE):
        line = f"[{status}] criterion {number}: {title} ({secs:.2f}s)"
        if note:
            line += f" -- {note}"
        terminalreporter.write_line(line)
