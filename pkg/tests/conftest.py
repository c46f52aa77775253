import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_SESSION_START = time.monotonic()


def pytest_terminal_summary(terminalreporter):
    elapsed = time.monotonic() - _SESSION_START
    terminalreporter.write_line(
        f"full suite wall clock: {elapsed:.1f} s (acceptance budget: 300 s)"
    )
