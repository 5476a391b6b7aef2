"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

import time
from contextlib import contextmanager

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time a criterion, record its outcome and fail when it exceeds ``limit`` seconds."""
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        dt = time.perf_counter() - t0
        RESULTS[number] = f"criterion {number:2d} FAIL  {title} ({dt:.1f}s): {type(exc).__name__}"
        print(RESULTS[number])
        raise
    dt = time.perf_counter() - t0
    ok = dt < limit
    RESULTS[number] = (f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title} "
                       f"({dt:.1f}s, limit {limit:.0f}s)")
    print(RESULTS[number])
    assert ok, f"criterion {number} took {dt:.1f}s, limit {limit}s"
