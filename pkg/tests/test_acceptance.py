"""One check per acceptance criterion; each prints a single PASS/FAIL line.

Runs the same suites as ``s2cobar verify`` at their default bounds.
Also runnable directly: ``python3 tests/test_acceptance.py``.
"""
from functools import lru_cache

import pytest

from s2cobar.suites import RUNNERS, RunConfig

# criterion -> (suite, check-id prefixes)
CRITERIA = {
    1: ("operad", ("operad.d121", "operad.d2", "operad.leibniz")),
    2: ("operad", ("operad.homotopy[",)),
    3: ("operad", ("operad.coefficient",)),
    4: ("braces", ("braces.",)),
    5: ("bar-s1", ("bar-s1.t1tn", "bar-s1.cohomology", "bar-s1.distinct")),
    6: ("bar-s1", ("bar-s1.sq0",)),
    7: ("cobar", ("cobar.unit",)),
    8: ("retraction", ("retraction.example", "retraction.equations")),
    9: ("retraction", ("retraction.ideal",)),
    10: ("hopf-twist", ("hopf-twist.counit",)),
    11: ("duality", ("duality.",)),
    12: ("ce", ("ce.",)),
}


@lru_cache(maxsize=None)
def suite_results(name):
    return tuple(RUNNERS[name](RunConfig()))


def evaluate(n):
    suite, prefixes = CRITERIA[n]
    checks = [c for c in suite_results(suite) if c.id.startswith(prefixes)]
    failed = [c.id for c in checks if c.status != "pass"]
    ok = bool(checks) and not failed
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  ({len(checks)} checks via suite {suite!r}"
    line += f"; failing: {', '.join(failed)})" if failed else ")"
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = evaluate(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    import sys

    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
