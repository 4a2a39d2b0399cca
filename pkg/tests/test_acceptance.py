"""Acceptance gate: one test per shipped criterion.

Each test executes the corresponding registry check at its stated
tolerance and prints the measured one-line summary; `vwl verify` runs
the same registry from the command line.
"""

import pytest

from vortexwavelab.acceptance import REGISTRY, RunCache


@pytest.fixture(scope="module")
def cache():
    return RunCache()


@pytest.mark.parametrize("name,fn", REGISTRY, ids=[n for n, _ in REGISTRY])
def test_criterion(name, fn, cache):
    passed, detail = fn(cache)
    print("%s: %s  [%s]" % (name, "PASS" if passed else "FAIL", detail))
    assert passed, "%s failed: %s" % (name, detail)
