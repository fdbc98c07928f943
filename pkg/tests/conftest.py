"""Shared test helpers: seeded randomness and multiset comparison."""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def match_multisets(found, expected, tol):
    """Greedy optimal matching of two complex multisets within ``tol``.

    Returns True when every element of ``expected`` is matched by a
    distinct element of ``found`` within ``tol`` and the sizes agree.
    """
    found = list(found)
    if len(found) != len(expected):
        return False
    for target in expected:
        errs = [abs(z - target) for z in found]
        best = int(np.argmin(errs))
        if errs[best] > tol:
            return False
        found.pop(best)
    return True
