import math

import pytest

from conic_envelope.inversive import FociPair

EXAMPLE_FOCI = {
    "inside": (0j, 0.618 + 0j),
    "outside": (0.7 + 1j, 1.5 - 0.8j),
    "hyperbola": (0.3 - 0.3j, 1.2 + 0.2j),
}

# arcs from the critical-value oracle in oracles.py (8192 samples, 1e-13 bisection)
GOLDEN_ARCS = {
    "outside": [(2.937023271869, 4.305993775019)],
    "hyperbola": [(6.188980849336, 8.919621077548)],
}


@pytest.fixture(params=sorted(EXAMPLE_FOCI))
def example(request):
    a, b = EXAMPLE_FOCI[request.param]
    return request.param, FociPair(a, b)


@pytest.fixture
def fig1_foci():
    return FociPair(0j, 0.618 + 0j)


def uniform_thetas(n):
    return [2 * math.pi * k / n for k in range(n)]
