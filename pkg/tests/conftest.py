"""Shared generators for the test suite.

All randomness is seeded per test; the helpers here only build values.
"""

from pathlib import Path

import numpy as np
import pytest

from pcpkit import PairXY, PcpDecomposition, reconstruct

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


def random_decomposition(rng, n, m) -> PcpDecomposition:
    V = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    W = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    return PcpDecomposition(V, W)


def random_decomposable_pair(rng, n, m=None) -> PairXY:
    if m is None:
        m = int(rng.integers(n, 2 * n + 2))
    return reconstruct(random_decomposition(rng, n, m))


def random_2x2_abcd_pair(rng) -> PairXY:
    """A 2x2 pair satisfying (a)-(d): PSD X, then y entries at least the products."""
    B = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    if rng.random() < 0.15:
        B[1, :] = 0.0          # rank-one corner
    if rng.random() < 0.1:
        B[:, 1] = 0.0
    X = B @ B.conj().T
    f = rng.uniform(0.3, 3.0)
    g = rng.uniform(1.0, 2.0)
    y12 = abs(X[0, 1]) * f * g
    y21 = abs(X[0, 1]) / f if f > 0 else 0.0
    if rng.random() < 0.1:
        y12 = y21 = abs(X[0, 1])   # boundary of condition (d)
    Y = np.array([[X[0, 0].real, y12], [y21, X[1, 1].real]], complex)
    return PairXY(X, Y)


def cyclic_pair(a: float) -> PairXY:
    """All-ones X against the 3x3 cyclic ratio matrix with parameter a."""
    X = np.ones((3, 3))
    Y = np.array([[1, a, 1 / a], [1 / a, 1, a], [a, 1 / a, 1]])
    return PairXY(X, Y)


def cyclic_norms(a: float) -> tuple[float, float]:
    """Closed forms for the entrywise 1-norm and trace norm of the cyclic Y."""
    one = 3.0 * (1.0 + a + a * a) / a
    tr = (1.0 + a + a * a + 2.0 * abs(a - 1.0) * np.sqrt(1.0 + a + a * a)) / a
    return one, tr
