"""Bipartite states invariant under conjugate local diagonal unitaries.

A pair (X, Y) satisfying conditions (a)-(c) encodes an (unnormalized) state on
C^n (x) C^n whose only non-zero entries sit at

    rho[(i, i), (j, j)] = x_ij          (the X skeleton)
    rho[(i, j), (i, j)] = y_ij, i != j  (the Y diagonal)

with the flat index (i, k) -> i*n + k (0-based).  Such states are exactly the
ones fixed by averaging over U (x) conj(U) for diagonal unitaries U, and their
separability is equivalent to joint decomposability of (X, Y): a certificate
transfers by conjugating the w-vectors.

Everything here has a coefficient-level O(n^2) implementation; the dense
n^2 x n^2 realization is materialized lazily and used for cross-checks only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, NamedTuple

import numpy as np

from . import linalg
from .defaults import DEFAULT_SEED
from .errors import (
    ConditionsViolatedError,
    NotClduiError,
    WrongDimensionError,
)
from .construct import ConstructorOutcome, decompose_auto
from .pairs import (
    NecessaryReport,
    PairXY,
    PcpDecomposition,
    _condition_d,
    check_necessary,
)

SEPARABLE = "separable"
ENTANGLED = "entangled"
INCONCLUSIVE = "inconclusive"


def dense_matrix(pair: PairXY) -> np.ndarray:
    """The dense n^2 x n^2 realization of a coefficient pair (no conditions required)."""
    n = pair.n
    rho = np.zeros((n * n, n * n), complex)
    for i in range(n):
        for j in range(n):
            rho[i * n + i, j * n + j] = pair.X[i, j]
            if i != j:
                rho[i * n + j, i * n + j] = pair.Y[i, j]
    return rho


@dataclass(frozen=True)
class ClduiState:
    """A state described by its coefficient pair; the dense matrix is built on demand."""

    pair: PairXY

    @property
    def n(self) -> int:
        return self.pair.n

    @cached_property
    def dense(self) -> np.ndarray:
        rho = dense_matrix(self.pair)
        rho.setflags(write=False)
        return rho

    @property
    def trace(self) -> float:
        return float(np.trace(self.pair.X).real + (np.abs(self.pair.Y).sum()
                     - np.abs(np.diag(self.pair.Y)).sum()))


def build_state(pair: PairXY) -> ClduiState:
    """Wrap a coefficient pair as a state; conditions (a)-(c) are required for positivity."""
    report = check_necessary(pair)
    if not report.holds_abc:
        raise ConditionsViolatedError(
            f"conditions {report.failing()} fail; the pair does not describe a state",
            report=report,
        )
    return ClduiState(pair)


def extract_pair(rho: np.ndarray, n: int) -> PairXY:
    """Read the coefficient pair back out of a dense matrix.

    Every entry outside the invariant zero pattern must be negligible
    (below 1e-10 times the largest entry magnitude), otherwise the matrix is
    not of this family and ``NotClduiError`` reports the first offender
    (1-based flat coordinates).
    """
    rho = linalg.require_square(rho)
    if rho.shape[0] != n * n:
        raise WrongDimensionError(f"expected a {n * n} x {n * n} matrix, got {rho.shape}")
    allowed = np.zeros((n * n, n * n), dtype=bool)
    for i in range(n):
        for j in range(n):
            allowed[i * n + i, j * n + j] = True
            if i != j:
                allowed[i * n + j, i * n + j] = True
    tol = 1e-10 * max(1.0, float(np.abs(rho).max()))
    stray = np.abs(rho) * (~allowed)
    if stray.max() > tol:
        r, c = np.unravel_index(int(stray.argmax()), stray.shape)
        raise NotClduiError(
            f"entry ({r + 1}, {c + 1}) = {rho[r, c]:.3e} violates the invariant zero pattern",
            coordinate=(int(r) + 1, int(c) + 1),
        )
    X = np.zeros((n, n), complex)
    Y = np.zeros((n, n), complex)
    for i in range(n):
        for j in range(n):
            X[i, j] = rho[i * n + i, j * n + j]
            Y[i, j] = X[i, i] if i == j else rho[i * n + j, i * n + j]
    return PairXY(X, Y)


def is_diagonal_unitary_invariant(rho: np.ndarray, n: int, samples: int = 25,
                                  seed: int = DEFAULT_SEED) -> bool:
    """Probabilistic invariance test under U (x) conj(U) for random diagonal unitaries U."""
    rho = linalg.require_square(rho)
    if rho.shape[0] != n * n:
        raise WrongDimensionError(f"expected a {n * n} x {n * n} matrix, got {rho.shape}")
    rng = np.random.default_rng(seed)
    scale = max(1.0, float(np.linalg.norm(rho)))
    for _ in range(samples):
        phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=n))
        c = np.kron(phases, phases.conj())
        twisted = (c[:, None] * rho) * c.conj()[None, :]
        if float(np.linalg.norm(twisted - rho)) > 1e-9 * scale:
            return False
    return True


def partial_transpose(rho: np.ndarray, n: int) -> np.ndarray:
    """Transpose the second tensor factor: ((i,k),(j,l)) -> ((i,l),(j,k))."""
    rho = linalg.require_square(rho)
    if rho.shape[0] != n * n:
        raise WrongDimensionError(f"expected a {n * n} x {n * n} matrix, got {rho.shape}")
    return rho.reshape(n, n, n, n).transpose(0, 3, 2, 1).reshape(n * n, n * n)


def realign_map(rho: np.ndarray, n: int) -> np.ndarray:
    """The realignment rearrangement: R[(i,j),(k,l)] = rho[(i,k),(j,l)]."""
    rho = linalg.require_square(rho)
    if rho.shape[0] != n * n:
        raise WrongDimensionError(f"expected a {n * n} x {n * n} matrix, got {rho.shape}")
    return rho.reshape(n, n, n, n).transpose(0, 2, 1, 3).reshape(n * n, n * n)


def _gate_abc(pair: PairXY) -> NecessaryReport:
    report = check_necessary(pair)
    if not report.holds_abc:
        raise ConditionsViolatedError(
            f"conditions {report.failing()} fail; the pair does not describe a state",
            report=report,
        )
    return report


def ppt_check(pair: PairXY) -> tuple[bool, dict[str, Any] | None]:
    """Positivity of the partial transpose, at coefficient level.

    For this family the partial transpose splits into the diagonal of X and
    2x2 blocks [[y_ij, x_ij], [x_ji, y_ji]], so positivity reduces to the
    entrywise product condition (d).
    """
    _gate_abc(pair)
    return _condition_d(pair.X, pair.Y)


class RealignmentResult(NamedTuple):
    x_gap: float
    y_gap: float
    passes: bool


def realignment_check(pair: PairXY) -> RealignmentResult:
    """The realignment criterion, at coefficient level: gap(X) <= gap(Y).

    Here gap(A) = ||A||_1 - ||A||_tr; the trace norm of the realigned dense
    matrix equals (||X||_1 - tr X) + ||Y||_tr, which makes the two statements
    equivalent for states of this family.
    """
    _gate_abc(pair)
    x_gap = linalg.entrywise_one_norm(pair.X) - linalg.trace_norm(pair.X)
    y_gap = linalg.entrywise_one_norm(pair.Y) - linalg.trace_norm(pair.Y)
    passes = x_gap <= y_gap + 1e-8 * max(1.0, linalg.entrywise_one_norm(pair.Y))
    return RealignmentResult(x_gap, y_gap, passes)


@dataclass(frozen=True)
class SeparabilityVerdict:
    """Outcome of the separability analysis of one state."""

    verdict: str
    criterion: str | None = None
    certificate: PcpDecomposition | None = None
    outcome: ConstructorOutcome | None = None
    report: NecessaryReport | None = None
    witness: dict[str, Any] | None = None


def separability_verdict(pair: PairXY, search_permutations: bool = True) -> SeparabilityVerdict:
    """Classify the state of a coefficient pair.

    Entangled when the partial-transpose or realignment criterion fails;
    separable when a joint decomposition is found (the certificate: replace
    each w_k by its conjugate to obtain product vectors); inconclusive
    otherwise.
    """
    report = _gate_abc(pair)
    ppt_ok, ppt_witness = ppt_check(pair)
    if not ppt_ok:
        return SeparabilityVerdict(ENTANGLED, criterion="ppt", report=report, witness=ppt_witness)
    realign = realignment_check(pair)
    if not realign.passes:
        return SeparabilityVerdict(
            ENTANGLED,
            criterion="realignment",
            report=report,
            witness={"x_gap": realign.x_gap, "y_gap": realign.y_gap},
        )
    outcome = decompose_auto(pair, search_permutations=search_permutations)
    if outcome.ok:
        return SeparabilityVerdict(
            SEPARABLE,
            criterion=outcome.method,
            certificate=outcome.decomposition,
            outcome=outcome,
            report=report,
        )
    return SeparabilityVerdict(INCONCLUSIVE, outcome=outcome, report=report)
