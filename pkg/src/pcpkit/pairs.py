"""Matrix pairs, joint rank-one decompositions, and the necessary conditions.

A pair (X, Y) is *jointly decomposable* when there are vectors v_k, w_k with

    X = sum_k (v_k . w_k)(v_k . w_k)*      (. = entrywise product)
    Y = sum_k (v_k . conj v_k)(w_k . conj w_k)^T

Five cheap necessary conditions, labelled (a)-(e) throughout the package:

    (a) X is Hermitian positive semidefinite,
    (b) Y is real with non-negative entries,
    (c) the diagonals of X and Y agree,
    (d) |x_ij|^2 <= y_ij y_ji for every i, j,
    (e) the entrywise-1-norm excess over the trace norm of X is at most that of Y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import linalg
from .errors import (
    ConditionsViolatedError,
    ConstructionError,
    DimensionMismatchError,
    PcpkitError,
)


def _frozen_array(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class PairXY:
    """A pair of n x n complex matrices, the object all checks and constructors act on."""

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = linalg.require_square(self.X)
        Y = linalg.require_square(self.Y)
        if X.shape != Y.shape:
            raise DimensionMismatchError(f"X is {X.shape} but Y is {Y.shape}")
        if X.shape[0] < 1:
            raise PcpkitError("pair must have dimension n >= 1")
        object.__setattr__(self, "X", _frozen_array(X))
        object.__setattr__(self, "Y", _frozen_array(Y))

    @property
    def n(self) -> int:
        return self.X.shape[0]


@dataclass(frozen=True)
class PcpDecomposition:
    """Vectors of a joint decomposition, stored column-wise: V[:, k] = v_k, W[:, k] = w_k."""

    V: np.ndarray
    W: np.ndarray

    def __post_init__(self):
        V = linalg.as_complex_matrix(self.V)
        W = linalg.as_complex_matrix(self.W)
        if V.shape != W.shape:
            raise DimensionMismatchError(f"V is {V.shape} but W is {W.shape}")
        if V.shape[1] < 1:
            raise PcpkitError("a decomposition needs at least one term")
        object.__setattr__(self, "V", _frozen_array(V))
        object.__setattr__(self, "W", _frozen_array(W))

    @classmethod
    def from_vectors(cls, vs, ws) -> "PcpDecomposition":
        vs = [linalg.as_complex_vector(v) for v in vs]
        ws = [linalg.as_complex_vector(w) for w in ws]
        if len(vs) != len(ws):
            raise DimensionMismatchError(f"{len(vs)} v-vectors but {len(ws)} w-vectors")
        if not vs:
            raise PcpkitError("a decomposition needs at least one term")
        return cls(np.column_stack(vs), np.column_stack(ws))

    @property
    def n(self) -> int:
        return self.V.shape[0]

    @property
    def m(self) -> int:
        return self.V.shape[1]

    @property
    def vs(self) -> list[np.ndarray]:
        return [self.V[:, k] for k in range(self.m)]

    @property
    def ws(self) -> list[np.ndarray]:
        return [self.W[:, k] for k in range(self.m)]


@dataclass(frozen=True)
class NecessaryReport:
    """Outcome of the five necessary conditions, with witnesses for failures.

    ``x_gap`` and ``y_gap`` always carry the two norm gaps used by condition
    (e), so callers can print the margin even when everything passes.
    Witness indices are 1-based, matching the usual row/column convention.
    """

    holds_a: bool
    holds_b: bool
    holds_c: bool
    holds_d: bool
    holds_e: bool
    x_gap: float
    y_gap: float
    witnesses: dict[str, dict[str, Any]] = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return self.holds_a and self.holds_b and self.holds_c and self.holds_d and self.holds_e

    @property
    def holds_abc(self) -> bool:
        return self.holds_a and self.holds_b and self.holds_c

    def failing(self) -> list[str]:
        flags = {
            "a": self.holds_a,
            "b": self.holds_b,
            "c": self.holds_c,
            "d": self.holds_d,
            "e": self.holds_e,
        }
        return [k for k, ok in flags.items() if not ok]


def reconstruct(dec: PcpDecomposition) -> PairXY:
    """Assemble the pair generated by a decomposition.

    The result is Hermitian PSD in X and entrywise non-negative in Y by
    construction; both facts are asserted before returning.
    """
    A = dec.V * dec.W
    X = A @ A.conj().T
    Y = (np.abs(dec.V) ** 2) @ (np.abs(dec.W) ** 2).T
    if not linalg.is_psd(X):
        raise ConstructionError("reconstructed X failed the PSD sanity check")
    if Y.size and Y.min() < 0:
        raise ConstructionError("reconstructed Y has a negative entry")
    return PairXY(X, Y)


def verify_decomposition(dec: PcpDecomposition, pair: PairXY, tol: float = 1e-8) -> bool:
    """True iff the decomposition reproduces the pair within ``tol``.

    The residual is measured in Frobenius norm, relative to
    max(1, ||X||_F, ||Y||_F).
    """
    if dec.n != pair.n:
        raise DimensionMismatchError(f"decomposition is {dec.n}-dimensional, pair is {pair.n}")
    rebuilt = reconstruct(dec)
    scale = max(1.0, float(np.linalg.norm(pair.X)), float(np.linalg.norm(pair.Y)))
    rx = float(np.linalg.norm(rebuilt.X - pair.X))
    ry = float(np.linalg.norm(rebuilt.Y - pair.Y))
    return max(rx, ry) <= tol * scale


def _condition_d(X: np.ndarray, Y: np.ndarray) -> tuple[bool, dict[str, Any] | None]:
    """Entrywise product condition |x_ij|^2 <= y_ij y_ji, with an additive slack."""
    n = X.shape[0]
    scale = max(1.0, float(np.abs(X).max()), float(np.abs(Y).max()))
    slack = 1e-12 * scale * scale
    for i in range(n):
        for j in range(i + 1, n):
            lhs = abs(X[i, j]) ** 2
            rhs = (Y[i, j] * Y[j, i]).real
            if lhs > rhs + slack:
                return False, {"position": (i + 1, j + 1), "lhs": lhs, "rhs": rhs}
    return True, None


def check_necessary(pair: PairXY) -> NecessaryReport:
    """Evaluate the five necessary conditions (a)-(e) on a pair."""
    X, Y, n = pair.X, pair.Y, pair.n
    witnesses: dict[str, dict[str, Any]] = {}

    holds_a = linalg.is_psd(X)
    if not holds_a:
        defect = linalg.hermiticity_defect(X)
        if defect > linalg.hermiticity_tolerance(X):
            witnesses["a"] = {"hermiticity_defect": defect}
        else:
            witnesses["a"] = {"min_eigenvalue": float(np.linalg.eigvalsh(X).min())}

    holds_b = True
    for i in range(n):
        for j in range(n):
            y = Y[i, j]
            bound = 1e-12 * max(1.0, abs(y))
            if abs(y.imag) > bound or y.real < -bound:
                holds_b = False
                witnesses["b"] = {"position": (i + 1, j + 1), "value": complex(y)}
                break
        if not holds_b:
            break

    holds_c = True
    for i in range(n):
        xd, yd = X[i, i], Y[i, i]
        if abs(xd - yd) > 1e-9 * max(1.0, abs(xd)):
            holds_c = False
            witnesses["c"] = {"position": i + 1, "x": complex(xd), "y": complex(yd)}
            break

    holds_d, wd = _condition_d(X, Y)
    if wd is not None:
        witnesses["d"] = wd

    x_gap = linalg.entrywise_one_norm(X) - linalg.trace_norm(X)
    y_gap = linalg.entrywise_one_norm(Y) - linalg.trace_norm(Y)
    holds_e = x_gap <= y_gap + 1e-8 * max(1.0, linalg.entrywise_one_norm(Y))
    if not holds_e:
        witnesses["e"] = {"x_gap": x_gap, "y_gap": y_gap}

    return NecessaryReport(holds_a, holds_b, holds_c, holds_d, holds_e, x_gap, y_gap, witnesses)


def strong_cs_gap(v: np.ndarray, w: np.ndarray) -> tuple[float, float]:
    """Both sides of the sharpened Cauchy-Schwarz inequality for a vector pair.

    Returns ``(lhs, rhs)`` with

        lhs = ||v.conj v|| * ||w.conj w|| - <v.conj v, w.conj w>
        rhs = ||v||^2 ||w||^2 - |<v, w>|^2

    and 0 <= lhs <= rhs always; both sides only depend on entry magnitudes
    through lhs, while rhs is phase-sensitive only via the inner product.
    """
    v = linalg.as_complex_vector(v)
    w = linalg.as_complex_vector(w)
    if v.shape != w.shape:
        raise DimensionMismatchError(f"shape mismatch {v.shape} vs {w.shape}")
    a = np.abs(v) ** 2
    b = np.abs(w) ** 2
    lhs = float(np.linalg.norm(a) * np.linalg.norm(b) - a @ b)
    rhs = float(a.sum() * b.sum() - abs(np.vdot(v, w)) ** 2)
    return lhs, rhs


def length_lower_bound(pair: PairXY) -> int:
    """Lower bound on the number of terms any joint decomposition needs: rank(X).

    Requires conditions (a)-(c); the rank is numerical, at threshold
    1e-9 times the largest singular value.
    """
    report = check_necessary(pair)
    if not report.holds_abc:
        raise ConditionsViolatedError(
            f"conditions {report.failing()} fail; pair is not decomposable", report=report
        )
    s = np.abs(np.linalg.eigvalsh(pair.X))
    if s.size == 0 or s.max() == 0.0:
        return 0
    return int((s > 1e-9 * s.max()).sum())
