import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcpkit import (
    PairXY,
    PcpDecomposition,
    check_necessary,
    length_lower_bound,
    reconstruct,
    strong_cs_gap,
    verify_decomposition,
)
from pcpkit.errors import ConditionsViolatedError, DimensionMismatchError, PcpkitError

from conftest import cyclic_pair, random_decomposition


def test_pair_validation():
    with pytest.raises(PcpkitError):
        PairXY(np.ones((2, 3)), np.ones((2, 3)))
    with pytest.raises(DimensionMismatchError):
        PairXY(np.ones((2, 2)), np.ones((3, 3)))
    with pytest.raises(PcpkitError):
        PairXY(np.array([[np.nan]]), np.array([[1.0]]))
    pair = PairXY(np.eye(2), np.eye(2))
    assert pair.n == 2
    assert not pair.X.flags.writeable


def test_decomposition_accessors():
    dec = PcpDecomposition.from_vectors([np.ones(3), np.zeros(3)], [np.ones(3), np.ones(3)])
    assert dec.n == 3 and dec.m == 2
    np.testing.assert_allclose(dec.vs[0], np.ones(3))
    with pytest.raises(DimensionMismatchError):
        PcpDecomposition.from_vectors([np.ones(2)], [np.ones(2), np.ones(2)])
    with pytest.raises(PcpkitError):
        PcpDecomposition.from_vectors([], [])


def test_reconstruct_all_ones():
    # v = w = 1 gives X = J and Y = J
    dec = PcpDecomposition.from_vectors([np.ones(3)], [np.ones(3)])
    pair = reconstruct(dec)
    np.testing.assert_allclose(pair.X, np.ones((3, 3)), atol=1e-14)
    np.testing.assert_allclose(pair.Y, np.ones((3, 3)), atol=1e-14)


def test_reconstruct_verify_round_trip():
    rng = np.random.default_rng(31)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        m = int(rng.integers(1, 11))
        dec = random_decomposition(rng, n, m)
        pair = reconstruct(dec)
        assert verify_decomposition(dec, pair, tol=1e-10)


def test_random_decompositions_pass_necessary_conditions():
    """Reconstructed pairs satisfy all five conditions; they are genuine members."""
    rng = np.random.default_rng(37)
    for _ in range(200):
        n = int(rng.integers(1, 7))
        m = int(rng.integers(1, 11))
        report = check_necessary(reconstruct(random_decomposition(rng, n, m)))
        assert report.all_hold, report.failing()


def test_verify_rejects_wrong_pair():
    rng = np.random.default_rng(41)
    dec = random_decomposition(rng, 3, 4)
    pair = reconstruct(dec)
    other = PairXY(pair.X + np.eye(3), pair.Y + np.eye(3))
    assert not verify_decomposition(dec, pair.__class__(other.X, other.Y))
    with pytest.raises(DimensionMismatchError):
        verify_decomposition(dec, PairXY(np.eye(2), np.eye(2)))


def test_cyclic_family_fails_only_norm_condition():
    for a in (0.5, 2.0, 5.0):
        report = check_necessary(cyclic_pair(a))
        assert report.failing() == ["e"]
        assert report.x_gap == pytest.approx(6.0, abs=1e-10)
        assert report.witnesses["e"]["x_gap"] > report.witnesses["e"]["y_gap"]
    assert check_necessary(cyclic_pair(1.0)).all_hold


def test_condition_witnesses_carry_positions():
    X = np.array([[1.0, 0.0], [0.0, 1.0]])
    bad_b = PairXY(X, np.array([[1.0, -0.5], [0.2, 1.0]]))
    rep = check_necessary(bad_b)
    assert not rep.holds_b and rep.witnesses["b"]["position"] == (1, 2)

    bad_c = PairXY(X, np.array([[2.0, 0.1], [0.1, 1.0]]))
    rep = check_necessary(bad_c)
    assert not rep.holds_c and rep.witnesses["c"]["position"] == 1

    bad_d = PairXY(np.array([[1.0, 0.9], [0.9, 1.0]]),
                   np.array([[1.0, 0.5], [0.5, 1.0]]))
    rep = check_necessary(bad_d)
    assert not rep.holds_d and rep.witnesses["d"]["position"] == (1, 2)

    bad_a = PairXY(np.array([[0.0, 1.0], [1.0, 0.0]]), np.ones((2, 2)))
    rep = check_necessary(bad_a)
    assert not rep.holds_a and "min_eigenvalue" in rep.witnesses["a"]


def test_strong_cs_examples():
    lhs, rhs = strong_cs_gap(np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    assert lhs == pytest.approx(1.0)   # ||a|| ||b|| - <a,b> = 1 - 0
    assert rhs == pytest.approx(1.0)
    lhs, rhs = strong_cs_gap(np.ones(3), np.ones(3))
    assert lhs == pytest.approx(0.0, abs=1e-12)
    assert rhs == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DimensionMismatchError):
        strong_cs_gap(np.ones(2), np.ones(3))


def test_strong_cs_bounds_random():
    rng = np.random.default_rng(43)
    for _ in range(2000):
        n = int(rng.integers(1, 11))
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        lhs, rhs = strong_cs_gap(v, w)
        assert lhs >= -1e-12
        assert rhs - lhs >= -1e-10


def test_strong_cs_phase_behaviour():
    """Entrywise phases leave the left side alone; the right side is smallest
    (the inequality sharpest) once all entries are made non-negative."""
    rng = np.random.default_rng(47)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        lhs, rhs = strong_cs_gap(v, w)

        # single-entry phase: lhs unchanged
        k = int(rng.integers(0, n))
        v2 = v.copy()
        v2[k] *= np.exp(1j * rng.uniform(0, 2 * np.pi))
        lhs2, _ = strong_cs_gap(v2, w)
        assert lhs2 == pytest.approx(lhs, abs=1e-10)

        # global phases: both sides unchanged
        gv = np.exp(1j * rng.uniform(0, 2 * np.pi))
        gw = np.exp(1j * rng.uniform(0, 2 * np.pi))
        lhs3, rhs3 = strong_cs_gap(gv * v, gw * w)
        assert lhs3 == pytest.approx(lhs, abs=1e-10)
        assert rhs3 == pytest.approx(rhs, abs=1e-10)

        # stripping phases entirely can only shrink the right side
        lhs4, rhs4 = strong_cs_gap(np.abs(v), np.abs(w))
        assert lhs4 == pytest.approx(lhs, abs=1e-10)
        assert rhs4 <= rhs + 1e-10


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**31 - 1))
def test_strong_cs_property(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    lhs, rhs = strong_cs_gap(v, w)
    assert -1e-12 <= lhs <= rhs + 1e-10


def test_length_lower_bound():
    # all-ones pair is rank one
    pair = reconstruct(PcpDecomposition.from_vectors([np.ones(3)], [np.ones(3)]))
    assert length_lower_bound(pair) == 1
    # a generic 3-term decomposition has rank-3 X
    rng = np.random.default_rng(53)
    dec = random_decomposition(rng, 3, 5)
    pair = reconstruct(dec)
    assert length_lower_bound(pair) <= dec.m
    assert length_lower_bound(pair) == 3
    with pytest.raises(ConditionsViolatedError):
        length_lower_bound(PairXY(np.array([[0.0, 1.0], [1.0, 0.0]]), np.ones((2, 2))))


def test_length_lower_bound_never_exceeds_known_m():
    rng = np.random.default_rng(59)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        m = int(rng.integers(1, 9))
        dec = random_decomposition(rng, n, m)
        assert length_lower_bound(reconstruct(dec)) <= m
