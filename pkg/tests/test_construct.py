import numpy as np
import pytest

from pcpkit import (
    PairXY,
    PcpDecomposition,
    check_necessary,
    comparison_matrix,
    decompose_2x2,
    decompose_auto,
    decompose_comparison,
    decompose_diagonal_x,
    decompose_isotropic,
    decompose_recursive,
    isotropic_constants,
    isotropic_pair,
    perron_scaling,
    reconstruct,
    verify_decomposition,
)
from pcpkit.errors import ComparisonNotPsdError, WrongDimensionError
from pcpkit.linalg import phase_normalize_columns
from pcpkit.pairs import length_lower_bound

from conftest import cyclic_pair, random_2x2_abcd_pair, random_decomposable_pair

REG_X = np.array([[2, 1, -1], [1, 8, 1], [-1, 1, 4]], float)
REG_Y = np.array([[2, 1, 3], [2, 8, 1], [1, 2, 4]], float)

CMP_X = np.array([[2, 1, -1], [1, 3, 2j], [-1, -2j, 3]], complex)
CMP_Y = np.array([[2, 1, 2], [1, 3, 4], [0.5, 1, 3]], complex)


# ---------------------------------------------------------------- diagonal X

def test_diagonal_route_basic():
    Y = np.array([[2.0, 3.0], [0.5, 1.0]])
    pair = PairXY(np.diag([2.0, 1.0]), Y)
    out = decompose_diagonal_x(pair)
    assert out.ok and out.method == "diagonal-x"
    assert out.decomposition.m == 4      # one term per position of Y
    assert verify_decomposition(out.decomposition, pair)


def test_diagonal_route_declines_nondiagonal():
    out = decompose_diagonal_x(PairXY(REG_X, REG_Y))
    assert out.status == "not-applicable"
    assert "off-diagonal" in out.reason


def test_diagonal_route_flags_bad_pair():
    pair = PairXY(np.diag([1.0, 1.0]), np.array([[1.0, -2.0], [1.0, 1.0]]))
    out = decompose_diagonal_x(pair)
    assert out.status == "conditions-violated"


# ------------------------------------------------------------------- n = 2

def test_2x2_requires_dimension():
    with pytest.raises(WrongDimensionError):
        decompose_2x2(PairXY(np.eye(3), np.eye(3)))


def test_2x2_closed_form_sweep():
    """Conditions (a)-(d) are sufficient at n = 2; every such pair decomposes."""
    rng = np.random.default_rng(61)
    for _ in range(300):
        pair = random_2x2_abcd_pair(rng)
        out = decompose_2x2(pair)
        assert out.ok, (pair.X, pair.Y, out.reason)
        assert verify_decomposition(out.decomposition, pair)


def test_2x2_degenerate_corner():
    # vanishing leading entry forces a diagonal X
    pair = PairXY(np.diag([0.0, 2.0]), np.array([[0.0, 1.5], [0.5, 2.0]]))
    out = decompose_2x2(pair)
    assert out.ok
    assert verify_decomposition(out.decomposition, pair)


def test_2x2_rejects_condition_violation():
    pair = PairXY(np.array([[1.0, 0.9], [0.9, 1.0]]),
                  np.array([[1.0, 0.5], [0.5, 1.0]]))
    out = decompose_2x2(pair)
    assert out.status == "conditions-violated"
    assert "d" in out.reason


# ---------------------------------------------------------------- recursive

def test_recursive_all_ones():
    pair = PairXY(np.ones((3, 3)), np.ones((3, 3)))
    out = decompose_recursive(pair)
    assert out.ok
    assert out.decomposition.m == 1      # rank-one pair needs a single term
    assert length_lower_bound(pair) == 1


def test_recursive_exhausted_row():
    # rank-two pair: the second elimination row is already exhausted
    X = np.array([[1.0, 1, 0], [1, 1, 0], [0, 0, 1]])
    pair = PairXY(X, X)
    out = decompose_recursive(pair)
    assert out.ok and out.decomposition.m == 2


def test_recursive_reports_radicand_witness():
    out = decompose_recursive(PairXY(REG_X, REG_Y), search_permutations=False)
    assert out.status == "not-applicable"
    w = out.info["witness"]
    assert w["position"] == (2, 3)
    assert w["radicand"] == pytest.approx(-0.5)


def test_recursive_permutation_retry():
    pair = PairXY(REG_X, REG_Y)
    out = decompose_recursive(pair, search_permutations=True)
    assert out.ok
    assert out.permutation == (1, 0, 2)      # first working ordering, lexicographic
    assert out.decomposition.m == 3
    assert verify_decomposition(out.decomposition, pair)


def test_recursive_permutation_cap():
    # beyond n = 7 only the identity ordering is attempted
    X = np.eye(8)
    X[:3, :3] = REG_X
    Y = np.eye(8)
    Y[:3, :3] = REG_Y
    out = decompose_recursive(PairXY(X, Y), search_permutations=True)
    assert out.status == "not-applicable"
    assert "note" in out.info


def test_recursive_on_decomposable_pairs():
    rng = np.random.default_rng(67)
    hits = 0
    for _ in range(60):
        pair = random_decomposable_pair(rng, int(rng.integers(2, 4)))
        out = decompose_recursive(pair, search_permutations=True)
        if out.ok:
            hits += 1
            assert verify_decomposition(out.decomposition, pair)
    assert hits >= 55        # the row-by-row route handles generic small pairs


# --------------------------------------------------------------- comparison

def test_comparison_matrix_values():
    M = comparison_matrix(np.array([[2, -3], [4j, -5]]))
    np.testing.assert_allclose(M, [[2, -3], [-4, 5]])


def test_perron_scaling_reaches_dominance():
    rng = np.random.default_rng(71)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        B = np.abs(rng.standard_normal((n, n)))
        B = (B + B.T) / 2
        np.fill_diagonal(B, 0.0)
        alpha = np.linalg.eigvalsh(B).max() + rng.uniform(0.0, 1.0)
        X = alpha * np.eye(n) - B          # comparison matrix equals itself: PSD
        d = perron_scaling(X)
        assert (d > 0).all()
        S = np.abs(d[:, None] * X * d[None, :])
        row_off = S.sum(axis=1) - np.diag(S)
        assert (np.diag(S) + 1e-9 * max(1.0, S.max()) >= row_off).all()


def test_perron_scaling_rejects_indefinite_comparison():
    with pytest.raises(ComparisonNotPsdError):
        perron_scaling(np.ones((3, 3)))


def test_comparison_route_worked_example():
    """The complex 3x3 pair with exactly three core columns and empty slack."""
    pair = PairXY(CMP_X, CMP_Y)
    out = decompose_comparison(pair)
    assert out.ok
    assert out.decomposition.m == 3
    assert out.info["core_columns"] == 3
    assert verify_decomposition(out.decomposition, pair)

    r = 2.0 ** 0.25
    V_ref = np.array([[1, -r, 0], [1, 0, 1j * np.sqrt(2)], [0, 1 / r, 1]], complex)
    W_ref = np.array([[1, 1 / r, 0], [1, 0, 1], [0, r, np.sqrt(2)]], complex)
    np.testing.assert_allclose(phase_normalize_columns(out.decomposition.V),
                               phase_normalize_columns(V_ref), atol=1e-9)
    np.testing.assert_allclose(phase_normalize_columns(out.decomposition.W),
                               phase_normalize_columns(W_ref), atol=1e-9)


def test_comparison_route_declines_indefinite():
    out = decompose_comparison(cyclic_pair(1.0))
    assert out.status == "not-applicable"
    assert out.info["min_eigenvalue"] < -0.5


def test_comparison_route_slack_columns():
    # inflate Y so the slack part is non-trivial
    pair = PairXY(CMP_X, CMP_Y + np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    out = decompose_comparison(pair)
    assert out.ok
    assert out.decomposition.m > out.info["core_columns"]
    assert verify_decomposition(out.decomposition, pair)


def test_comparison_route_diagonally_dominant_complex():
    X = np.array([[3, 1j, 0], [-1j, 3, 1], [0, 1, 3]], complex)
    Y = np.array([[3, 1, 1], [1, 3, 1], [1, 1, 3]], complex)
    out = decompose_comparison(PairXY(X, Y))
    assert out.ok
    assert verify_decomposition(out.decomposition, PairXY(X, Y))


# ---------------------------------------------------------------- isotropic

def test_isotropic_constants_identities():
    for n in range(2, 8):
        cp, cm = isotropic_constants(n)
        assert cp * cm == pytest.approx(n - 1, abs=1e-10)
        assert cp * cp + cm * cm == pytest.approx(n * n - n + 2, abs=1e-10)


def test_isotropic_pair_layout():
    pair = isotropic_pair(3, 3.0, -1.0)
    np.testing.assert_allclose(pair.X, 3 * np.eye(3) - np.ones((3, 3)))
    np.testing.assert_allclose(pair.Y, -np.eye(3) + 3 * np.ones((3, 3)))


def test_isotropic_grid():
    for n in (2, 3, 4, 5):
        a = 1.0
        for b in (-a / n, -a / (2 * n), 0.0, a / 2, a):
            out = decompose_isotropic(n, a, b)
            assert out.ok, (n, b, out.reason)
            assert verify_decomposition(out.decomposition, isotropic_pair(n, a, b))


def test_isotropic_extremes_and_interior():
    out = decompose_isotropic(3, 3.0, -1.0)
    assert out.ok and out.info["mixture"] == pytest.approx(1.0)
    out = decompose_isotropic(3, 3.0, 3.0)
    assert out.ok and out.info["mixture"] == pytest.approx(0.0)
    out = decompose_isotropic(3, 3.0, 1.0)
    assert out.ok and 0.0 < out.info["mixture"] < 1.0


def test_isotropic_out_of_range():
    assert decompose_isotropic(3, 1.0, 1.5).status == "conditions-violated"
    assert decompose_isotropic(3, 1.0, -0.5).status == "conditions-violated"
    assert decompose_isotropic(3, -1.0, 0.0).status == "conditions-violated"


def test_isotropic_zero():
    out = decompose_isotropic(4, 0.0, 0.0)
    assert out.ok
    np.testing.assert_allclose(reconstruct(out.decomposition).X, np.zeros((4, 4)), atol=1e-14)


# --------------------------------------------------------------------- auto

def test_auto_dispatch_order():
    assert decompose_auto(PairXY(np.diag([1.0, 2.0]), np.array([[1.0, 1], [1, 2]]))).method == "diagonal-x"
    rng = np.random.default_rng(73)
    pair = random_2x2_abcd_pair(rng)
    out = decompose_auto(pair)
    assert out.ok
    out = decompose_auto(PairXY(CMP_X, CMP_Y))
    assert out.method == "comparison"
    # the regression pair is diagonally dominant, so it resolves before recursion
    out = decompose_auto(PairXY(REG_X, REG_Y))
    assert out.ok and out.method == "comparison"
    # all-ones: indefinite comparison matrix, so the row-by-row route takes it
    out = decompose_auto(PairXY(np.ones((3, 3)), np.ones((3, 3))))
    assert out.ok and out.method == "recursive"


def test_auto_collects_reasons(fixtures):
    from pcpkit.fileio import load_pair_document

    pair, _ = load_pair_document(fixtures / "inconclusive_pair.json")
    out = decompose_auto(pair)
    assert out.status == "not-applicable"
    assert set(out.info["methods"]) == {"diagonal-x", "comparison", "recursive"}
    # a pair refuted by the norm-gap condition alone is reported as violated,
    # not merely out of reach of the routes
    out = decompose_auto(cyclic_pair(2.0))
    assert out.status == "conditions-violated"
    assert "e" in out.reason


def test_auto_conditions_violated():
    pair = PairXY(np.array([[0.0, 1.0], [1.0, 0.0]]), np.ones((2, 2)))
    out = decompose_auto(pair)
    assert out.status == "conditions-violated"


# ------------------------------------------------------- closure properties

def test_closure_under_diagonal_append():
    """Adding (diag(P), P) for entrywise non-negative P preserves decomposability."""
    rng = np.random.default_rng(79)
    for _ in range(25):
        n = int(rng.integers(2, 5))
        pair = random_decomposable_pair(rng, n)
        out = decompose_auto(pair)
        assert out.ok
        P = np.abs(rng.standard_normal((n, n)))
        extra = decompose_diagonal_x(PairXY(np.diag(np.diag(P)), P))
        assert extra.ok
        joined = PcpDecomposition(
            np.hstack([out.decomposition.V, extra.decomposition.V]),
            np.hstack([out.decomposition.W, extra.decomposition.W]),
        )
        target = PairXY(pair.X + np.diag(np.diag(P)), pair.Y + P)
        assert verify_decomposition(joined, target)


def test_closure_under_positive_diagonal_scaling():
    rng = np.random.default_rng(83)
    for _ in range(25):
        n = int(rng.integers(2, 5))
        pair = random_decomposable_pair(rng, n)
        out = decompose_auto(pair)
        assert out.ok
        d = rng.uniform(0.2, 3.0, size=n)
        root = np.sqrt(d)[:, None]
        scaled = PcpDecomposition(out.decomposition.V * root, out.decomposition.W * root)
        target = PairXY(d[:, None] * pair.X * d[None, :], d[:, None] * pair.Y * d[None, :])
        assert verify_decomposition(scaled, target)


def test_closure_under_permutation():
    rng = np.random.default_rng(89)
    for _ in range(25):
        n = int(rng.integers(2, 5))
        pair = random_decomposable_pair(rng, n)
        out = decompose_auto(pair)
        assert out.ok
        p = rng.permutation(n)
        permuted = PcpDecomposition(out.decomposition.V[p, :], out.decomposition.W[p, :])
        target = PairXY(pair.X[np.ix_(p, p)], pair.Y[np.ix_(p, p)])
        assert verify_decomposition(permuted, target)


def test_cp_matrix_paired_with_itself():
    """X = NN^T with N non-negative: (X, X) passes every condition, and the
    comparison route certifies it whenever the comparison matrix allows."""
    rng = np.random.default_rng(97)
    certified = 0
    for _ in range(60):
        n = int(rng.integers(2, 6))
        N = np.abs(rng.standard_normal((n, int(rng.integers(1, n + 2)))))
        X = N @ N.T
        if rng.random() < 0.5:
            X = X + np.diag(np.abs(X).sum(axis=1))   # force diagonal dominance
        pair = PairXY(X, X)
        assert check_necessary(pair).all_hold
        from pcpkit.linalg import is_psd
        if is_psd(comparison_matrix(X)):
            out = decompose_auto(pair)
            assert out.ok
            certified += 1
    assert certified >= 20
