import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnr import matcore, metrics
from cnr.crange import SolveConfig, radius
from oracles import seminorm_2x2_zoom

E12 = np.array([[0, 1], [0, 0]], dtype=complex)


def test_seminorm_vanishes_on_traceless_diagonals():
    assert metrics.correlation_seminorm(np.diag([1.0, -0.5, -0.5]).astype(complex)) <= 1e-12
    assert metrics.correlation_seminorm(np.diag([2.0j, -2.0j]).astype(complex)) <= 1e-12
    assert metrics.correlation_seminorm(np.zeros((3, 3), dtype=complex)) == 0.0


def test_seminorm_e12_is_one():
    # 1-D oracle: ||[[ -d, 1], [0, d]]|| >= 1 for every d, with equality at 0
    ds = np.linspace(-2.0, 2.0, 401)
    grid = min(
        np.linalg.svd(E12 - np.diag([d, -d]), compute_uv=False)[0] for d in ds
    )
    assert grid >= 1.0 - 1e-12
    assert metrics.correlation_seminorm(E12) == pytest.approx(1.0, abs=1e-8)


def test_seminorm_identity_is_one():
    assert metrics.correlation_seminorm(np.eye(2, dtype=complex)) == pytest.approx(1.0, abs=1e-8)
    assert metrics.correlation_seminorm(np.eye(4, dtype=complex)) == pytest.approx(1.0, abs=1e-6)


def test_seminorm_matches_zoom_grid_2x2():
    rng = np.random.default_rng(0)
    for _ in range(6):
        t = matcore.ginibre_random(2, rng)
        assert metrics.correlation_seminorm(t) == pytest.approx(
            seminorm_2x2_zoom(t), abs=1e-6
        )


def test_seminorm_lower_bounds():
    # any diagonal shift keeps each off-diagonal entry and the mean diagonal
    rng = np.random.default_rng(1)
    for _ in range(8):
        n = int(rng.integers(2, 6))
        t = matcore.ginibre_random(n, rng)
        v = metrics.correlation_seminorm(t)
        off = t - np.diag(np.diag(t))
        assert v >= np.max(np.abs(off)) - 1e-8
        assert v >= abs(matcore.normalized_trace(t)) - 1e-8


@given(st.floats(0.05, 4.0), st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_seminorm_homogeneity(t, seed):
    a = matcore.ginibre_random(3, np.random.default_rng(seed))
    assert abs(
        metrics.correlation_seminorm(t * a) - t * metrics.correlation_seminorm(a)
    ) <= 2e-6 * max(1.0, t)


def test_seminorm_triangle():
    rng = np.random.default_rng(2)
    for _ in range(8):
        n = int(rng.integers(2, 5))
        a = matcore.ginibre_random(n, rng)
        b = matcore.ginibre_random(n, rng)
        slack = (
            metrics.correlation_seminorm(a + b)
            - metrics.correlation_seminorm(a)
            - metrics.correlation_seminorm(b)
        )
        assert slack <= 2e-6


def test_radius_seminorm_bracket():
    rng = np.random.default_rng(3)
    cfg = SolveConfig(seed=0)
    for n in (2, 3, 4):
        for case in range(6):
            t = matcore.ginibre_random(n, rng)
            w = radius(t, 48, cfg.derive(case))
            sn = metrics.correlation_seminorm(t)
            assert w <= sn + 1e-6
            assert w >= sn / (4 * n + 2) - 1e-6


def test_radius_invariant_under_traceless_diagonal_shift():
    rng = np.random.default_rng(4)
    cfg = SolveConfig(seed=1)
    for case in range(5):
        n = int(rng.integers(2, 5))
        t = matcore.ginibre_random(n, rng)
        d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        d -= np.mean(d)
        w1 = radius(t, 48, cfg.derive(case))
        w2 = radius(t + np.diag(d), 48, cfg.derive(100 + case))
        assert abs(w1 - w2) <= 1e-7


def test_kappa_search_canonical_witness():
    est = metrics.kappa_search(2, budget=6, rng=np.random.default_rng(0))
    assert est.best_ratio <= 0.5 + 1e-6
    assert est.best_ratio >= est.lower_bound - 1e-6
    est = metrics.kappa_search(3, budget=6, rng=np.random.default_rng(1))
    assert est.best_ratio <= 1.0 / 3.0 + 1e-6
    assert est.quoted_upper == pytest.approx(2.0 / 3.0)
    assert any("discrepancy" in f for f in est.flags)
    assert est.witness.shape == (3, 3)


def test_kappa_sparse_witness_values():
    w = metrics.sparse_witness(4)
    assert metrics.correlation_seminorm(w) == pytest.approx(1.0, abs=1e-8)
    assert radius(w, 32) == pytest.approx(0.25, abs=1e-8)


def test_direct_sum_disk_scaling():
    rep = metrics.direct_sum_check(E12, np.zeros((1, 1), dtype=complex), m=32)
    assert rep.max_support_dev <= 1e-9
    assert np.allclose(rep.direct, 1.0 / 3.0, atol=1e-9)


def test_direct_sum_diagonal_blocks():
    s1 = np.diag([2.0]).astype(complex)
    s2 = np.diag([1.0, -1.0]).astype(complex)
    rep = metrics.direct_sum_check(s1, s2, m=16)
    # both blocks singletons: combined range is the weighted mean point 2/3
    assert rep.max_support_dev <= 1e-9
    thetas = rep.thetas
    assert np.allclose(rep.direct, (2.0 / 3.0) * np.cos(thetas), atol=1e-9)


def test_direct_sum_random_blocks():
    rng = np.random.default_rng(5)
    for _ in range(4):
        s1 = matcore.ginibre_random(2, rng)
        s2 = matcore.ginibre_random(2, rng)
        rep = metrics.direct_sum_check(s1, s2, m=24)
        assert rep.max_support_dev <= 1e-7
        assert rep.hausdorff <= 1e-6
