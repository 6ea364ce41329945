"""Charts, bivectors, dressing, and the finite-difference geometry checks."""

import numpy as np
import pytest

from gzgw import poisson as po
from gzgw.errors import DomainError, GaugeDomainError
from gzgw.fiber import random_regular
from gzgw.gwmap import gw_forward
from gzgw.linalg import sqrtm_pd
from gzgw.poisson import (chart_gamma, chart_to_an, chart_to_herm,
                          dressing_field, dual_jacobiator, dual_pl_bivector,
                          gauge_transform, gz_involution_residual,
                          gz_involution_residual_dual, herm_basis,
                          herm_to_chart, an_to_chart, iwasawa_split,
                          kirillov_bivector, moment_flow_check, numerical_rank,
                          pair_herm, pushforward_residual, u_dual_basis)


def rand_hermitian(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (m + m.conj().T)


def test_dual_basis_is_dual():
    for n in (2, 3, 4):
        es = herm_basis(n)
        xis = u_dual_basis(n)
        gram = np.array([[pair_herm(e, xi) for xi in xis] for e in es])
        assert abs(gram - np.eye(n * n)).max() == 0.0
        for xi in xis:
            assert abs(xi + xi.conj().T).max() == 0.0


def test_chart_roundtrips_exact():
    rng = np.random.default_rng(1)
    a = rand_hermitian(rng, 4)
    assert np.array_equal(chart_to_herm(herm_to_chart(a), 4), a)
    x = np.triu(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)), 1)
    x += np.diag(np.exp(rng.normal(size=3)))
    assert abs(chart_to_an(an_to_chart(x), 3) - x).max() <= 1e-15


def test_iwasawa_split():
    rng = np.random.default_rng(2)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    sp = iwasawa_split(m)
    assert abs(sp.an_part + sp.k_part - m).max() <= 1e-13
    assert abs(np.tril(sp.an_part, -1)).max() == 0.0
    assert abs(np.diagonal(sp.an_part).imag).max() == 0.0
    assert abs(sp.k_part + sp.k_part.conj().T).max() <= 1e-14
    # anti-Hermitian input -> (0, m); triangular real-diagonal input -> (m, 0)
    anti = 0.5 * (m - m.conj().T)
    sp = iwasawa_split(anti)
    assert abs(sp.an_part).max() <= 1e-14
    upper = np.triu(m, 1) + np.diag(np.diagonal(m).real)
    sp = iwasawa_split(upper)
    assert abs(sp.k_part).max() <= 1e-14


def test_kirillov_linearity_antisymmetry_rank():
    rng = np.random.default_rng(3)
    n = 3
    assert abs(kirillov_bivector(np.zeros((n, n), dtype=complex))).max() == 0.0
    a = rand_hermitian(rng, n)
    b = rand_hermitian(rng, n)
    pia = kirillov_bivector(a)
    assert abs(pia + pia.T).max() == 0.0
    assert abs(kirillov_bivector(a + 2.0 * b)
               - (pia + 2.0 * kirillov_bivector(b))).max() <= 1e-12
    reg = random_regular(n, rng)
    assert numerical_rank(kirillov_bivector(reg.matrix)) == n * n - n


def test_kirillov_matches_fd_bracket_of_coordinates():
    # coordinate functions are linear, so their FD bracket through the
    # bivector is the bivector entry itself
    rng = np.random.default_rng(4)
    n = 2
    a = rand_hermitian(rng, n)
    pi = kirillov_bivector(a)
    x0 = herm_to_chart(a)
    h = 1e-6
    d = n * n
    for idx_a in range(d):
        for idx_b in range(d):
            grad_a = np.zeros(d)
            grad_a[idx_a] = 1.0
            grad_b = np.zeros(d)
            grad_b[idx_b] = 1.0
            assert grad_a @ pi @ grad_b == pytest.approx(pi[idx_a, idx_b])


def test_dressing_field_basics():
    rng = np.random.default_rng(5)
    n = 3
    x = np.triu(rng.normal(size=(n, n)) * 0.3, 1) + np.diag(np.exp(rng.normal(size=n) * 0.3))
    x = x.astype(complex)
    assert abs(dressing_field(x, np.zeros((n, n), dtype=complex))).max() == 0.0
    xi = 0.5 * (rng.normal(size=(n, n)) - 1j * rng.normal(size=(n, n)))
    xi = 0.5 * (xi - xi.conj().T)
    assert abs(dressing_field(np.eye(n, dtype=complex), xi)).max() <= 1e-14


def an_factor_of(g):
    """Triangular-times-unitary factorization oracle via reversed Cholesky
    (Gram-Schmidt on the rows): g = z k with z upper triangular positive
    diagonal and k unitary."""
    q = g @ g.conj().T
    n = q.shape[0]
    rev = np.eye(n)[::-1]
    low = np.linalg.cholesky(rev @ q @ rev)
    return rev @ low @ rev


def test_dressing_field_flow_consistency():
    # integrating the field for small s matches the triangular factor of
    # exp(s xi) x to second order
    rng = np.random.default_rng(6)
    n = 3
    x = np.triu(rng.normal(size=(n, n)) * 0.3, 1) + np.diag(np.exp(rng.normal(size=n) * 0.3))
    x = x.astype(complex)
    xi = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    xi = 0.5 * (xi - xi.conj().T)
    dx = dressing_field(x, xi, as_matrix=True)
    errs = []
    for s in (1e-3, 5e-4):
        target = an_factor_of((np.eye(n) + s * xi + 0.5 * s * s * xi @ xi) @ x)
        errs.append(abs(target - (x + s * dx)).max())
    assert errs[0] <= 5e-5
    assert errs[0] / errs[1] > 3.0  # second-order remainder


def test_dual_bivector_identity_scalars_and_rank():
    assert abs(dual_pl_bivector(np.eye(2, dtype=complex))).max() == 0.0
    assert abs(dual_pl_bivector(np.array([[2.0 + 0j]]))).max() == 0.0
    assert abs(dual_pl_bivector(3.0 * np.eye(3, dtype=complex))).max() == 0.0
    rng = np.random.default_rng(7)
    for n in (2, 3):
        reg = random_regular(n, rng)
        x = chart_to_an(chart_gamma(reg.matrix), n)
        pi, defect = dual_pl_bivector(x, return_defect=True)
        assert defect <= 1e-8
        assert abs(pi + pi.T).max() <= 1e-10
        assert numerical_rank(pi) == n * n - n


def test_dual_jacobi_identity():
    rng = np.random.default_rng(8)
    reg = random_regular(2, rng)
    x = chart_to_an(chart_gamma(reg.matrix), 2)
    assert dual_jacobiator(x, fd_step=1e-5) <= 1e-4


def test_chart_gamma_definition():
    rng = np.random.default_rng(9)
    n = 3
    assert abs(chart_gamma(np.zeros((n, n), dtype=complex))).max() == 0.0
    d = np.array([0.2, 0.9, 1.7])
    y = chart_gamma(np.diag(d).astype(complex))
    assert abs(chart_to_an(y, n) - np.diag(np.exp(d))).max() <= 1e-12
    reg = random_regular(n, rng)
    x = chart_to_an(chart_gamma(reg.matrix), n)
    g = gw_forward(reg.matrix).image
    assert abs(sqrtm_pd(x.conj().T @ x) - g).max() <= 1e-9


def test_pushforward_residual_small_and_second_order():
    rng = np.random.default_rng(10)
    for n in (2, 3):
        reg = random_regular(n, rng)
        assert pushforward_residual(reg.matrix, fd_step=1e-5) <= 1e-4
    reg = random_regular(2, rng)
    coarse = pushforward_residual(reg.matrix, fd_step=4e-3)
    fine = pushforward_residual(reg.matrix, fd_step=2e-3)
    assert coarse / fine >= 3.0
    assert pushforward_residual(np.array([[0.4 + 0j]])) == 0.0


def test_pushforward_margin_guard():
    rng = np.random.default_rng(11)
    reg = random_regular(2, rng, min_margin=0.05)
    with pytest.raises(DomainError):
        pushforward_residual(reg.matrix, fd_step=reg.margin)


def test_involution_residuals():
    rng = np.random.default_rng(12)
    for n in (2, 3, 4):
        reg = random_regular(n, rng)
        assert gz_involution_residual(reg.matrix, fd_step=1e-5) <= 1e-6
        x = chart_to_an(chart_gamma(reg.matrix), n)
        assert gz_involution_residual_dual(x, fd_step=1e-5) <= 1e-6


def test_moment_flow_all_levels():
    rng = np.random.default_rng(13)
    for n in (2, 3):
        reg = random_regular(n, rng)
        for k in range(1, n):
            for i in range(1, k + 1):
                assert moment_flow_check(reg.matrix, k, i) <= 1e-5
    with pytest.raises(DomainError):
        moment_flow_check(random_regular(3, rng).matrix, 3, 1)


def test_moment_flow_generator_tangent_to_level_sets():
    # the generator leaves every level eigenvalue fixed
    rng = np.random.default_rng(14)
    from gzgw.fiber import torus_act, torus_from_angles
    from gzgw.pattern import gz_lambda

    reg = random_regular(3, rng)
    h = 1e-6
    levels = [np.zeros(1), np.zeros(2)]
    levels[1][0] = h
    moved = torus_act(torus_from_angles(3, levels), reg)
    drift = abs(gz_lambda(moved.matrix).flatten() - reg.pattern.flatten()).max()
    assert drift / h <= 1e-6


def test_gauge_transform():
    rng = np.random.default_rng(15)
    reg = random_regular(3, rng)
    pi = kirillov_bivector(reg.matrix)
    zero = np.zeros_like(pi)
    assert np.array_equal(gauge_transform(pi, zero), pi)
    assert abs(gauge_transform(zero, rng.normal(size=pi.shape))).max() == 0.0
    sig = rng.normal(size=pi.shape) * 0.1
    sig = 0.5 * (sig - sig.T)
    out = gauge_transform(pi, sig)
    assert abs(out + out.T).max() <= 1e-10
    assert numerical_rank(out) == numerical_rank(pi)
    # engineered singular gate: sigma = pinv-like inverse on the leaf flips
    # an eigenvalue of sigma.pi to -1
    u, s, vt = np.linalg.svd(pi)
    sing = -np.linalg.pinv(pi)
    with pytest.raises(GaugeDomainError):
        gauge_transform(pi, sing)


def test_dual_bivector_rejects_boundary_root():
    with pytest.raises(DomainError):
        dual_pl_bivector(np.diag([1.0, 2.0]).astype(complex))
