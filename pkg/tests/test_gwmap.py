"""The forward map, its inverse, and the twist."""

import numpy as np
import pytest

from gzgw.errors import BoundaryStratumError, DomainError
from gzgw.fiber import (as_regular, chi_word, random_regular,
                        random_torus_element, recover_torus, torus_act,
                        torus_identity)
from gzgw.gwmap import (chi_tilde_word, gw_forward, gw_inverse, n2_closed_form,
                        psi_extract)
from gzgw.linalg import exp_hermitian
from gzgw.pattern import gz_lambda, gz_mu

EXCHANGE = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def test_forward_zero_and_diagonal():
    assert np.array_equal(gw_forward(np.zeros((3, 3), dtype=complex)).image, np.eye(3))
    d = np.array([0.3, 1.1, -0.4])
    out = gw_forward(np.diag(d).astype(complex))
    assert abs(out.image - np.diag(np.exp(d))).max() < 1e-14
    assert out.torus is None


def test_forward_matches_worked_example():
    out = gw_forward(EXCHANGE).image
    bt = np.sqrt(2.0 * np.cosh(1.0) - 2.0)
    ct = 2.0 * np.cosh(1.0) - 1.0
    assert out[0, 0].real == pytest.approx(1.0, abs=1e-12)
    assert out[0, 1].real == pytest.approx(bt, abs=1e-12)
    assert out[1, 1].real == pytest.approx(ct, abs=1e-12)
    # frozen decimals from the closed form
    assert out[0, 1].real == pytest.approx(1.042190, abs=1e-6)
    assert out[1, 1].real == pytest.approx(2.086161, abs=1e-6)


def test_forward_rejects_near_boundary():
    a = np.diag([1.0, 2.0]).astype(complex)
    a[0, 1] = a[1, 0] = 1e-13
    with pytest.raises(BoundaryStratumError) as err:
        gw_forward(a)
    assert err.value.margin is not None


def test_intertwining_and_roundtrip():
    rng = np.random.default_rng(20)
    for n in range(2, 7):
        reg = random_regular(n, rng)
        res = gw_forward(reg.matrix)
        assert abs(gz_mu(res.image).flatten() - reg.pattern.flatten()).max() <= 1e-9
        assert abs(gw_inverse(res.image) - reg.matrix).max() <= 1e-9


def test_inverse_identity_and_diagonal():
    assert abs(gw_inverse(np.eye(3, dtype=complex))).max() == 0.0
    out = gw_inverse(np.diag([np.e, 1.0, np.e ** 2]).astype(complex))
    assert abs(out - np.diag([1.0, 0.0, 2.0])).max() < 1e-14
    with pytest.raises(DomainError):
        gw_inverse(np.diag([1.0, -1.0]).astype(complex))


def test_inverse_of_worked_example():
    image = gw_forward(EXCHANGE).image
    assert abs(gw_inverse(image) - EXCHANGE).max() <= 1e-10


def test_equivariance_properties():
    rng = np.random.default_rng(21)
    n = 4
    reg = random_regular(n, rng)
    g = gw_forward(reg.matrix).image
    t = random_torus_element(n, rng)
    lhs = gw_forward(torus_act(t, reg).matrix).image
    rhs = torus_act(t, as_regular(g)).matrix
    assert abs(lhs - rhs).max() <= 1e-8
    d = np.diag(np.exp(1j * rng.uniform(-np.pi, np.pi, n)))
    assert abs(gw_forward(d @ reg.matrix @ d.conj().T).image
               - d @ g @ d.conj().T).max() <= 1e-9
    for u in (-1.0, 0.35, 1.0):
        assert abs(gw_forward(reg.matrix + u * np.eye(n)).image
                   - np.exp(u) * g).max() <= 1e-9 * max(1.0, np.exp(u))
    assert abs(gw_forward(reg.matrix.conj()).image - g.conj()).max() <= 1e-9


def test_nesting():
    rng = np.random.default_rng(22)
    reg = random_regular(5, rng)
    g = gw_forward(reg.matrix).image
    for k in range(1, 5):
        assert abs(g[:k, :k] - gw_forward(reg.matrix[:k, :k]).image).max() <= 1e-9


def test_real_stratum_and_sign_preservation():
    rng = np.random.default_rng(23)
    reg = random_regular(4, rng, real=True)
    res = gw_forward(reg.matrix)
    assert abs(res.image.imag).max() <= 1e-10
    t_in = recover_torus(reg)
    t_out = recover_torus(as_regular(res.image))
    for a, b in zip(t_in.phases, t_out.phases):
        assert np.array_equal(np.sign(a.real), np.sign(b.real))


def test_gw_result_shares_fiber_coordinate():
    rng = np.random.default_rng(24)
    reg = random_regular(3, rng)
    res = gw_forward(reg.matrix)
    t_img = recover_torus(as_regular(res.image))
    for a, b in zip(res.torus.phases, t_img.phases):
        assert abs(a - b).max() <= 1e-9


def test_n2_closed_form_values_and_limits():
    img, branches = n2_closed_form(0.0, 1.0)
    assert img[0, 1].real == pytest.approx(1.0421906109874028, abs=1e-12)
    assert img[1, 1].real == pytest.approx(2.0861612696304874, abs=1e-12)
    assert branches[0] == pytest.approx(-branches[1], abs=1e-12)
    # diagonal limit b -> 0+, a > 0
    img, _ = n2_closed_form(0.7, 1e-12)
    assert img[0, 1].real == pytest.approx(0.0, abs=1e-5)
    assert img[1, 1].real == pytest.approx(np.exp(-0.7), abs=1e-9)
    with pytest.raises(DomainError):
        n2_closed_form(0.0, 0.0)
    # sign rule: off-diagonal sign follows b
    img_neg, _ = n2_closed_form(0.3, -0.8)
    assert img_neg[0, 1].real < 0.0


def test_n2_closed_form_agrees_with_transport_on_grid():
    worst = 0.0
    for a in np.linspace(-2.0, 2.0, 21):
        for b in np.linspace(-2.0, 2.0, 21):
            if b == 0.0:
                continue
            closed, _ = n2_closed_form(a, b)
            mat = np.array([[a, b], [b, -a]], dtype=complex)
            worst = max(worst, abs(gw_forward(mat).image - closed).max())
    assert worst <= 1e-10


def test_psi_defining_relation_all_sizes():
    rng = np.random.default_rng(25)
    for n in range(2, 7):
        reg = random_regular(n, rng)
        tw = psi_extract(reg, steps=64)
        assert tw.relation_residual <= 1e-8
        assert abs(tw.psi @ tw.psi.conj().T - np.eye(n)).max() <= 1e-10
        assert tw.det_defect <= 1e-9
        g = gw_forward(reg.matrix).image
        rebuilt = exp_hermitian(tw.psi @ reg.matrix @ tw.psi.conj().T)
        assert abs(rebuilt - g).max() <= 1e-8


def test_psi_real_on_symmetric():
    rng = np.random.default_rng(26)
    reg = random_regular(4, rng, real=True)
    tw = psi_extract(reg, steps=64)
    assert abs(tw.psi.imag).max() <= 1e-6
    det = np.linalg.det(tw.psi.real)
    assert det == pytest.approx(1.0, abs=1e-9)


def test_psi_conjugation_symmetry():
    rng = np.random.default_rng(27)
    reg = random_regular(3, rng)
    tw = psi_extract(reg, steps=64)
    tw_bar = psi_extract(as_regular(reg.matrix.conj()), steps=64)
    assert abs(tw_bar.psi - tw.psi.conj()).max() <= 1e-10


def test_psi_near_zero_normalization():
    rng = np.random.default_rng(28)
    base = random_regular(3, rng, min_margin=0.2)
    small = as_regular(1e-6 * base.matrix, strictness_tol=1e-9)
    tw = psi_extract(small, steps=64, strictness_tol=1e-9)
    assert abs(tw.psi - np.eye(3)).max() <= 1e-4


def test_psi_angle_matches_closed_form_branch():
    for (a, b) in [(0.0, 1.0), (0.75, 0.75), (-0.8, 0.4), (1.2, -0.9)]:
        mat = np.array([[a, b], [b, -a]], dtype=complex)
        tw = psi_extract(mat, steps=64)
        c2 = 2.0 * float(tw.psi[0, 0].real) ** 2 - 1.0
        _, branches = n2_closed_form(a, b)
        assert min(abs(c2 - branches[0]), abs(c2 - branches[1])) <= 1e-8


def test_psi_equivariance():
    rng = np.random.default_rng(29)
    for n in (3, 4, 5):
        reg = random_regular(n, rng)
        t = random_torus_element(n, rng)
        psi_a = psi_extract(reg, steps=128).psi
        psi_at = psi_extract(torus_act(t, reg), steps=128).psi
        rhs = chi_tilde_word(t, reg) @ psi_a @ chi_word(t, reg).conj().T
        assert abs(psi_at - rhs).max() <= 1e-5


def test_chi_tilde_properties():
    rng = np.random.default_rng(30)
    reg = random_regular(3, rng)
    assert abs(chi_tilde_word(torus_identity(3), reg) - np.eye(3)).max() <= 1e-12
    t = random_torus_element(3, rng)
    word = chi_tilde_word(t, reg)
    g = gw_forward(reg.matrix).image
    lhs = gw_forward(torus_act(t, reg).matrix).image
    assert abs(lhs - word @ g @ word.conj().T).max() <= 1e-9
    # exactly diagonal input: the image is diagonal with the same sort
    # order, so the two words coincide
    diag = np.diag([0.1, 0.5, 1.2]).astype(complex)
    w1 = chi_word(t, diag)
    w2 = chi_tilde_word(t, diag)
    assert abs(w1 - w2).max() <= 1e-12
    assert abs(w1 - np.diag(np.diagonal(w1))).max() <= 1e-12


def test_psi_requires_enough_steps():
    with pytest.raises(DomainError):
        psi_extract(EXCHANGE, steps=4)
