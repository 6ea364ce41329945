"""Numerical Poisson geometry in fixed real charts.

Hermitian chart (dimension n^2): the n diagonal entries, then the strict
upper entries row-major as (Re, Im) pairs.  Coordinates pair with a dual
basis of anti-Hermitian matrices through <A, xi> = 2 Im tr(A xi).

Triangular-group chart (dimension n^2): log of the diagonal (so the chart
domain is all of R^{n^2}), then the strict upper entries row-major as
(Re, Im) pairs.

The linear bivector is the Lie-Poisson structure assembled from the dual
basis; its global sign is the one calibrated so that minus the bivector
contraction with a level-eigenvalue differential generates the matching
torus flow (see moment_flow_check; the unit-angle flow carries a factor
of two relative to the eigenvalue Hamiltonians under this pairing).  The
bivector on the triangular group is assembled pointwise from the dressing
vector fields, which the identity moment map generates.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from gzgw.errors import (ConventionError, DomainError, GaugeDomainError,
                         NumericalFailure)
from gzgw.fiber import RegularHermitian, as_regular, torus_act
from gzgw.gwmap import gw_forward
from gzgw.linalg import check_anti_hermitian, cholesky_an, sqrtm_pd
from gzgw.pattern import STRICTNESS_TOL, gz_lambda, gz_mu

# Calibrated once against the torus flows and frozen: the Lie-Poisson sign,
# and the angular speed of the unit flow relative to -pi#(d lambda).
BRACKET_SIGN = -1.0
MOMENT_SPEED = 2.0

ANTISYMMETRY_TOL = 1e-8


def pair_herm(a, xi):
    """<a, xi> = 2 Im tr(a xi)."""
    return 2.0 * float(np.sum(a * xi.T).imag)


def herm_chart_dim(n):
    return n * n


def herm_to_chart(a):
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    x = np.empty(n * n)
    x[:n] = np.diagonal(a).real
    pos = n
    for i in range(n):
        for j in range(i + 1, n):
            x[pos] = a[i, j].real
            x[pos + 1] = a[i, j].imag
            pos += 2
    return x


def chart_to_herm(x, n):
    a = np.zeros((n, n), dtype=np.complex128)
    a[np.arange(n), np.arange(n)] = x[:n]
    pos = n
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = x[pos] + 1j * x[pos + 1]
            a[j, i] = x[pos] - 1j * x[pos + 1]
            pos += 2
    return a


@lru_cache(maxsize=None)
def _herm_bases(n):
    """Coordinate basis E_a of Hermitian matrices and the dual basis xi_a
    in the anti-Hermitian algebra, with <E_b, xi_a> = delta_ab."""
    es = []
    xis = []
    for i in range(n):
        e = np.zeros((n, n), dtype=np.complex128)
        e[i, i] = 1.0
        es.append(e)
        xi = np.zeros((n, n), dtype=np.complex128)
        xi[i, i] = 0.5j
        xis.append(xi)
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), dtype=np.complex128)
            e[i, j] = 1.0
            e[j, i] = 1.0
            es.append(e)
            xi = np.zeros((n, n), dtype=np.complex128)
            xi[i, j] = 0.25j
            xi[j, i] = 0.25j
            xis.append(xi)
            e = np.zeros((n, n), dtype=np.complex128)
            e[i, j] = 1.0j
            e[j, i] = -1.0j
            es.append(e)
            xi = np.zeros((n, n), dtype=np.complex128)
            xi[i, j] = -0.25
            xi[j, i] = 0.25
            xis.append(xi)
    return tuple(es), tuple(xis)


def herm_basis(n):
    return _herm_bases(n)[0]


def u_dual_basis(n):
    return _herm_bases(n)[1]


@lru_cache(maxsize=None)
def _kirillov_tensor(n):
    """T[a, b, c] = <E_c, [xi_a, xi_b]>; the bivector is linear in the
    chart coordinates through this tensor."""
    es, xis = _herm_bases(n)
    d = n * n
    t = np.zeros((d, d, d))
    for a in range(d):
        for b in range(a + 1, d):
            comm = xis[a] @ xis[b] - xis[b] @ xis[a]
            for c in range(d):
                val = pair_herm(es[c], comm)
                t[a, b, c] = val
                t[b, a, c] = -val
    return t


def kirillov_bivector(a, sign=BRACKET_SIGN):
    """Lie-Poisson bivector at a Hermitian point, in chart coordinates.

    Linear in the point and exactly antisymmetric by construction.
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    x = herm_to_chart(a)
    return sign * np.einsum("abc,c->ab", _kirillov_tensor(n), x)


@dataclass(frozen=True)
class IwasawaSplit:
    """Unique decomposition M = an_part + k_part into upper triangular with
    real diagonal plus anti-Hermitian."""

    an_part: np.ndarray
    k_part: np.ndarray


def iwasawa_split(m):
    m = np.asarray(m, dtype=np.complex128)
    low = np.tril(m, -1)
    k = low - low.conj().T + 1j * np.diag(np.diagonal(m).imag)
    return IwasawaSplit(an_part=m - k, k_part=k)


# --- triangular-group chart -------------------------------------------------

def check_an(x, tol=1e-10):
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    if float(abs(np.tril(x, -1)).max() if n > 1 else 0.0) > tol:
        raise DomainError("matrix is not upper triangular")
    d = np.diagonal(x)
    if float(abs(d.imag).max()) > tol or np.min(d.real) <= 0.0:
        raise DomainError("diagonal is not real strictly positive")
    return x


def an_to_chart(x):
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    y = np.empty(n * n)
    y[:n] = np.log(np.diagonal(x).real)
    pos = n
    for i in range(n):
        for j in range(i + 1, n):
            y[pos] = x[i, j].real
            y[pos + 1] = x[i, j].imag
            pos += 2
    return y


def chart_to_an(y, n):
    x = np.zeros((n, n), dtype=np.complex128)
    x[np.arange(n), np.arange(n)] = np.exp(y[:n])
    pos = n
    for i in range(n):
        for j in range(i + 1, n):
            x[i, j] = y[pos] + 1j * y[pos + 1]
            pos += 2
    return x


def _an_tangent_to_chart(x, dx):
    """Chart components of a matrix tangent dx at the triangular point x."""
    n = x.shape[0]
    v = np.empty(n * n)
    v[:n] = np.diagonal(dx).real / np.diagonal(x).real
    pos = n
    for i in range(n):
        for j in range(i + 1, n):
            v[pos] = dx[i, j].real
            v[pos + 1] = dx[i, j].imag
            pos += 2
    return v


def _an_tangent_basis(x):
    """Matrix tangents of the chart coordinate directions at x."""
    n = x.shape[0]
    mats = []
    for i in range(n):
        m = np.zeros((n, n), dtype=np.complex128)
        m[i, i] = x[i, i].real
        mats.append(m)
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=np.complex128)
            m[i, j] = 1.0
            mats.append(m)
            m = np.zeros((n, n), dtype=np.complex128)
            m[i, j] = 1.0j
            mats.append(m)
    return mats


def dressing_field(x, xi, as_matrix=False):
    """Generating vector field of the unitary algebra element xi at the
    triangular point x:  dx = x . an_part(x^{-1} xi x).

    Infinitesimal version of factoring exp(s xi) x back into the
    triangular group times a unitary; the identity is a fixed point.
    """
    x = check_an(x)
    xi = check_anti_hermitian(xi)
    m = np.linalg.solve(x, xi @ x)
    dx = x @ iwasawa_split(m).an_part
    if as_matrix:
        return dx
    return _an_tangent_to_chart(x, dx)


def _angle_delta(t_plus, t_minus):
    """Per-level angle differences of two torus elements, safe across the
    branch cut."""
    return np.concatenate(
        [np.angle(p * m.conj()) for p, m in zip(t_plus.phases, t_minus.phases)])


def _action_angle_jacobian(point_to_pattern_and_torus, x0, fd_step):
    """Central-difference Jacobian of the action-angle chart (level
    eigenvalues, then fiber angles) with respect to the coordinates x0."""
    d = x0.shape[0]
    pat0, _ = point_to_pattern_and_torus(x0)
    nfun = pat0.flatten().shape[0]
    jac = np.empty((d, d))
    for c in range(d):
        dx = np.zeros(d)
        dx[c] = fd_step
        pat_p, tor_p = point_to_pattern_and_torus(x0 + dx)
        pat_m, tor_m = point_to_pattern_and_torus(x0 - dx)
        jac[:nfun, c] = (pat_p.flatten() - pat_m.flatten()) / (2.0 * fd_step)
        jac[nfun:, c] = _angle_delta(tor_p, tor_m) / (2.0 * fd_step)
    return jac


def _regular_no_threshold(a):
    """Wrap a Hermitian matrix whose pattern must merely be interior (no
    margin threshold; regularity decisions were made by the caller)."""
    from gzgw.pattern import classify

    pat = gz_lambda(a)
    cls = classify(pat, strictness_tol=0.0)
    if not cls.is_interior:
        raise DomainError(
            f"point is not in the regular stratum (margin {cls.margin:.3e})")
    return RegularHermitian(matrix=a, pattern=pat, margin=cls.margin)


def _image_data(x):
    """Positive square root of x^H x with its pattern data."""
    return _regular_no_threshold(sqrtm_pd(x.conj().T @ x))


def dual_pl_bivector(x, fd_step=1e-6, antisymmetry_tol=ANTISYMMETRY_TOL,
                     return_defect=False):
    """Bivector of the multiplicative integrable system at the triangular
    point x, in chart coordinates.

    Characterized intrinsically on the image side: in the action-angle
    chart built from the log-eigenvalue levels of (x^H x)^{1/2} and the
    fiber coordinate relative to the canonical section, the bivector has
    the same coefficient matrix as the linear structure at the matching
    source point (log-eigenvalues and angles equal).  That is exactly the
    structure for which the level functions Poisson-commute and generate
    the level torus flows at the calibrated speed, mirroring the linear
    side.  Scalar multiples of the identity sit on zero-dimensional
    leaves and return the zero bivector.
    """
    x = check_an(x)
    n = x.shape[0]
    d = n * n
    if n == 1 or np.all(x == x[0, 0] * np.eye(n)):
        pi = np.zeros((d, d))
        return (pi, 0.0) if return_defect else pi
    from gzgw.fiber import recover_torus
    from gzgw.gwmap import gw_inverse

    reg_p = _image_data(x)
    source = gw_inverse(reg_p.matrix, strictness_tol=0.0)

    def image_chart(y):
        reg = _image_data(chart_to_an(y, n))
        return reg.pattern.map_entrywise(np.log), recover_torus(reg)

    def source_chart(z):
        a = chart_to_herm(z, n)
        reg = _regular_no_threshold(a)
        return reg.pattern, recover_torus(reg)

    w_img = _action_angle_jacobian(image_chart, an_to_chart(x), fd_step)
    w_src = _action_angle_jacobian(source_chart, herm_to_chart(source), fd_step)
    pi_aa = w_src @ kirillov_bivector(source) @ w_src.T
    try:
        w_inv = np.linalg.inv(w_img)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(
            "action-angle chart is singular at this point") from exc
    pi = w_inv @ pi_aa @ w_inv.T
    defect = float(abs(pi + pi.T).max()) / max(1.0, float(abs(pi).max()))
    if defect > antisymmetry_tol:
        raise ConventionError(
            f"dual bivector antisymmetry defect {defect:.3e} exceeds "
            f"{antisymmetry_tol:.1e}")
    pi = 0.5 * (pi - pi.T)
    if return_defect:
        return pi, defect
    return pi


def chart_gamma(a, strictness_tol=STRICTNESS_TOL):
    """Chart coordinates of the triangular representative of the forward
    image of a regular Hermitian point."""
    image = gw_forward(a, strictness_tol).image
    return an_to_chart(cholesky_an(image))


def numerical_rank(mat, threshold=1e-8):
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int((s > threshold * s[0]).sum())


def pushforward_residual(a, fd_step=1e-5, strictness_tol=STRICTNESS_TOL):
    """Max entrywise deviation of the pushed-forward linear bivector from
    the triangular-group bivector at the image, normalized by the latter.

    The Jacobian of chart_gamma is taken by central differences; the
    deviation vanishes to discretization order when the forward map is a
    Poisson diffeomorphism.
    """
    reg = as_regular(a, strictness_tol)
    if reg.margin < 10.0 * fd_step:
        raise DomainError(
            f"margin {reg.margin:.3e} too small for step {fd_step:.1e}")
    n = reg.n
    d = n * n
    x0 = herm_to_chart(reg.matrix)
    jac = np.empty((d, d))
    for c in range(d):
        dx = np.zeros(d)
        dx[c] = fd_step
        plus = chart_gamma(chart_to_herm(x0 + dx, n), strictness_tol)
        minus = chart_gamma(chart_to_herm(x0 - dx, n), strictness_tol)
        jac[:, c] = (plus - minus) / (2.0 * fd_step)
    pi_src = kirillov_bivector(reg.matrix)
    pi_img = dual_pl_bivector(chart_to_an(chart_gamma(reg.matrix, strictness_tol), n))
    dev = jac @ pi_src @ jac.T - pi_img
    denom = max(float(abs(pi_img).max()), 1e-300)
    return float(abs(dev).max()) / denom


def _pattern_gradients(point_to_values, x0, fd_step):
    nfun = point_to_values(x0).shape[0]
    d = x0.shape[0]
    grads = np.empty((nfun, d))
    for c in range(d):
        dx = np.zeros(d)
        dx[c] = fd_step
        grads[:, c] = (point_to_values(x0 + dx) - point_to_values(x0 - dx)) / (2.0 * fd_step)
    return grads


def gz_involution_residual(a, fd_step=1e-5, strictness_tol=STRICTNESS_TOL):
    """Max pairwise bracket of all level-eigenvalue functions against the
    linear bivector; the system is involutive, so this is discretization
    noise."""
    reg = as_regular(a, strictness_tol)
    n = reg.n

    def values(x):
        return gz_lambda(chart_to_herm(x, n)).flatten()

    grads = _pattern_gradients(values, herm_to_chart(reg.matrix), fd_step)
    brackets = grads @ kirillov_bivector(reg.matrix) @ grads.T
    return float(abs(brackets).max())


def gz_involution_residual_dual(x, fd_step=1e-5):
    """Same check on the triangular-group side, with the log-eigenvalue
    functions of the positive square root of x^H x."""
    x = check_an(x)
    n = x.shape[0]

    def values(y):
        xmat = chart_to_an(y, n)
        return gz_mu(sqrtm_pd(xmat.conj().T @ xmat)).flatten()

    grads = _pattern_gradients(values, an_to_chart(x), fd_step)
    brackets = grads @ dual_pl_bivector(x) @ grads.T
    return float(abs(brackets).max())


def _single_level_torus(n, k, i, angle):
    levels = [np.zeros(m) for m in range(1, n)]
    levels[k - 1][i - 1] = angle
    from gzgw.fiber import torus_from_angles

    return torus_from_angles(n, levels)


def moment_flow_check(a, k, i, fd_step=1e-5, strictness_tol=STRICTNESS_TOL):
    """Relative deviation between the Hamiltonian field of a level
    eigenvalue and the matching torus generator.

    The flow of the level-k slot-i angle is compared against
    -MOMENT_SPEED * pi#(d lambda_i^{(k)}); with the frozen calibration the
    two agree to discretization order.  Only levels k = 1..n-1 carry the
    action (the top level generates plain conjugation).
    """
    reg = as_regular(a, strictness_tol)
    n = reg.n
    if not 1 <= k <= n - 1:
        raise DomainError(f"level k must be in 1..{n - 1}, got {k}")
    if not 1 <= i <= k:
        raise DomainError(f"index i must be in 1..{k}, got {i}")
    x0 = herm_to_chart(reg.matrix)
    flat_index = sum(range(1, k)) + (i - 1)

    def values(x):
        return gz_lambda(chart_to_herm(x, n)).flatten()

    grads = _pattern_gradients(values, x0, fd_step)
    model = -MOMENT_SPEED * kirillov_bivector(reg.matrix) @ grads[flat_index]
    plus = herm_to_chart(torus_act(_single_level_torus(n, k, i, fd_step), reg).matrix)
    minus = herm_to_chart(torus_act(_single_level_torus(n, k, i, -fd_step), reg).matrix)
    flow = (plus - minus) / (2.0 * fd_step)
    denom = max(float(abs(flow).max()), 1e-300)
    return float(abs(model - flow).max()) / denom


def gauge_transform(pi, sigma, cond_limit=1e12):
    """Gauge transformation pi (1 + sigma pi)^{-1} of a bivector by a
    closed 2-form, both as antisymmetric coordinate matrices.  Leaves the
    rank (symplectic leaves) unchanged."""
    pi = np.asarray(pi, dtype=np.float64)
    sigma = np.asarray(sigma, dtype=np.float64)
    gate = np.eye(pi.shape[0]) + sigma @ pi
    if np.linalg.cond(gate) > cond_limit:
        raise GaugeDomainError("1 + sigma.pi is numerically singular")
    out = pi @ np.linalg.inv(gate)
    return 0.5 * (out - out.T)


def dual_jacobiator(x, fd_step=1e-5):
    """Max cyclic-sum residual of the Jacobi identity for the
    triangular-group bivector, by central differences of its coefficients."""
    x = check_an(x)
    n = x.shape[0]
    d = n * n
    y0 = an_to_chart(x)
    dpi = np.empty((d, d, d))
    for l in range(d):
        dy = np.zeros(d)
        dy[l] = fd_step
        plus = dual_pl_bivector(chart_to_an(y0 + dy, n))
        minus = dual_pl_bivector(chart_to_an(y0 - dy, n))
        dpi[l] = (plus - minus) / (2.0 * fd_step)
    pi = dual_pl_bivector(x)
    jac = np.einsum("al,lbc->abc", pi, dpi)
    cyc = jac + np.transpose(jac, (1, 2, 0)) + np.transpose(jac, (2, 0, 1))
    return float(abs(cyc).max())
