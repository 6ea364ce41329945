"""Deterministic dense Hermitian linear algebra for small matrices.

Everything downstream hinges on reproducible eigenvector frames, so the
eigensolver is a cyclic complex Jacobi iteration (see _jacobi_py /
_jacobi_cy) with a fixed ordering and phase convention:

* eigenvalues ascending, stable sort;
* each eigenvector row is rescaled so that its entry of largest modulus
  (ties broken by lowest column index) is real and positive.

On real symmetric input the iteration never creates imaginary parts, so
frames of real matrices are exactly real orthogonal.
"""

from dataclasses import dataclass

import numpy as np

from gzgw._backend import jacobi_eig
from gzgw.errors import DomainError, NumericalFailure

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and a unitary frame with frame @ A @ frame^H
    diagonal."""

    values: np.ndarray
    frame: np.ndarray
    sweeps: int


def frobenius(a):
    return float(np.sqrt((abs(np.asarray(a)) ** 2).sum()))


def hermitian_part(a):
    a = np.asarray(a, dtype=np.complex128)
    return 0.5 * (a + a.conj().T)


def check_hermitian(a, tol=HERMITIAN_TOL):
    """Validate Hermitian symmetry (relative tolerance); returns the exactly
    symmetrized matrix."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(np.float64))):
        raise DomainError("matrix has non-finite entries")
    scale = max(1.0, float(abs(a).max()))
    defect = float(abs(a - a.conj().T).max())
    if defect > tol * scale:
        raise DomainError(f"matrix is not Hermitian: defect {defect:.3e}")
    return hermitian_part(a)

def check_unitary(u, tol=UNITARY_TOL):
    u = np.asarray(u, dtype=np.complex128)
    n = u.shape[0]
    defect = float(abs(u.conj().T @ u - np.eye(n)).max())
    if defect > tol:
        raise DomainError(f"matrix is not unitary: defect {defect:.3e}")
    return u


def check_anti_hermitian(x, tol=HERMITIAN_TOL):
    x = np.asarray(x, dtype=np.complex128)
    scale = max(1.0, float(abs(x).max()))
    defect = float(abs(x + x.conj().T).max())
    if defect > tol * scale:
        raise DomainError(f"matrix is not anti-Hermitian: defect {defect:.3e}")
    return x


def is_diagonal(a):
    """Exact test; the diagonal shortcut in the forward map must not fire on
    merely near-diagonal input."""
    a = np.asarray(a)
    return bool(np.all(a == np.diag(np.diagonal(a))))


def eig_hermitian(a, max_sweeps=100, hermitian_tol=HERMITIAN_TOL):
    """Eigendecomposition with the fixed ordering and phase conventions.

    Deterministic: identical input bits give identical output bits.
    Raises NumericalFailure if the Jacobi iteration does not converge
    within ``max_sweeps`` sweeps.
    """
    a = check_hermitian(a, hermitian_tol)
    diag, frame, sweeps = jacobi_eig(a, max_sweeps)
    if sweeps < 0:
        raise NumericalFailure(
            f"jacobi iteration did not converge in {max_sweeps} sweeps")
    order = np.argsort(diag, kind="stable")
    values = diag[order].copy()
    frame = frame[order, :].copy()
    for i in range(frame.shape[0]):
        j = int(np.argmax(np.abs(frame[i, :])))
        f = frame[i, j]
        af = abs(f)
        if af > 0.0:
            frame[i, :] *= f.conjugate() / af
    return EigenDecomposition(values=values, frame=frame, sweeps=sweeps)


def exp_hermitian(a, hermitian_tol=HERMITIAN_TOL):
    """Matrix exponential of a Hermitian matrix; the result is positive
    definite."""
    dec = eig_hermitian(a, hermitian_tol=hermitian_tol)
    u = dec.frame
    out = u.conj().T @ (np.exp(dec.values)[:, None] * u)
    return hermitian_part(out)


def log_pd(p, hermitian_tol=HERMITIAN_TOL):
    """Matrix logarithm of a positive definite matrix (inverse of
    exp_hermitian)."""
    dec = eig_hermitian(p, hermitian_tol=hermitian_tol)
    if dec.values[0] <= 0.0:
        raise DomainError(
            f"matrix is not positive definite: min eigenvalue {dec.values[0]:.3e}")
    u = dec.frame
    out = u.conj().T @ (np.log(dec.values)[:, None] * u)
    return hermitian_part(out)


def sqrtm_pd(p, hermitian_tol=HERMITIAN_TOL):
    """Principal square root of a positive definite matrix."""
    dec = eig_hermitian(p, hermitian_tol=hermitian_tol)
    if dec.values[0] <= 0.0:
        raise DomainError(
            f"matrix is not positive definite: min eigenvalue {dec.values[0]:.3e}")
    u = dec.frame
    return hermitian_part(u.conj().T @ (np.sqrt(dec.values)[:, None] * u))


def check_positive_definite(p, hermitian_tol=HERMITIAN_TOL):
    p = check_hermitian(p, hermitian_tol)
    dec = eig_hermitian(p, hermitian_tol=hermitian_tol)
    if dec.values[0] <= 0.0:
        raise DomainError(
            f"matrix is not positive definite: min eigenvalue {dec.values[0]:.3e}")
    return p


def cholesky_an(p, hermitian_tol=HERMITIAN_TOL):
    """Upper triangular X with strictly positive diagonal and X^H X = P^2.

    X is the triangular-group representative of P under the identification
    of positive definite matrices with upper triangular matrices of
    positive diagonal, i.e. (X^H X)^{1/2} = P.
    """
    p = check_hermitian(p, hermitian_tol)
    q = p @ p
    n = q.shape[0]
    # X^H X = Q with X upper triangular is the ordinary Cholesky L L^H of Q
    # with L = X^H lower triangular.
    low = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        s = q[i, i].real - float((abs(low[i, :i]) ** 2).sum())
        if s <= 0.0:
            raise DomainError(
                f"loss of positivity in triangular factorization at pivot {i}")
        low[i, i] = np.sqrt(s)
        for j in range(i + 1, n):
            low[j, i] = (q[j, i] - (low[j, :i] * low[i, :i].conj()).sum()) / low[i, i]
    return low.conj().T
