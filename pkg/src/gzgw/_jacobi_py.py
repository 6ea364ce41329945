"""Cyclic Jacobi eigensolver for complex Hermitian matrices, pure Python.

Reference implementation of the hot kernel.  The compiled backend
(_jacobi_cy) follows the same rotation schedule, the same skip/stop rules
and the same update expressions, so both backends make identical
decisions on identical input (agreement is checked in the test suite).
"""

import numpy as np


def jacobi_eig(a, max_sweeps=100, off_tol=1e-15):
    """Diagonalize Hermitian ``a`` by cyclic complex Jacobi rotations.

    Returns ``(diag, frame, sweeps)`` with ``frame @ a @ frame^H`` diagonal
    up to ``off_tol * ||a||_F``.  ``diag`` is the unsorted real diagonal of
    the rotated matrix; sorting and phase conventions are applied by the
    caller.  ``sweeps == -1`` flags a blown sweep budget.
    """
    n = a.shape[0]
    m = np.array(a, dtype=np.complex128, copy=True)
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return m.real.diagonal().copy(), v, 0
    fro = float(np.sqrt((abs(m) ** 2).sum()))
    if fro == 0.0:
        return m.real.diagonal().copy(), v, 0
    stop = off_tol * fro
    skip = stop / n
    for sweep in range(max_sweeps):
        off = float(np.sqrt(2.0 * (abs(np.triu(m, 1)) ** 2).sum()))
        if off <= stop:
            return m.real.diagonal().copy(), v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = m[p, q]
                ah = abs(h)
                if ah <= skip:
                    continue
                u = h / ah
                tau = (m[q, q].real - m[p, p].real) / (2.0 * ah)
                if tau >= 0.0:
                    t = -1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                su = s * u
                # rows, then columns, of G m G^H with
                # G = [[c, s*u], [-s, c*u]] in the (p, q) plane
                rp = m[p, :].copy()
                rq = m[q, :].copy()
                m[p, :] = c * rp + su * rq
                m[q, :] = -s * rp + c * u * rq
                cp = m[:, p].copy()
                cq = m[:, q].copy()
                m[:, p] = c * cp + np.conj(su) * cq
                m[:, q] = -s * cp + c * np.conj(u) * cq
                m[p, q] = 0.0
                m[q, p] = 0.0
                m[p, p] = m[p, p].real
                m[q, q] = m[q, q].real
                rp = v[p, :].copy()
                rq = v[q, :].copy()
                v[p, :] = c * rp + su * rq
                v[q, :] = -s * rp + c * u * rq
    off = float(np.sqrt(2.0 * (abs(np.triu(m, 1)) ** 2).sum()))
    if off <= stop:
        return m.real.diagonal().copy(), v, max_sweeps
    return m.real.diagonal().copy(), v, -1
