# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled cyclic Jacobi kernel; mirrors _jacobi_py.jacobi_eig."""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def jacobi_eig(a, int max_sweeps=100, double off_tol=1e-15):
    """See _jacobi_py.jacobi_eig; identical contract and schedule."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] m = np.array(
        a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = m.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v = np.eye(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.empty(n, dtype=np.float64)

    cdef Py_ssize_t p, q, j, sweep
    cdef double fro2 = 0.0, fro, stop, skip, off2, off
    cdef double ah, tau, t, c, s
    cdef double complex h, u, su, csu, cu, ccu, rp, rq

    for p in range(n):
        for q in range(n):
            h = m[p, q]
            fro2 += h.real * h.real + h.imag * h.imag
    fro = sqrt(fro2)
    if n == 1 or fro == 0.0:
        for p in range(n):
            d[p] = m[p, p].real
        return d, v, 0

    stop = off_tol * fro
    skip = stop / n
    for sweep in range(max_sweeps):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = m[p, q]
                off2 += h.real * h.real + h.imag * h.imag
        off = sqrt(2.0 * off2)
        if off <= stop:
            for p in range(n):
                d[p] = m[p, p].real
            return d, v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = m[p, q]
                ah = sqrt(h.real * h.real + h.imag * h.imag)
                if ah <= skip:
                    continue
                u = h / ah
                tau = (m[q, q].real - m[p, p].real) / (2.0 * ah)
                if tau >= 0.0:
                    t = -1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                su = s * u
                cu = c * u
                csu = su.conjugate()
                ccu = cu.conjugate()
                for j in range(n):
                    rp = m[p, j]
                    rq = m[q, j]
                    m[p, j] = c * rp + su * rq
                    m[q, j] = -s * rp + cu * rq
                for j in range(n):
                    rp = m[j, p]
                    rq = m[j, q]
                    m[j, p] = c * rp + csu * rq
                    m[j, q] = -s * rp + ccu * rq
                m[p, q] = 0.0
                m[q, p] = 0.0
                m[p, p] = m[p, p].real
                m[q, q] = m[q, q].real
                for j in range(n):
                    rp = v[p, j]
                    rq = v[q, j]
                    v[p, j] = c * rp + su * rq
                    v[q, j] = -s * rp + cu * rq

    off2 = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            h = m[p, q]
            off2 += h.real * h.real + h.imag * h.imag
    off = sqrt(2.0 * off2)
    for p in range(n):
        d[p] = m[p, p].real
    if off <= stop:
        return d, v, max_sweeps
    return d, v, -1
