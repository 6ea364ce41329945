"""Kernel backend selection.

The compiled Cython kernel is preferred; the pure-Python reference is used
when the extension is unavailable or when GZGW_PURE is set in the
environment.  Both expose the same ``jacobi_eig`` contract.
"""

import os

if os.environ.get("GZGW_PURE"):
    from gzgw import _jacobi_py as _impl

    BACKEND = "pure"
else:
    try:
        from gzgw import _jacobi_cy as _impl

        BACKEND = "compiled"
    except ImportError:
        from gzgw import _jacobi_py as _impl

        BACKEND = "pure"

jacobi_eig = _impl.jacobi_eig


def backend_name():
    """Name of the active kernel backend ("compiled" or "pure")."""
    return BACKEND
