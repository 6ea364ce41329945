"""Gelfand-Zeitlin action-angle data and the canonical map onto positive
definite matrices, with finite-difference Poisson verification.

The hot eigensolver kernel is compiled (Cython) when available, with a
pure-Python fallback selected at import time; set GZGW_PURE=1 to force the
fallback.  See gzgw.backend_name().
"""

from gzgw._backend import backend_name
from gzgw.errors import (BoundaryStratumError, ContinuationFailure,
                         ConventionError, DomainError, GaugeDomainError,
                         GzgwError, NumericalFailure, SamplingFailure,
                         SchemaError)
from gzgw.fiber import (GZTorusElement, RegularHermitian, as_regular,
                        chi_word, make_torus_element, random_regular,
                        random_torus_element, reconstruct, recover_torus,
                        section, torus_act, torus_from_angles, torus_identity)
from gzgw.gwmap import (GWResult, TwistResult, chi_tilde_word, gw_forward,
                        gw_inverse, n2_closed_form, psi_extract)
from gzgw.linalg import (EigenDecomposition, cholesky_an, eig_hermitian,
                         exp_hermitian, log_pd, sqrtm_pd)
from gzgw.pattern import (BOUNDARY, INTERIOR, INVALID, ConeClassification,
                          GZPattern, classify, exp_pattern, gz_lambda, gz_mu,
                          make_pattern, sample_interior)
from gzgw.poisson import (IwasawaSplit, chart_gamma, dressing_field,
                          dual_pl_bivector, gauge_transform,
                          gz_involution_residual, gz_involution_residual_dual,
                          iwasawa_split, kirillov_bivector, moment_flow_check,
                          pushforward_residual)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
