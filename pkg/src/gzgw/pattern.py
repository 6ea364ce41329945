"""Triangular eigenvalue patterns, the interlacing cone and its interior.

A pattern holds, for each k = 1..n, the ascending eigenvalues of the k-th
principal submatrix.  The cone is cut out by the interlacing inequalities

    level[k+1][i] <= level[k][i] <= level[k+1][i+1],   1 <= i <= k,

and the interior is where all of them are strict.
"""

from dataclasses import dataclass

import numpy as np

from gzgw.errors import DomainError, SamplingFailure
from gzgw.linalg import check_hermitian, eig_hermitian

STRICTNESS_TOL = 1e-8
VIOLATION_TOL = 1e-10

INTERIOR = "interior"
BOUNDARY = "boundary"
INVALID = "invalid"


@dataclass(frozen=True)
class GZPattern:
    """Triangular array of level eigenvalues; levels[k-1] has length k."""

    n: int
    levels: tuple

    def level(self, k):
        """Level k (1-based), a read-only float array of length k."""
        return self.levels[k - 1]

    def flatten(self):
        """Level-major, ascending-index serialization order."""
        return np.concatenate(self.levels)

    def map_entrywise(self, fn):
        return GZPattern(self.n, tuple(fn(lv) for lv in self.levels))


def make_pattern(levels, ascending_tol=0.0):
    """Build a pattern from per-level sequences, validating shape and
    per-level ascending order."""
    levels = tuple(np.asarray(lv, dtype=np.float64).copy() for lv in levels)
    n = len(levels)
    for k, lv in enumerate(levels, start=1):
        if lv.ndim != 1 or lv.shape[0] != k:
            raise DomainError(f"level {k} must have length {k}, got {lv.shape}")
        if not np.all(np.isfinite(lv)):
            raise DomainError(f"level {k} has non-finite entries")
        if k > 1 and np.min(np.diff(lv)) < -ascending_tol:
            raise DomainError(f"level {k} is not ascending")
        lv.setflags(write=False)
    return GZPattern(n=n, levels=levels)


@dataclass(frozen=True)
class ConeClassification:
    kind: str
    margin: float

    @property
    def is_interior(self):
        return self.kind == INTERIOR


def classify(p, strictness_tol=STRICTNESS_TOL, violation_tol=VIOLATION_TOL):
    """Classify a pattern against the interlacing cone.

    margin is the signed minimum over all interlacing gaps; a pattern is
    interior when margin > strictness_tol and invalid when some inequality
    is violated by more than violation_tol.  A 1x1 pattern has no
    constraints and is interior with infinite margin.
    """
    margin = np.inf
    for k in range(1, p.n):
        cur = p.level(k)
        nxt = p.level(k + 1)
        margin = min(margin, float(np.min(cur - nxt[:-1])),
                     float(np.min(nxt[1:] - cur)))
    if margin < -violation_tol:
        return ConeClassification(INVALID, margin)
    if margin > strictness_tol:
        return ConeClassification(INTERIOR, margin)
    return ConeClassification(BOUNDARY, margin)


def gz_lambda(a, hermitian_tol=1e-12):
    """Eigenvalues of every principal submatrix, as a pattern.

    By Cauchy interlacing the result always lies in the cone (interior or
    boundary, never invalid).
    """
    a = check_hermitian(a, hermitian_tol)
    n = a.shape[0]
    levels = []
    for k in range(1, n + 1):
        if k == 1:
            lv = np.array([a[0, 0].real])
        else:
            lv = eig_hermitian(a[:k, :k]).values
        lv.setflags(write=False)
        levels.append(lv)
    return GZPattern(n=n, levels=tuple(levels))


def gz_mu(p, hermitian_tol=1e-12):
    """Entrywise logarithm of the pattern of a positive definite matrix."""
    lam = gz_lambda(p, hermitian_tol)
    for k in range(1, lam.n + 1):
        if lam.level(k)[0] <= 0.0:
            raise DomainError(
                f"principal {k}x{k} submatrix is not positive definite")
    return lam.map_entrywise(np.log)


def exp_pattern(p):
    """Entrywise exponential; preserves interiority by monotonicity."""
    return p.map_entrywise(np.exp)


def sample_interior(n, rng_seed, spread=1.0, min_margin=0.05, max_attempts=1000):
    """Draw an interior pattern with margin >= min_margin, deterministic in
    the seed.

    The top level is rejection-sampled until consecutive gaps admit the
    requested margin; lower levels are then drawn inside their interlacing
    intervals shrunk by min_margin, which keeps every within-level gap at
    least 2*min_margin and so keeps all lower intervals nonempty.
    """
    if min_margin <= 0.0:
        raise DomainError("min_margin must be positive")
    if n < 1:
        raise DomainError("n must be at least 1")
    rng = np.random.default_rng(rng_seed)
    if 2.0 * spread <= 4.0 * min_margin * max(1, n - 1):
        raise DomainError("spread too small for the requested margin")
    for _ in range(max_attempts):
        top = np.sort(rng.uniform(-spread, spread, size=n))
        if n > 1 and np.min(np.diff(top)) < 4.0 * min_margin:
            continue
        levels = [top]
        for k in range(n - 1, 0, -1):
            above = levels[-1]
            lo = above[:-1] + min_margin
            hi = above[1:] - min_margin
            levels.append(lo + (hi - lo) * rng.uniform(0.0, 1.0, size=k))
        levels.reverse()
        return make_pattern(levels)
    raise SamplingFailure(
        f"no admissible top level in {max_attempts} attempts "
        f"(n={n}, spread={spread}, min_margin={min_margin})")
