"""The torus bundle over the cone interior.

Over a strictly interlacing pattern the level tori act freely, and every
fiber contains a canonical real symmetric point (the section) from which
any fiber point is reached by a unique torus element.  Reconstruction
works level by level: with the current k x k block diagonalized by U, the
moduli of the new column in the diagonal frame and the new corner entry
are forced by the pattern,

    |b_i|^2 = - prod_r (nxt[r] - cur[i]) / prod_{j != i} (cur[j] - cur[i])
    c       = nxt[-1] + sum_i prod_{r != top} (nxt[r] - cur[i])
                              / prod_{j != i} (cur[j] - cur[i]),

while the phases of b are the free fiber coordinate.  (The sign of the c
sum follows from evaluating the characteristic polynomial at the top
eigenvalue; it is also pinned by the trace identity, which the tests
check.)  The section takes all phases equal to one, which makes every
level column positive in the diagonal frame and the matrix real.
"""

from dataclasses import dataclass

import numpy as np

from gzgw.errors import DomainError, NumericalFailure
from gzgw.linalg import eig_hermitian, hermitian_part
from gzgw.pattern import (STRICTNESS_TOL, GZPattern, classify, gz_lambda)

UNIT_MODULUS_TOL = 1e-12


@dataclass(frozen=True)
class GZTorusElement:
    """One unit-modulus k-vector per level k = 1..n-1."""

    n: int
    phases: tuple

    def level(self, k):
        return self.phases[k - 1]

    def angles(self):
        return [np.angle(lv) for lv in self.phases]

    def conj(self):
        return GZTorusElement(self.n, tuple(lv.conj() for lv in self.phases))

    def mul(self, other):
        if other.n != self.n:
            raise DomainError("torus elements have different sizes")
        return GZTorusElement(
            self.n, tuple(a * b for a, b in zip(self.phases, other.phases)))


def make_torus_element(n, phases):
    phases = tuple(np.asarray(lv, dtype=np.complex128).copy() for lv in phases)
    if len(phases) != n - 1:
        raise DomainError(f"expected {n - 1} levels, got {len(phases)}")
    for k, lv in enumerate(phases, start=1):
        if lv.shape != (k,):
            raise DomainError(f"level {k} must have length {k}")
        if np.max(np.abs(np.abs(lv) - 1.0)) > UNIT_MODULUS_TOL:
            raise DomainError(f"level {k} entries are not unit modulus")
        lv.setflags(write=False)
    return GZTorusElement(n=n, phases=phases)


def torus_identity(n):
    return make_torus_element(
        n, [np.ones(k, dtype=np.complex128) for k in range(1, n)])


def torus_from_angles(n, angles):
    return make_torus_element(
        n, [np.exp(1j * np.asarray(lv, dtype=np.float64)) for lv in angles])


def random_torus_element(n, rng, min_angle=0.0):
    """Uniform random angles; with min_angle > 0 every angle has magnitude
    at least min_angle (used by the freeness checks)."""
    levels = []
    for k in range(1, n):
        theta = rng.uniform(-np.pi, np.pi, size=k)
        if min_angle > 0.0:
            sign = np.where(theta >= 0.0, 1.0, -1.0)
            theta = sign * (min_angle + np.abs(theta) * (np.pi - min_angle) / np.pi)
        levels.append(theta)
    return torus_from_angles(n, levels)


@dataclass(frozen=True)
class RegularHermitian:
    """Hermitian matrix known to lie over the cone interior, with its
    cached pattern and interlacing margin."""

    matrix: np.ndarray
    pattern: GZPattern
    margin: float

    @property
    def n(self):
        return self.pattern.n


def as_regular(a, strictness_tol=STRICTNESS_TOL, hermitian_tol=1e-12):
    """Wrap a Hermitian matrix after checking strict interlacing."""
    pat = gz_lambda(a, hermitian_tol)
    cls = classify(pat, strictness_tol)
    if not cls.is_interior or cls.margin < strictness_tol:
        raise DomainError(
            f"matrix is not in the regular stratum (margin {cls.margin:.3e})")
    mat = hermitian_part(np.asarray(a, dtype=np.complex128))
    mat.setflags(write=False)
    return RegularHermitian(matrix=mat, pattern=pat, margin=cls.margin)


def _prod_ratio(nums, dens, log_form):
    """prod(nums)/prod(dens), optionally in log-magnitude + sign form to
    dodge overflow for larger sizes."""
    if not log_form:
        return float(np.prod(nums) / np.prod(dens))
    vals = np.concatenate([nums, 1.0 / dens])
    sign = 1.0
    neg = int((vals < 0.0).sum())
    if neg % 2:
        sign = -1.0
    return float(sign * np.exp(np.log(np.abs(vals)).sum()))


def level_step_data(cur, nxt, log_form=False):
    """Column moduli squared and corner entry forced by adjacent pattern
    levels ``cur`` (length k) and ``nxt`` (length k+1)."""
    k = cur.shape[0]
    bsq = np.empty(k)
    csum = 0.0
    for i in range(k):
        dens = np.delete(cur, i) - cur[i]
        bsq[i] = -_prod_ratio(nxt - cur[i], dens, log_form)
        csum += _prod_ratio(nxt[:-1] - cur[i], dens, log_form)
    c = float(nxt[-1] + csum)
    return bsq, c


def section(p, strictness_tol=STRICTNESS_TOL):
    """The canonical real symmetric fiber point.

    Built level by level with every column positive in the diagonal frame
    (phases equal to one).  Raises DomainError if the pattern is not
    interior with margin at least strictness_tol, and NumericalFailure if
    a column modulus squared comes out negative beyond roundoff (margin
    too small for the formulas).
    """
    cls = classify(p, strictness_tol)
    if not cls.is_interior or cls.margin < strictness_tol:
        raise DomainError(
            f"pattern is not strictly interior (margin {cls.margin:.3e})")
    n = p.n
    log_form = n > 6
    top = p.level(n)
    neg_tol = 1e-12 * max(1.0, float(top[-1] - top[0]) ** 2)
    a = np.array([[p.level(1)[0]]], dtype=np.complex128)
    for k in range(1, n):
        cur = p.level(k)
        nxt = p.level(k + 1)
        bsq, c = level_step_data(cur, nxt, log_form)
        if np.min(bsq) < -neg_tol:
            raise NumericalFailure(
                f"negative column modulus at level {k}: {np.min(bsq):.3e}")
        bt = np.sqrt(np.clip(bsq, 0.0, None)).astype(np.complex128)
        u = eig_hermitian(a).frame
        # Re-gauge each eigenvector row to make its last entry real
        # positive.  On strictly interlacing patterns the last entry never
        # vanishes, so this gauge (unlike the solver's argmax convention)
        # is continuous over the cone interior, and with it the section
        # varies continuously with the pattern.
        last = u[:, k - 1]
        mag = np.abs(last)
        if np.min(mag) <= 0.0:
            raise NumericalFailure(
                f"vanishing eigenvector tail at level {k}")
        u = (last.conj() / mag)[:, None] * u
        b = u.conj().T @ bt
        grown = np.zeros((k + 1, k + 1), dtype=np.complex128)
        grown[:k, :k] = a
        grown[:k, k] = b
        grown[k, :k] = b.conj()
        grown[k, k] = c
        a = grown
    a.setflags(write=False)
    return RegularHermitian(matrix=a, pattern=p, margin=cls.margin)


def reconstruct(p, t, strictness_tol=STRICTNESS_TOL):
    """The fiber point over pattern ``p`` with torus coordinate ``t``.

    The coordinate is defined relative to the canonical section, so this
    is the torus action applied to the section point; by construction
    recover_torus inverts it.  (Stamping the phases directly into the
    inductive build would tie the coordinate to eigenvector phase
    conventions; acting on the section does not.)
    """
    if t.n != p.n:
        raise DomainError("pattern and torus element sizes differ")
    base = section(p, strictness_tol)
    if all(np.all(lv == 1.0) for lv in t.phases):
        return base
    return torus_act(t, base)


def recover_torus(a, floor_factor=0.5):
    """The unique torus element carrying the section of a's pattern to a.

    Transports the section level by level: with U diagonalizing the shared
    k x k block, the ratio of the two column segments in the diagonal frame
    is the level-k phase vector.  The ratio is frame-convention free (a
    phase rescaling of U cancels between numerator and denominator).
    """
    if not isinstance(a, RegularHermitian):
        a = as_regular(a)
    n = a.n
    log_form = n > 6
    amat = a.matrix
    bmat = np.array(section(a.pattern, strictness_tol=0.5 * a.margin).matrix,
                    copy=True)
    phases = []
    for k in range(1, n):
        bsq, _ = level_step_data(a.pattern.level(k), a.pattern.level(k + 1),
                                 log_form)
        floor = floor_factor * np.sqrt(np.clip(bsq, 0.0, None))
        u = eig_hermitian(bmat[:k, :k]).frame
        bt_a = u @ amat[:k, k]
        bt_b = u @ bmat[:k, k]
        if np.any(np.abs(bt_b) < floor) or np.any(np.abs(bt_a) < floor):
            raise NumericalFailure(
                f"column segment below the margin floor at level {k}")
        ratio = bt_a / bt_b
        ratio /= np.abs(ratio)
        phases.append(ratio)
        w = np.eye(n, dtype=np.complex128)
        w[:k, :k] = u.conj().T @ (ratio[:, None] * u)
        bmat = w @ bmat @ w.conj().T
    return make_torus_element(n, phases)


def chi_word(t, a):
    """Composite conjugation word: the level-k factor is U_k^{-1} t_k U_k
    with U_k a diagonalizer of the k-th principal submatrix, embedded in
    the full size.  Independent of frame phase choices."""
    mat = a.matrix if isinstance(a, RegularHermitian) else np.asarray(a)
    n = mat.shape[0]
    if t.n != n:
        raise DomainError("torus element and matrix sizes differ")
    word = np.eye(n, dtype=np.complex128)
    for k in range(1, n):
        if k == 1:
            u = np.ones((1, 1), dtype=np.complex128)
        else:
            u = eig_hermitian(mat[:k, :k]).frame
        factor = np.eye(n, dtype=np.complex128)
        factor[:k, :k] = u.conj().T @ (t.level(k)[:, None] * u)
        word = word @ factor
    return word


def torus_act(t, a):
    """Action of the torus element on a regular matrix by conjugation with
    the composite word.  Preserves the pattern."""
    if not isinstance(a, RegularHermitian):
        a = as_regular(a)
    word = chi_word(t, a)
    out = hermitian_part(word @ a.matrix @ word.conj().T)
    out.setflags(write=False)
    return RegularHermitian(matrix=out, pattern=a.pattern, margin=a.margin)


def random_regular(n, rng, spread=1.0, min_margin=0.05, real=False):
    """Seeded random point of the regular stratum, built from a random
    interior pattern and a random fiber coordinate."""
    from gzgw.pattern import sample_interior

    pat = sample_interior(n, rng, spread=spread, min_margin=min_margin)
    if real:
        t = make_torus_element(
            n, [np.where(rng.uniform(size=k) < 0.5, -1.0, 1.0).astype(np.complex128)
                for k in range(1, n)])
    else:
        t = random_torus_element(n, rng)
    return reconstruct(pat, t)
