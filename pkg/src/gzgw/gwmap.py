"""The canonical diffeomorphism from Hermitian matrices onto positive
definite ones, its inverse, and the associated unitary twist.

On the regular stratum the map is defined by transport through the
canonical section: read off the pattern and the fiber coordinate of the
input, exponentiate the pattern, rebuild at the section of the
exponentiated pattern and re-apply the same fiber coordinate.  This makes
the intertwining and equivariance properties structural rather than
numerical accidents, and it is free of eigenvector phase conventions.

Diagonal matrices (always on the cone boundary) get the entrywise
exponential shortcut; all other boundary points are rejected.

The twist psi is the special-unitary field with

    exp(psi A psi^{-1}) = image(A),    psi(u A) -> identity as u -> 0,

computed by continuation along the ray u in (0, 1]: the image frames are
phase-aligned step to step, which converges to the unique continuous
branch with the ray normalization.
"""

from dataclasses import dataclass

import numpy as np

from gzgw.errors import BoundaryStratumError, ContinuationFailure, DomainError
from gzgw.fiber import (GZTorusElement, RegularHermitian, as_regular, chi_word,
                        recover_torus, section, torus_act)
from gzgw.linalg import (check_hermitian, eig_hermitian, exp_hermitian,
                         hermitian_part, is_diagonal, log_pd)
from gzgw.pattern import (STRICTNESS_TOL, GZPattern, classify, exp_pattern,
                          gz_lambda, gz_mu)



@dataclass(frozen=True)
class GWResult:
    """Image point together with the shared action-angle data.  torus is
    None for the diagonal shortcut (no fiber coordinate on the boundary)."""

    image: np.ndarray
    pattern: GZPattern
    torus: GZTorusElement | None


@dataclass(frozen=True)
class TwistResult:
    psi: np.ndarray
    det_defect: float
    continuation_steps: int
    relation_residual: float


def gw_forward(a, strictness_tol=STRICTNESS_TOL, hermitian_tol=1e-12):
    """Forward map.  Requires a regular input (or an exactly diagonal one,
    which maps to the entrywise exponential)."""
    a = check_hermitian(a, hermitian_tol)
    if is_diagonal(a):
        image = np.diag(np.exp(np.diagonal(a).real)).astype(np.complex128)
        return GWResult(image=image, pattern=gz_lambda(a), torus=None)
    pat = gz_lambda(a)
    cls = classify(pat, strictness_tol)
    if not cls.is_interior or cls.margin < strictness_tol:
        raise BoundaryStratumError(
            f"input is on or too close to the cone boundary "
            f"(margin {cls.margin:.3e}, need {strictness_tol:.3e})",
            margin=cls.margin)
    reg = RegularHermitian(matrix=a, pattern=pat, margin=cls.margin)
    t = recover_torus(reg)
    target = exp_pattern(pat)
    # The stratum decision was made once above; downstream guards only
    # against genuine degeneracy of the exponentiated pattern.
    target_cls = classify(target, strictness_tol=0.0)
    base = section(target, strictness_tol=0.5 * target_cls.margin)
    image = torus_act(t, base)
    return GWResult(image=hermitian_part(image.matrix), pattern=pat, torus=t)


def gw_inverse(p, strictness_tol=STRICTNESS_TOL, hermitian_tol=1e-12):
    """Inverse map: the same transport run backwards."""
    p = check_hermitian(p, hermitian_tol)
    if is_diagonal(p):
        d = np.diagonal(p).real
        if np.min(d) <= 0.0:
            raise DomainError("diagonal input is not positive definite")
        return np.diag(np.log(d)).astype(np.complex128)
    mu = gz_mu(p, hermitian_tol)
    cls = classify(mu, strictness_tol)
    if not cls.is_interior or cls.margin < strictness_tol:
        raise BoundaryStratumError(
            f"input is on or too close to the cone boundary "
            f"(log-pattern margin {cls.margin:.3e}, need {strictness_tol:.3e})",
            margin=cls.margin)
    lam = exp_pattern(mu)
    lam_cls = classify(lam, strictness_tol=0.0)
    reg = RegularHermitian(matrix=p, pattern=lam, margin=lam_cls.margin)
    t = recover_torus(reg)
    base = section(mu, strictness_tol=0.5 * cls.margin)
    return hermitian_part(torus_act(t, base).matrix)


def chi_tilde_word(t, a, strictness_tol=STRICTNESS_TOL):
    """Conjugation word of the torus element on the image side: level
    frames are diagonalizers of the principal blocks of the image."""
    mat = a.matrix if isinstance(a, RegularHermitian) else np.asarray(
        a, dtype=np.complex128)
    image = gw_forward(mat, strictness_tol).image
    return chi_word(t, image)


def _section_ray_twist(pat, steps, eps, margin):
    """Ray continuation of the twist at the canonical section point.

    Along the section ray everything is real: the image of u*S is the
    section of the scaled-and-exponentiated pattern, its frames are real
    orthogonal, and the step-to-step alignment reduces to exact sign
    matching.  The walk therefore tracks the unique continuous branch with
    the ray normalization (twist -> identity as u -> 0) with no phase
    drift; steps only need to be fine enough to keep consecutive frames
    recognizably close, and the grid is bisected adaptively where they
    rotate fast.

    Returns (psi, image_frame_at_1, evaluation_count).
    """
    base = section(pat, strictness_tol=0.45 * margin)
    s_frame = eig_hermitian(base.matrix).frame
    grid = eps ** (1.0 - np.arange(steps) / (steps - 1.0))
    state = {"evals": 0, "frame": None}
    max_evals = 64 * steps

    def frame_at(u):
        img = section(exp_pattern(pat.map_entrywise(lambda lv: u * lv)),
                      strictness_tol=0.0)
        state["evals"] += 1
        return eig_hermitian(img.matrix).frame

    def advance(ref, u_prev, u_next, depth):
        w = frame_at(u_next)
        overlap = np.einsum("ij,ij->i", w, ref.conj())
        mag = np.abs(overlap)
        if np.min(mag) >= 0.999 or depth >= 24:
            if np.min(mag) < 0.5:
                raise ContinuationFailure(
                    f"frame alignment overlap {np.min(mag):.3f} < 0.5 at "
                    f"u={u_next:.4e}; retry with more than {steps} steps")
            return (overlap.conj() / mag)[:, None] * w
        if state["evals"] > max_evals:
            raise ContinuationFailure(
                f"adaptive refinement exceeded {max_evals} evaluations; "
                f"retry with more than {steps} steps")
        mid = np.sqrt(u_prev * u_next)
        ref = advance(ref, u_prev, mid, depth + 1)
        return advance(ref, mid, u_next, depth + 1)

    ref = advance(s_frame, grid[0], grid[0], 24)
    for j in range(1, steps):
        ref = advance(ref, grid[j - 1], grid[j], 0)
    return ref.conj().T @ s_frame, state["evals"]


def psi_extract(a, steps=64, tol=1e-8, eps=1e-3, strictness_tol=STRICTNESS_TOL):
    """Extract the twist at a regular point.

    The continuation itself runs along the ray through the canonical
    section of the input's pattern, where the aligned branch is exactly
    the continuous one normalized to the identity at the origin.  The
    value at the input point is then the unique torus-equivariant
    extension,

        psi(t . S) = word~(t, S) psi(S) word(t, S)^{-1},

    with word / word~ the conjugation words of the input's fiber
    coordinate on the source and image sides.  (Running the alignment walk
    directly on a non-real ray leaves a centralizer phase defect that
    breaks this equivariance at about 1e-2; on the real section ray the
    two constructions agree exactly.)  The result is projected into the
    special unitary group by the n-th root of its determinant closest to
    one.
    """
    if steps < 8:
        raise DomainError("ray continuation needs at least 8 steps")
    if not isinstance(a, RegularHermitian):
        a = as_regular(a, strictness_tol)
    n = a.n
    psi_s, evals = _section_ray_twist(a.pattern, steps, eps, a.margin)
    t = recover_torus(a)
    base = section(a.pattern, strictness_tol=0.45 * a.margin)
    target = exp_pattern(a.pattern)
    target_cls = classify(target, strictness_tol=0.0)
    image_base = section(target, strictness_tol=0.5 * target_cls.margin)
    word = chi_word(t, base)
    word_tilde = chi_word(t, image_base)
    psi = word_tilde @ psi_s @ word.conj().T
    det = complex(np.linalg.det(psi))
    psi = psi * np.exp(-1j * np.angle(det) / n)
    det_defect = float(abs(np.linalg.det(psi) - 1.0))
    image = hermitian_part(word_tilde @ image_base.matrix @ word_tilde.conj().T)
    relation = exp_hermitian(psi @ a.matrix @ psi.conj().T)
    residual = float(abs(relation - image).max())
    if residual > tol:
        raise ContinuationFailure(
            f"twist relation residual {residual:.3e} exceeds {tol:.1e}; "
            f"retry with more than {steps} steps")
    return TwistResult(psi=psi, det_defect=det_defect,
                       continuation_steps=evals,
                       relation_residual=residual)


def n2_closed_form(a, b):
    """Hand closed form for trace-free real symmetric 2x2 input
    [[a, b], [b, -a]].

    Returns (image, cos_two_theta_pair): the image matrix has top-left
    entry e^a, eigenvalues e^{+-r} with r = sqrt(a^2 + b^2), and
    off-diagonal sign equal to the sign of b; the pair holds both branches
    of the cosine of twice the twist rotation angle.
    """
    if a == 0.0 and b == 0.0:
        raise DomainError("closed form needs (a, b) != (0, 0)")
    r = float(np.hypot(a, b))
    ea = float(np.exp(a))
    rad = 2.0 * ea * np.cosh(r) - ea * ea - 1.0
    bt = float(np.sign(b)) * float(np.sqrt(max(rad, 0.0)))
    ct = 2.0 * np.cosh(r) - ea
    image = np.array([[ea, bt], [bt, ct]], dtype=np.complex128)
    # The rotation angle comes from matching the top-left entry of the
    # image: the twisted direction has cosine q against the original, and
    # the double angle splits as cos(alpha -+ alpha') with cos(alpha') = q:
    #   cos(2 theta) = (a/r) q -+ (b/r) sqrt(1 - q^2).
    q = (ea - np.cosh(r)) / np.sinh(r)
    root = float(np.sqrt(max(1.0 - q * q, 0.0)))
    base = a / r * q
    off = b / r * root
    return image, (base + off, base - off)
