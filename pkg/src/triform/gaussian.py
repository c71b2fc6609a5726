"""Gaussian-measure oracles for the reduction chain behind the closed form.

The measure is dG = pi^(-n/2) exp(-Q) dl with Q the squared Euclidean norm,
i.e. each coordinate is normal with variance 1/2 (this normalization makes
<1, G> = 1).  Monte Carlo estimates use a counter-based Philox stream split
into fixed-size chunks, each chunk owning a disjoint counter range, so results
are bit-identical for a fixed seed regardless of how chunks are scheduled.

Closed-form moments verified here:

    <r^s, G>      = Gamma((s+n)/2) / Gamma(n/2)          (radius moment)
    <|h|^s, G>    = ||h||^s Gamma((s+1)/2) / Gamma(1/2)  (linear functional)
    <|det|^s, G>  = Gamma((s+1)/2) Gamma(s/2+1) / Gamma(1/2)   (2x2 matrices)

plus the two reduction identities that connect the kernel integral to them:
the homogeneous-function reduction <h, G> = Gamma((1-lam)/2) L(h e_lam) and
the minor-map pullback <nu*(h), G> = <h, G> Gamma(s/2 + 1), and finally the
kernel Gaussian  B = A * Gamma((1-l1)/2) Gamma((1-l2)/2) Gamma((1-l3)/2).

A deterministic radial-quadrature route is provided for rotation-invariant
integrands as a second, non-statistical oracle.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .circlefn import CircleFunction
from .errors import NonFiniteError, PreconditionError
from .estimate import Estimate
from .params import _as_complex, exponents
from .quadrature import QuadratureConfig, refine_until
from .specfun import gamma_product_log, log_gamma_complex
from .trilinear import closed_form_log, invariant_functional

__all__ = [
    "GaussianSpec",
    "gaussian_expect",
    "radius_moment",
    "linear_moment",
    "det_moment",
    "radial_expect",
    "minor_map",
    "homogeneous_reduction_check",
    "minor_pullback_check",
    "minor_pullback_rotated",
    "kernel_gaussian_check",
]

_CHUNK = 1 << 16


@dataclass(frozen=True)
class GaussianSpec:
    dim: int
    seed: int
    samples: int

    def __post_init__(self):
        if self.dim < 1 or self.samples < 1:
            raise ValueError("dim and samples must be positive")


def _chunk_generator(seed: int, chunk_index: int) -> np.random.Generator:
    bg = np.random.Philox(seed)
    bg.advance(chunk_index << 64)     # disjoint counter range per chunk
    return np.random.Generator(bg)


def gaussian_expect(spec: GaussianSpec, integrand: Callable) -> Estimate:
    """Monte Carlo <f, G> with error_bound = 3 x standard error of the mean.

    ``integrand`` receives an (n, dim) array of sample points and must return
    n values (complex allowed).  The caller asserts that |f| has a finite
    second moment; with heavy-tailed integrands the reported standard error
    is the empirical one.
    """
    total = 0.0 + 0.0j
    total_sq = 0.0
    done = 0
    chunk_index = 0
    while done < spec.samples:
        n = min(_CHUNK, spec.samples - done)
        rng = _chunk_generator(spec.seed, chunk_index)
        pts = rng.standard_normal((n, spec.dim)) * math.sqrt(0.5)
        vals = np.asarray(integrand(pts))
        if not np.all(np.isfinite(vals)):
            raise NonFiniteError(
                f"integrand produced non-finite values in chunk {chunk_index}")
        total += complex(np.sum(vals))
        total_sq += float(np.sum(np.abs(vals) ** 2))
        done += n
        chunk_index += 1
    n = spec.samples
    mean = total / n
    var = max(total_sq / n - abs(mean) ** 2, 0.0) * (n / max(n - 1, 1))
    se = math.sqrt(var / n)
    return Estimate(value=mean, error_bound=3.0 * se,
                    method=f"mc-philox/seed{spec.seed}", cost=n)


# ---------------------------------------------------------------------------
# closed-form moments
# ---------------------------------------------------------------------------

def radius_moment(n: int, s) -> complex:
    """<r^s, G> on R^n = Gamma((s+n)/2) / Gamma(n/2); needs Re s > -n."""
    s = complex(s)
    if s.real <= -n:
        raise PreconditionError(f"radius moment needs Re s > -{n}")
    return np.exp(gamma_product_log([(s + n) / 2], [n / 2]).as_complex)


def linear_moment(h_norm: float, s) -> complex:
    """<|h|^s, G> = ||h||^s Gamma((s+1)/2) / Gamma(1/2); needs Re s > -1."""
    s = complex(s)
    if s.real <= -1:
        raise PreconditionError("linear moment needs Re s > -1")
    if not h_norm > 0:
        raise PreconditionError("h_norm must be positive")
    lg = gamma_product_log([(s + 1) / 2], [0.5]).as_complex
    return np.exp(s * math.log(h_norm) + lg)


def det_moment(s) -> complex:
    """<|det|^s, G> on 2x2 matrices = Gamma((s+1)/2) Gamma(s/2+1) / Gamma(1/2)."""
    s = complex(s)
    if s.real <= -1:
        raise PreconditionError("determinant moment needs Re s > -1")
    return np.exp(gamma_product_log([(s + 1) / 2, s / 2 + 1], [0.5]).as_complex)


# ---------------------------------------------------------------------------
# radial quadrature (independent deterministic oracle, no Gamma anywhere)
# ---------------------------------------------------------------------------

_SPHERE_AREA = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}


def radial_expect(n: int, s, cfg: Optional[QuadratureConfig] = None) -> Estimate:
    """<r^s, G> on R^n (n <= 3) by half-line quadrature in the radius.

    Uses only the elementary sphere areas 2, 2pi, 4pi; the radial integral
    int r^{s+n-1} e^{-r^2} dr is computed with an exp-sinh transform.
    """
    if n not in _SPHERE_AREA:
        raise PreconditionError("radial route implemented for n in {1,2,3}")
    s = complex(s)
    if s.real <= -n:
        raise PreconditionError(f"needs Re s > -{n}")
    cfg = cfg or QuadratureConfig(target_rel_error=1e-12, refinement_levels=8)
    area = _SPHERE_AREA[n]

    def eval_at_level(level):
        h = 2.0 ** (-level)
        tmax = 4.5
        t = h * np.arange(-int(tmax / h), int(tmax / h) + 1)
        r = np.exp((np.pi / 2.0) * np.sinh(t))
        w = r * (np.pi / 2.0) * np.cosh(t) * h
        keep = np.isfinite(r) & (r > 0) & (r < 27.0)   # e^{-r^2} < 1e-316 beyond
        r, w = r[keep], w[keep]
        vals = np.exp((s + n - 1) * np.log(r) - r * r)
        return area / math.pi ** (n / 2.0) * np.sum(vals * w), len(r)

    return refine_until(eval_at_level, cfg, method="radial-exp-sinh", start_level=3)


# ---------------------------------------------------------------------------
# reduction identities
# ---------------------------------------------------------------------------

def homogeneous_reduction_check(lam, f: CircleFunction, method: str = "radial",
                                spec: Optional[GaussianSpec] = None):
    """Both sides of <h, G> = Gamma((1-lam)/2) L(h e_lam) on R^2.

    Here h(x) = r^(-lam-1) f(theta) is the even extension of f with
    homogeneity degree -lam - 1, and e_lam = r^(lam-1) is the spherical
    vector, so h e_lam = r^-2 f(theta).  Absolute convergence of <h, G>
    requires Re lam < 1.

    method "radial": product quadrature (angular trapezoid x radial exp-sinh);
    deterministic.  method "mc": plain Monte Carlo with ``spec`` (note |h|^2
    is only marginally integrable for principal-series lam, so the error bar
    is the empirical one).  Returns (lhs, rhs) Estimates.
    """
    z = _as_complex(lam)
    if z.real >= 1.0:
        raise PreconditionError("need Re lam < 1 for absolute convergence")

    if method == "radial":
        cfg = QuadratureConfig(target_rel_error=1e-11, refinement_levels=8)

        def eval_at_level(level):
            # angular factor: (1/pi) int f(theta) dtheta, trapezoid
            ntheta = 256 * 2 ** level
            theta = np.linspace(0.0, 2.0 * np.pi, ntheta, endpoint=False)
            ang = np.sum(f.evaluate(theta)) * (2.0 * np.pi / ntheta) / math.pi
            # radial factor: int_0^inf r^{-lam} e^{-r^2} dr
            h = 2.0 ** (-level - 3)
            tmax = 4.5
            t = h * np.arange(-int(tmax / h), int(tmax / h) + 1)
            r = np.exp((np.pi / 2.0) * np.sinh(t))
            w = r * (np.pi / 2.0) * np.cosh(t) * h
            keep = np.isfinite(r) & (r > 0) & (r < 27.0)
            r, w = r[keep], w[keep]
            rad = np.sum(np.exp(-z * np.log(r) - r * r) * w)
            return ang * rad, ntheta + len(r)

        lhs = refine_until(eval_at_level, cfg, method="radial-product", start_level=1)
    elif method == "mc":
        if spec is None:
            raise ValueError("mc method needs a GaussianSpec")
        if spec.dim != 2:
            raise ValueError("reduction lives on R^2")

        def integrand(pts):
            r = np.hypot(pts[:, 0], pts[:, 1])
            theta = np.arctan2(pts[:, 1], pts[:, 0])
            return np.exp((-z - 1.0) * np.log(r)) * f.evaluate(theta)

        lhs = gaussian_expect(spec, integrand)
    else:
        raise ValueError(f"unknown method {method!r}")

    ell = invariant_functional(
        lambda x, y: f.evaluate(np.arctan2(y, x)) / (x * x + y * y))
    gam = np.exp(log_gamma_complex((1.0 - z) / 2.0))
    rhs = Estimate(value=complex(gam) * ell.value,
                   error_bound=abs(gam) * ell.error_bound + 1e-12 * abs(gam * ell.value),
                   method="gamma*invariant-functional", cost=ell.cost)
    return lhs, rhs


def minor_map(mats: np.ndarray) -> np.ndarray:
    """The three 2x2 minors of 2x3 matrices = cross product of the two rows.

    SO(3)-equivariant: minor_map(m @ R.T) = minor_map(m) @ R.T ... the map is
    the exterior product of the rows, so rotating both rows rotates the image.
    """
    mats = np.asarray(mats, dtype=float)
    return np.cross(mats[..., 0, :], mats[..., 1, :])


def _minor_mc(s, spec: GaussianSpec, direction=None) -> Estimate:
    if spec.dim != 6:
        raise ValueError("minor-map pullback lives on R^6 (2x3 matrices)")
    s = complex(s)

    def integrand(pts):
        w = minor_map(pts.reshape(-1, 2, 3))
        proj = w[:, 2] if direction is None else w @ np.asarray(direction, dtype=float)
        out = np.zeros(len(proj), dtype=complex)
        nz = proj != 0.0
        if s == 0:
            return np.ones(len(proj), dtype=complex)
        out[nz] = np.exp(s * np.log(np.abs(proj[nz])))
        return out

    return gaussian_expect(spec, integrand)


def minor_pullback_check(s, spec: GaussianSpec):
    """Both sides of <nu*(h), G> = <h, G> Gamma(s/2 + 1) for h(w) = |w_3|^s.

    LHS by Monte Carlo on 2x3 Gaussian matrices; RHS in closed form.
    Needs Re s > -1.  Returns (lhs, rhs) Estimates.
    """
    s = complex(s)
    if s.real <= -1:
        raise PreconditionError("minor pullback needs Re s > -1")
    lhs = _minor_mc(s, spec)
    rhs_val = linear_moment(1.0, s) * np.exp(log_gamma_complex(s / 2.0 + 1.0))
    rhs = Estimate(value=complex(rhs_val), error_bound=1e-11 * abs(rhs_val),
                   method="gamma-closed-form", cost=3)
    return lhs, rhs


def minor_pullback_rotated(s, rotation: np.ndarray, spec: GaussianSpec) -> Estimate:
    """MC estimate of <nu*(h o R), G> with h = |w_3|^s and R a rotation.

    By the SO(3)-equivariance of the minor map this must agree with the
    unrotated estimate; used as the averaging-step consistency check.
    """
    r3 = np.asarray(rotation, dtype=float)[2, :]
    return _minor_mc(s, spec, direction=r3)


def kernel_gaussian_check(l1, l2, l3, spec: GaussianSpec):
    """Both sides of  <K(s1,s2,s3), G>_{R^6} = A * prod Gamma((1-l_j)/2).

    LHS by Monte Carlo over triples of plane points; RHS assembled in log
    space from the spherical closed form.  Requires Re alpha, beta, gamma >
    -1 (absolute convergence).  Note |K|^2 is marginally non-integrable for
    principal-series parameters; the error bar is the empirical 3 sigma.
    Returns (lhs, rhs) Estimates.
    """
    if spec.dim != 6:
        raise ValueError("kernel Gaussian lives on R^6 (three plane points)")
    e = exponents(l1, l2, l3)
    for name, v in (("alpha", e.alpha), ("beta", e.beta), ("gamma", e.gamma)):
        if v.real <= -1.0:
            raise PreconditionError(f"Re {name} <= -1: Gaussian integral diverges")
    pa, pb, pg = e.kernel_powers()

    def integrand(pts):
        x = pts.reshape(-1, 3, 2)
        w23 = np.abs(x[:, 1, 0] * x[:, 2, 1] - x[:, 1, 1] * x[:, 2, 0])
        w13 = np.abs(x[:, 0, 0] * x[:, 2, 1] - x[:, 0, 1] * x[:, 2, 0])
        w12 = np.abs(x[:, 0, 0] * x[:, 1, 1] - x[:, 0, 1] * x[:, 1, 0])
        good = (w23 > 0) & (w13 > 0) & (w12 > 0)
        out = np.zeros(len(w23), dtype=complex)
        out[good] = np.exp(pa * np.log(w23[good]) + pb * np.log(w13[good])
                           + pg * np.log(w12[good]))
        return out

    lhs = gaussian_expect(spec, integrand)
    z1, z2, z3 = _as_complex(l1), _as_complex(l2), _as_complex(l3)
    log_rhs = closed_form_log(z1, z2, z3) + sum(
        log_gamma_complex((1.0 - z) / 2.0) for z in (z1, z2, z3))
    rhs_val = np.exp(log_rhs)
    rhs = Estimate(value=complex(rhs_val), error_bound=1e-10 * abs(rhs_val),
                   method="gamma-closed-form", cost=13)
    return lhs, rhs
