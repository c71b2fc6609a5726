"""The invariant kernel on triples of plane points and its circle restriction.

For an exponent quadruple (alpha, beta, gamma, delta) the kernel is

    K(s1, s2, s3) = |w(s2,s3)|^((alpha-1)/2) |w(s1,s3)|^((beta-1)/2)
                    |w(s1,s2)|^((gamma-1)/2),

with w(xi, eta) = xi_1 eta_2 - xi_2 eta_1.  It is invariant under the diagonal
SL(2,R) action (w scales by det g) and homogeneous of degree -1 - l_j in slot j.

Complex powers are always computed as exp(s * log |w|): modulus first, so no
branch choice ever arises.
"""

import numpy as np

from .errors import SingularConfigurationError
from .params import ExponentQuadruple

__all__ = ["omega", "kernel_value", "kernel_on_circle", "SINGULAR_OMEGA"]

# |w| below this is treated as an exact zero (singular configuration)
SINGULAR_OMEGA = 1e-300


def omega(xi, eta) -> float:
    """The SL(2,R)-invariant pairing xi_1 eta_2 - xi_2 eta_1 of two plane vectors."""
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    return float(xi[0] * eta[1] - xi[1] * eta[0])


def _power_from_abs(absval, s):
    return np.exp(s * np.log(absval))


def kernel_value(s1, s2, s3, exps: ExponentQuadruple) -> complex:
    """Kernel at three nonzero plane points; raises on singular configurations."""
    w23 = abs(omega(s2, s3))
    w13 = abs(omega(s1, s3))
    w12 = abs(omega(s1, s2))
    if min(w23, w13, w12) < SINGULAR_OMEGA:
        raise SingularConfigurationError(
            f"omega values ({w23:.3g}, {w13:.3g}, {w12:.3g}) contain a zero")
    pa, pb, pg = exps.kernel_powers()
    return complex(np.exp(pa * np.log(w23) + pb * np.log(w13) + pg * np.log(w12)))


def kernel_on_circle(x, y, z, exps: ExponentQuadruple):
    """Kernel restricted to unit-circle points with angles x, y, z.

    Equals kernel_value at ((cos x, sin x), (cos y, sin y), (cos z, sin z)):

        |sin(y-z)|^((alpha-1)/2) |sin(x-z)|^((beta-1)/2) |sin(x-y)|^((gamma-1)/2).

    Vectorized over broadcast-compatible angle arrays.  Raises when any angle
    pair coincides mod pi (scalar inputs) or marks those entries singular is
    not attempted -- callers doing quadrature must avoid the diagonals.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    syz = np.abs(np.sin(y - z))
    sxz = np.abs(np.sin(x - z))
    sxy = np.abs(np.sin(x - y))
    if np.min(syz) < SINGULAR_OMEGA or np.min(sxz) < SINGULAR_OMEGA \
            or np.min(sxy) < SINGULAR_OMEGA:
        raise SingularConfigurationError("angles coincide mod pi")
    pa, pb, pg = exps.kernel_powers()
    out = np.exp(pa * np.log(syz) + pb * np.log(sxz) + pg * np.log(sxy))
    if out.ndim == 0:
        return complex(out)
    return out
