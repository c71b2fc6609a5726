"""Cancellation-safe complex log-Gamma and Stirling envelopes.

Everything downstream (closed forms, Fourier coefficients of |sin|^s, Gaussian
moment identities) is assembled in log space from the two primitives here:

* ``log_gamma`` -- log Gamma on the strip Re z in [-10, 50] (and far beyond on
  the right), via the asymptotic Stirling series with Bernoulli-number
  coefficients, pushed into its validity region Re z >= 10 by the recurrence
  Gamma(z+1) = z Gamma(z).  No external special-function library is used, so
  results are reproducible bit-for-bit.
* ``stirling_modulus`` -- the classical modulus envelope
  sqrt(2 pi) exp(-pi |t| / 2) |t|^(sigma - 1/2) of Gamma(sigma + i t).

The phase returned by ``log_gamma`` is accumulated along the evaluation path
(series value plus recurrence logs) and is never reduced mod 2 pi, so it is
continuous in t along vertical lines away from the poles.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainTooSmallError, PoleArgumentError

__all__ = [
    "LogGamma",
    "log_gamma",
    "log_gamma_complex",
    "gamma_value",
    "reciprocal_gamma",
    "stirling_modulus",
    "gamma_product_log",
]

# B_{2k} / (2k (2k-1)), k = 1..12 (Bernoulli numbers; classical Stirling series)
_STIRLING_COEFFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    854513.0 / 63756.0,
    -236364091.0 / 1506960.0,
)

_SHIFT_RE = 10.0       # Stirling series is applied only for Re z >= this
_POLE_TOL = 1e-14
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class LogGamma:
    """log Gamma split into real log-modulus and accumulated phase (radians)."""

    log_modulus: float
    phase: float

    @property
    def as_complex(self) -> complex:
        return complex(self.log_modulus, self.phase)

    @property
    def gamma(self) -> complex:
        return cmath.exp(self.as_complex)


def _is_pole(z: complex) -> bool:
    return (z.real <= 0.5 and abs(z.imag) < _POLE_TOL
            and abs(z.real - round(z.real)) < _POLE_TOL and round(z.real) <= 0)


def _stirling_series(z: complex) -> complex:
    # valid for Re z >= _SHIFT_RE; remainder < 1e-20 relative there
    out = (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI
    zinv = 1.0 / z
    zpow = zinv
    zinv2 = zinv * zinv
    for c in _STIRLING_COEFFS:
        out += c * zpow
        zpow *= zinv2
    return out


def log_gamma_complex(z) -> complex:
    """log Gamma(z) as one complex number (Im = accumulated phase)."""
    z = complex(z)
    if _is_pole(z):
        raise PoleArgumentError(z)
    if z.real >= _SHIFT_RE:
        return _stirling_series(z)
    m = int(math.ceil(_SHIFT_RE - z.real))
    shift = 0.0 + 0.0j
    for k in range(m):
        shift += cmath.log(z + k)
    return _stirling_series(z + m) - shift


def log_gamma(z) -> LogGamma:
    """log Gamma(z); raises PoleArgumentError within 1e-14 of a pole."""
    val = log_gamma_complex(z)
    return LogGamma(log_modulus=val.real, phase=val.imag)


def gamma_value(z) -> complex:
    return cmath.exp(log_gamma_complex(z))


def reciprocal_gamma(z) -> complex:
    """1 / Gamma(z); exactly 0 at the poles (no exception)."""
    z = complex(z)
    if _is_pole(z):
        return 0.0 + 0.0j
    return cmath.exp(-log_gamma_complex(z))


def log_gamma_array(z: np.ndarray) -> np.ndarray:
    """Vectorized log Gamma for arrays with no element at a pole.

    Same algorithm as ``log_gamma_complex``; elements left of the Stirling
    strip are shifted up by the recurrence with a masked loop.
    """
    z = np.asarray(z, dtype=complex).copy()
    bad = ((z.real <= 0.5) & (np.abs(z.imag) < _POLE_TOL)
           & (np.abs(z.real - np.round(z.real)) < _POLE_TOL) & (np.round(z.real) <= 0))
    if np.any(bad):
        raise PoleArgumentError(z[bad].flat[0])
    shift = np.zeros_like(z)
    mask = z.real < _SHIFT_RE
    while np.any(mask):
        shift[mask] += np.log(z[mask])
        z[mask] += 1.0
        mask = z.real < _SHIFT_RE
    out = (z - 0.5) * np.log(z) - z + _HALF_LOG_2PI
    zinv = 1.0 / z
    zpow = zinv.copy()
    zinv2 = zinv * zinv
    for c in _STIRLING_COEFFS:
        out += c * zpow
        zpow *= zinv2
    return out - shift


def stirling_modulus(sigma: float, t: float) -> float:
    """Asymptotic modulus sqrt(2 pi) exp(-pi|t|/2) |t|^(sigma - 1/2).

    The ratio |Gamma(sigma + i t)| / stirling_modulus(sigma, t) tends to 1 as
    |t| grows; below |t| = 1 the asymptotic regime is not meaningful.
    """
    if abs(t) < 1.0:
        raise DomainTooSmallError(f"stirling_modulus needs |t| >= 1, got t = {t}")
    logv = _HALF_LOG_2PI - 0.5 * math.pi * abs(t) + (sigma - 0.5) * math.log(abs(t))
    return math.exp(logv)


def gamma_product_log(numerator, denominator) -> LogGamma:
    """log of prod Gamma(numerator_i) / prod Gamma(denominator_j).

    Pole errors are re-raised with the offending factor identified.
    """
    total = 0.0 + 0.0j
    for i, z in enumerate(numerator):
        try:
            total += log_gamma_complex(z)
        except PoleArgumentError:
            raise PoleArgumentError(complex(z), factor=f"numerator[{i}]") from None
    for i, z in enumerate(denominator):
        try:
            total -= log_gamma_complex(z)
        except PoleArgumentError:
            raise PoleArgumentError(complex(z), factor=f"denominator[{i}]") from None
    return LogGamma(log_modulus=total.real, phase=total.imag)
