"""Truncated even Fourier series on the circle and the bi-circle.

Vectors of the explicit representation models are even functions on S^1, i.e.
invariant under theta -> theta + pi; their Fourier support is the even
frequencies.  We store the coefficient c_p of e^{2 i p theta} at array index
p + max_mode.  The L^2 norm refers to the normalized measure d(theta) / (2 pi)
on each circle, so the stored modes are orthonormal (Parseval: ||f||^2 =
sum |c_p|^2).

``BiCircleFunction`` is the same on S^1 x S^1 (coefficient matrix over even
mode pairs).  ``coeffs`` may be deferred (None) when only a pointwise
evaluator is required, e.g. for very fine bump vectors.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = ["CircleFunction", "BiCircleFunction"]


@dataclass
class CircleFunction:
    coeffs: np.ndarray          # shape (2 max_mode + 1,), index p + max_mode
    max_mode: int
    evaluator: Optional[Callable] = None

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (2 * self.max_mode + 1,):
            raise ValueError("coefficient length must be 2*max_mode + 1")

    @classmethod
    def constant(cls, value=1.0, max_mode: int = 0) -> "CircleFunction":
        c = np.zeros(2 * max_mode + 1, dtype=complex)
        c[max_mode] = value
        return cls(c, max_mode)

    @classmethod
    def from_modes(cls, modes: dict, max_mode: int) -> "CircleFunction":
        """modes maps even frequency 2p -> coefficient."""
        c = np.zeros(2 * max_mode + 1, dtype=complex)
        for freq, val in modes.items():
            if freq % 2 != 0:
                raise ValueError(f"only even frequencies allowed, got {freq}")
            p = freq // 2
            if abs(p) > max_mode:
                raise ValueError(f"frequency {freq} exceeds truncation")
            c[p + max_mode] = val
        return cls(c, max_mode)

    def coefficient(self, p: int) -> complex:
        if abs(p) > self.max_mode:
            return 0.0 + 0.0j
        return self.coeffs[p + self.max_mode]

    def evaluate(self, theta):
        """Evaluate the truncated series (vectorized over theta)."""
        theta = np.asarray(theta, dtype=float)
        p = np.arange(-self.max_mode, self.max_mode + 1)
        phases = np.exp(2j * np.outer(theta.ravel(), p))
        vals = phases @ self.coeffs
        return vals.reshape(theta.shape) if theta.ndim else complex(vals[0])

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def mean(self) -> complex:
        """Average over the circle = coefficient of the zero mode."""
        return self.coefficient(0)


@dataclass
class BiCircleFunction:
    coeffs: Optional[np.ndarray]    # shape (2N+1, 2N+1), index (p + N, q + N)
    max_mode: int
    evaluator: Optional[Callable] = None
    # populated by constructors that know the analytic mass exactly
    mass: Optional[float] = None    # integral over [0,2pi)^2, plain measure

    def __post_init__(self):
        if self.coeffs is not None:
            self.coeffs = np.asarray(self.coeffs, dtype=complex)
            n = 2 * self.max_mode + 1
            if self.coeffs.shape != (n, n):
                raise ValueError("coefficient matrix must be (2N+1) x (2N+1)")

    @classmethod
    def from_samples(cls, values: np.ndarray, max_mode: int,
                     evaluator=None) -> "BiCircleFunction":
        """FFT of samples on a uniform grid over [0, 2pi)^2.

        The grid must be fine enough that all odd-frequency content is zero
        (evenness) and frequencies beyond 2*max_mode have negligible energy.
        """
        m = values.shape[0]
        spec = np.fft.fft2(values) / (m * m)
        n = max_mode
        c = np.zeros((2 * n + 1, 2 * n + 1), dtype=complex)
        for p in range(-n, n + 1):
            for q in range(-n, n + 1):
                c[p + n, q + n] = spec[(2 * p) % m, (2 * q) % m]
        return cls(c, max_mode, evaluator=evaluator)

    def coefficient(self, p: int, q: int) -> complex:
        if max(abs(p), abs(q)) > self.max_mode:
            return 0.0 + 0.0j
        return self.coeffs[p + self.max_mode, q + self.max_mode]

    def evaluate(self, x, y):
        """Pointwise values; prefers the analytic evaluator when present."""
        if self.evaluator is not None:
            return self.evaluator(x, y)
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        p = np.arange(-self.max_mode, self.max_mode + 1)
        ex = np.exp(2j * np.outer(x.ravel(), p))
        ey = np.exp(2j * np.outer(y.ravel(), p))
        vals = np.einsum("ip,pq,iq->i", ex, self.coeffs, ey)
        return vals.reshape(np.broadcast(x, y).shape)

    def series_mass(self) -> float:
        """Integral over [0,2pi)^2 with plain measure = (2pi)^2 c_{00}."""
        return float((2.0 * np.pi) ** 2 * self.coefficient(0, 0).real)

    def l2_norm(self) -> float:
        """Norm in L^2 of the normalized product measure (d/2pi)^2."""
        return float(np.linalg.norm(self.coeffs))
