"""Memory kernels and the product-integration weights that discretize them.

The memory operator acting on a history y is

    (J y)(t) = integral_0^tau K(s) y(t - s) ds,

with K integrable on (0, tau). On a uniform grid t_i = i*h with
tau = M*h it is replaced by a lag sum  sum_{i=0..M} w_i * y(t - t_i).
The weights come from product integration: the history is interpolated
(piecewise constant for the rectangle rule, piecewise linear for the
trapezoid rule) while the kernel is integrated exactly over each cell,
so a weakly singular kernel costs no accuracy. Consistency is first
order for the rectangle rule and second order for the trapezoid rule.

Weights depend only on the kernel and the step, so they are computed
once per (kernel, h, rule) triple and cached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate, special

from .errors import DomainError, GridError, ShapeError, ToleranceError

__all__ = [
    "Kernel",
    "ConstantKernel",
    "GaussianKernel",
    "FractionalKernel",
    "NumericKernel",
    "LagWeights",
    "rectangle_weights",
    "trapezoid_weights",
    "lag_weights",
    "apply_memory",
]

# relative grid slack: tau/h must be an integer to this accuracy
_GRID_TOL = 1e-9
_QUAD_TOL = 1e-10


class Kernel:
    """Common evaluation/integration interface; subclasses add parameters.

    Concrete kernels implement ``_value``, ``_integral`` and ``_moment``
    (zeroth and first moments over a subinterval). Evaluation outside
    (0, tau] raises DomainError, as does s = 0 for kernels singular there.
    """

    tau: float

    @property
    def singular_at_zero(self) -> bool:
        return False

    def __call__(self, s: float) -> float:
        s = float(s)
        if s < 0.0 or s > self.tau:
            raise DomainError(f"kernel argument {s} outside (0, {self.tau}]")
        if s == 0.0 and self.singular_at_zero:
            raise DomainError("kernel is singular at s = 0")
        return float(self._value(s))

    def integral(self, a: float, b: float) -> float:
        """Exact (or adaptively computed) integral of K over [a, b]."""
        self._check_interval(a, b)
        return float(self._integral(a, b))

    def moment(self, a: float, b: float) -> float:
        """First moment: integral of s*K(s) over [a, b]."""
        self._check_interval(a, b)
        return float(self._moment(a, b))

    def _check_interval(self, a: float, b: float) -> None:
        if not 0.0 <= a <= b <= self.tau * (1.0 + 1e-12):
            raise DomainError(
                f"integration interval [{a}, {b}] not inside [0, {self.tau}]"
            )


@dataclass(frozen=True)
class ConstantKernel(Kernel):
    """Flat kernel K(s) = value; the simplest short-memory weighting."""

    tau: float
    value: float = 1.0

    def _value(self, s):
        return self.value

    def _integral(self, a, b):
        return self.value * (b - a)

    def _moment(self, a, b):
        return self.value * (b * b - a * a) / 2.0


@dataclass(frozen=True)
class GaussianKernel(Kernel):
    """Bell-shaped kernel A*exp(-(tau - 2s)^2 / (8 sigma^2)).

    Centered at s = tau/2 with rapidly decaying tails: a short-memory
    weighting of the recent temperature history. Integrals and moments
    use error-function antiderivatives.
    """

    tau: float
    amplitude: float = 1.0
    sigma: float = 0.1

    def __post_init__(self):
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.amplitude < 0.0:
            raise ValueError(f"amplitude must be >= 0, got {self.amplitude}")

    def _z(self, s):
        return (self.tau - 2.0 * s) / (2.0 * math.sqrt(2.0) * self.sigma)

    def _value(self, s):
        return self.amplitude * math.exp(-self._z(s) ** 2)

    def _integral(self, a, b):
        scale = self.amplitude * self.sigma * math.sqrt(math.pi / 2.0)
        return scale * (special.erf(self._z(a)) - special.erf(self._z(b)))

    def _moment(self, a, b):
        za, zb = self._z(a), self._z(b)
        tail = self.amplitude * self.sigma**2 * (math.exp(-zb * zb) - math.exp(-za * za))
        return (self.tau / 2.0) * self._integral(a, b) - tail


@dataclass(frozen=True)
class FractionalKernel(Kernel):
    """Power-law kernel s^(alpha-1) / Gamma(alpha), alpha > 0.

    The heavy tail models long memory; for alpha < 1 the kernel is weakly
    singular at s = 0 but remains integrable. Moments use exact power
    antiderivatives so the singularity never meets a numerical quadrature.
    """

    tau: float
    alpha: float = 0.5

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def singular_at_zero(self) -> bool:
        return self.alpha < 1.0

    def _value(self, s):
        return s ** (self.alpha - 1.0) / special.gamma(self.alpha)

    def _integral(self, a, b):
        al = self.alpha
        return (b**al - a**al) / special.gamma(al + 1.0)

    def _moment(self, a, b):
        al = self.alpha
        return (b ** (al + 1.0) - a ** (al + 1.0)) / ((al + 1.0) * special.gamma(al))


@dataclass(frozen=True)
class NumericKernel(Kernel):
    """Kernel given by an arbitrary integrable function handle.

    Cell integrals fall back to adaptive quadrature (relative tolerance
    1e-12); ToleranceError is raised if the error estimate cannot reach
    1e-10. Endpoint singularities integrable in the improper sense are
    handled by the adaptive scheme.
    """

    tau: float
    fn: Callable[[float], float]

    def _value(self, s):
        return self.fn(s)

    def _quad(self, integrand, a, b):
        value, err_estimate = integrate.quad(
            integrand, a, b, epsabs=1e-14, epsrel=1e-12, limit=500
        )
        if err_estimate > _QUAD_TOL * max(1.0, abs(value)):
            raise ToleranceError(
                f"adaptive kernel integration on [{a}, {b}] reached only "
                f"{err_estimate:.3e}"
            )
        return value

    def _integral(self, a, b):
        return self._quad(self.fn, a, b)

    def _moment(self, a, b):
        return self._quad(lambda s: s * self.fn(s), a, b)


@dataclass(frozen=True, eq=False)
class LagWeights:
    """Quadrature weights w_0..w_M for the discretized memory operator."""

    weights: np.ndarray
    h: float
    lag_count: int
    rule: str

    def __len__(self) -> int:
        return self.lag_count + 1

    @property
    def total(self) -> float:
        """Sum of the weights; equals the integral of the kernel over (0, tau)."""
        return float(self.weights.sum())


def _resolve_lag_count(kernel: Kernel, h: float) -> int:
    if h <= 0.0:
        raise GridError(f"time step must be positive, got {h}")
    ratio = kernel.tau / h
    m = round(ratio)
    if m < 1 or abs(ratio - m) > _GRID_TOL:
        raise GridError(
            f"memory length {kernel.tau} is not an integer multiple of "
            f"step {h} (tau/h = {ratio})"
        )
    return m


def rectangle_weights(kernel: Kernel, h: float) -> LagWeights:
    """First-order product-integration weights.

    The history is taken piecewise constant on each cell, so
    w_i = integral of K over [t_i, t_{i+1}] for i < M and w_M = 0.
    """
    m = _resolve_lag_count(kernel, h)
    w = np.zeros(m + 1)
    for i in range(m):
        w[i] = kernel.integral(i * h, (i + 1) * h)
    return LagWeights(weights=w, h=h, lag_count=m, rule="rectangle")


def trapezoid_weights(kernel: Kernel, h: float) -> LagWeights:
    """Second-order product-integration weights.

    The history is interpolated by the piecewise-linear hat functions of
    the lag grid; each weight is the kernel-weighted integral of one hat:

        w_0 = int_0^h K(s) (1 - s/h) ds
        w_i = int_{t_i}^{t_{i+1}} K(s) (1 - (s-t_i)/h) ds
              + int_{t_{i-1}}^{t_i} K(s) (s-t_{i-1})/h ds,   0 < i < M
        w_M = int_{tau-h}^{tau} K(s) (s - tau + h)/h ds
    """
    m = _resolve_lag_count(kernel, h)

    def falling(i):
        # int over [t_i, t_{i+1}] of K(s) * (t_{i+1} - s)/h
        a, b = i * h, (i + 1) * h
        return (b * kernel.integral(a, b) - kernel.moment(a, b)) / h

    def rising(i):
        # int over [t_{i-1}, t_i] of K(s) * (s - t_{i-1})/h
        a, b = (i - 1) * h, i * h
        return (kernel.moment(a, b) - a * kernel.integral(a, b)) / h

    w = np.zeros(m + 1)
    w[0] = falling(0)
    for i in range(1, m):
        w[i] = falling(i) + rising(i)
    w[m] = rising(m)
    return LagWeights(weights=w, h=h, lag_count=m, rule="trapezoid")


@lru_cache(maxsize=None)
def lag_weights(kernel: Kernel, h: float, rule: str) -> LagWeights:
    """Cached weight generation for a (kernel, step, rule) triple."""
    if rule == "rectangle":
        return rectangle_weights(kernel, h)
    if rule == "trapezoid":
        return trapezoid_weights(kernel, h)
    raise ValueError(f"unknown memory rule {rule!r}")


def apply_memory(weights: LagWeights, history) -> np.ndarray:
    """Weighted lag sum sum_i w_i * history[i].

    ``history`` holds one coefficient vector per lag, most recent first
    (lag 0 .. lag M); all vectors must have equal length.
    """
    stack = [np.asarray(entry, dtype=float) for entry in history]
    if len(stack) != weights.lag_count + 1:
        raise ShapeError(
            f"memory sum needs {weights.lag_count + 1} history entries, "
            f"got {len(stack)}"
        )
    width = stack[0].shape
    if any(entry.shape != width for entry in stack):
        raise ShapeError("history entries have mismatched lengths")
    return weights.weights @ np.array(stack)
