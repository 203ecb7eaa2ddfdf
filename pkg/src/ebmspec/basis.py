"""Even-Legendre orthonormal basis on (0, 1).

The expansion functions are scaled even-degree Legendre polynomials

    phi_i(x) = sqrt(4*i + 1) * P_{2i}(x),   i = 0, 1, 2, ...

They are orthonormal in L2(0, 1), satisfy phi_i'(0) = 0 with phi_i bounded
at x = 1 (the natural conditions at the equator and the pole when x is the
sine of latitude), and diagonalize the degenerate diffusion operator:

    -((1 - x^2) phi_i')' = lambda_i phi_i,   lambda_i = 2i(2i + 1).

Coefficient vectors are plain 1-D numpy arrays y_0..y_N; by orthonormality
the Euclidean norm of a coefficient vector equals the L2(0, 1) norm of the
function it represents.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "QuadratureRule",
    "EvenLegendreBasis",
    "basis_eval",
    "eval_matrix",
    "gauss_rule",
    "synthesize",
    "project",
    "eigenvalue",
    "eigenvalues",
    "l2_norm",
    "default_quad_size",
]

_NEWTON_TOL = 1e-15
_NEWTON_MAX_ITER = 100


def default_quad_size(n_max: int) -> int:
    """Quadrature size exact for all assembly integrands up to basis cutoff
    n_max, with headroom for non-polynomial coefficients."""
    return max(64, 2 * n_max + 16)


def eigenvalue(i: int) -> float:
    """Eigenvalue 2i(2i+1) of -((1-x^2) u')' on the i-th basis function."""
    return float(2 * i * (2 * i + 1))


def eigenvalues(n_max: int) -> np.ndarray:
    """Vector of eigenvalues for modes 0..n_max."""
    i = np.arange(n_max + 1)
    return (2 * i * (2 * i + 1)).astype(float)


def _legendre_values(deg: int, x: np.ndarray) -> np.ndarray:
    """Table of Legendre polynomial values P_0..P_deg at points x,
    shape (deg+1, len(x)), by the three-term recurrence."""
    p = np.empty((deg + 1,) + x.shape)
    p[0] = 1.0
    if deg >= 1:
        p[1] = x
    for k in range(1, deg):
        p[k + 1] = ((2 * k + 1) * x * p[k] - k * p[k - 1]) / (k + 1)
    return p


def _legendre_derivatives(deg: int, x: np.ndarray, p: np.ndarray) -> np.ndarray:
    """First derivatives P_0'..P_deg' given the value table p.

    Uses P'_{k+1} = P'_{k-1} + (2k+1) P_k, which stays regular at x = 1
    where the usual (1-x^2) form of the derivative identity degenerates.
    """
    dp = np.empty_like(p)
    dp[0] = 0.0
    if deg >= 1:
        dp[1] = 1.0
    for k in range(1, deg):
        dp[k + 1] = dp[k - 1] + (2 * k + 1) * p[k]
    return dp


def eval_matrix(n_max: int, x, derivative: int = 0) -> np.ndarray:
    """Evaluate all basis functions (or their first derivatives) at points x.

    Returns an array of shape (len(x), n_max+1) whose column i holds
    phi_i(x) or phi_i'(x). One recurrence sweep serves every mode.
    """
    if n_max < 0:
        raise ValueError(f"basis cutoff must be >= 0, got {n_max}")
    if derivative not in (0, 1):
        raise ValueError(f"derivative order must be 0 or 1, got {derivative}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    deg = 2 * n_max
    p = _legendre_values(deg, x)
    if derivative == 1:
        p = _legendre_derivatives(deg, x, p)
    scale = np.sqrt(4.0 * np.arange(n_max + 1) + 1.0)
    return p[::2].T * scale


def basis_eval(i: int, x, derivative: int = 0):
    """Value (or first derivative) of the i-th basis function at x."""
    if i < 0:
        raise ValueError(f"mode index must be >= 0, got {i}")
    out = eval_matrix(i, x, derivative)[:, i]
    return float(out[0]) if np.isscalar(x) else out


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [0, 1]."""

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        """Weighted sum of values sampled at the nodes."""
        return float(self.weights @ values)


def gauss_rule(q: int) -> QuadratureRule:
    """Gauss-Legendre rule with q nodes, mapped affinely from [-1, 1] to [0, 1].

    Nodes are roots of the degree-q Legendre polynomial, found by Newton
    iteration from Chebyshev initial guesses (tolerance 1e-15, at most 100
    sweeps; a handful suffice in practice). Exact for polynomials of degree
    up to 2q - 1.
    """
    if q < 1:
        raise ValueError(f"quadrature size must be >= 1, got {q}")
    k = np.arange(1, q + 1)
    xi = np.cos(np.pi * (k - 0.25) / (q + 0.5))
    for _ in range(_NEWTON_MAX_ITER):
        p = _legendre_values(q, xi)
        dp = q * (p[q - 1] - xi * p[q]) / (1.0 - xi * xi)
        delta = p[q] / dp
        xi -= delta
        if np.max(np.abs(delta)) < _NEWTON_TOL:
            break
    p = _legendre_values(q, xi)
    dp = q * (p[q - 1] - xi * p[q]) / (1.0 - xi * xi)
    w_std = 2.0 / ((1.0 - xi * xi) * dp * dp)
    # cos ordering is descending; emit ascending nodes on [0, 1]
    nodes = ((xi + 1.0) / 2.0)[::-1].copy()
    weights = (w_std / 2.0)[::-1].copy()
    return QuadratureRule(nodes=nodes, weights=weights)


def synthesize(coeffs, x):
    """Pointwise values of the expansion sum_i y_i phi_i at points x."""
    coeffs = np.asarray(coeffs, dtype=float)
    out = eval_matrix(len(coeffs) - 1, x) @ coeffs
    return float(out[0]) if np.isscalar(x) else out


def project(f, n_max: int, rule: QuadratureRule) -> np.ndarray:
    """Coefficients of the truncated orthogonal projection of f.

    y_i is the quadrature approximation of the inner product of f with
    phi_i over (0, 1); exact whenever f * phi_i is resolved by the rule.
    """
    fvals = np.broadcast_to(np.asarray(f(rule.nodes), dtype=float), rule.nodes.shape)
    return (rule.weights * fvals) @ eval_matrix(n_max, rule.nodes)


def l2_norm(coeffs) -> float:
    """L2(0, 1) norm of the represented function (Plancherel identity)."""
    return float(np.linalg.norm(np.asarray(coeffs, dtype=float)))


class EvenLegendreBasis:
    """Basis of fixed cutoff with cached node-by-mode evaluation tables.

    The tables are built once at construction, so Galerkin assembly reduces
    to weighted dot products against them. Instances are immutable in use
    and safe to share between threads.
    """

    def __init__(self, n_max: int, quad_points: int | None = None):
        if n_max < 0:
            raise ValueError(f"basis cutoff must be >= 0, got {n_max}")
        q = default_quad_size(n_max) if quad_points is None else int(quad_points)
        if q < n_max + 1:
            raise ValueError(
                f"quadrature size {q} too small for basis cutoff {n_max}; "
                f"need at least {n_max + 1}"
            )
        self.n_max = int(n_max)
        self.quad_points = q
        self.rule = gauss_rule(q)
        self.table = eval_matrix(n_max, self.rule.nodes)
        self.dtable = eval_matrix(n_max, self.rule.nodes, derivative=1)
        self.eigen = eigenvalues(n_max)

    @property
    def size(self) -> int:
        """Number of modes, n_max + 1."""
        return self.n_max + 1

    def project(self, f) -> np.ndarray:
        """Projection coefficients of a function sampled at the cached nodes."""
        fvals = np.broadcast_to(
            np.asarray(f(self.rule.nodes), dtype=float), self.rule.nodes.shape
        )
        return (self.rule.weights * fvals) @ self.table

    def values_at_nodes(self, coeffs: np.ndarray) -> np.ndarray:
        """Synthesis of a coefficient vector at the cached quadrature nodes."""
        return self.table @ np.asarray(coeffs, dtype=float)
