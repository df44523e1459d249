"""Foundational numeric kernels used by every other module.

This module provides the four low-level ingredients the eigenvalue engine
and the bound evaluators are built from:

* Gauss-Legendre quadrature rules of arbitrary order, computed from
  scratch by Newton iteration on the Legendre polynomials, so that the
  spectral discretisation downstream does not depend on any external
  special-function library.
* The sine integral Si(y), needed by the closed-form normalisation of the
  rectangle-plus-sinc state family.
* The inverse error function, needed for Gaussian interval confidence
  products.
* A dominant-eigenpair solver and a monotone bisection root finder, the
  two primitives behind the concentration eigenvalue and its inverse.

All functions are pure and deterministic; returned arrays are read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import BracketError, ConvergenceError, DomainError

__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "sine_integral",
    "erf_inverse",
    "largest_eigenpair",
    "bisect_monotone",
]


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and weights for Gauss-Legendre integration on [-1, 1].

    Attributes
    ----------
    nodes :
        Strictly increasing abscissae in (-1, 1), symmetric about 0.
    weights :
        Positive weights summing to 2, mirror-symmetric like the nodes.
    order :
        Number of nodes N; the rule integrates polynomials of degree
        up to 2N - 1 exactly.
    """

    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]
    order: int

    def __post_init__(self) -> None:
        if self.nodes.shape != (self.order,) or self.weights.shape != (self.order,):
            raise DomainError(
                f"rule of order {self.order} needs {self.order} nodes and weights, "
                f"got {self.nodes.shape} and {self.weights.shape}"
            )
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def integrate(self, values: NDArray[np.float64]) -> float:
        """Weighted sum of integrand values sampled on the nodes."""
        values = np.asarray(values)
        if values.shape != self.nodes.shape:
            raise DomainError(
                f"expected {self.order} integrand values, got shape {values.shape}"
            )
        return float(np.dot(self.weights, values))


def _legendre_and_derivative(
    n: int, x: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Evaluate P_n and P_n' by the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for j in range(2, n + 1):
        p_prev, p = p, ((2 * j - 1) * x * p - (j - 1) * p_prev) / j
    # derivative via the standard relation; nodes are interior so 1-x^2 > 0
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_legendre(order: int) -> QuadratureRule:
    """Compute the Gauss-Legendre rule of the given order.

    Roots of the Legendre polynomial are found by Newton iteration from
    the classical cosine initial guesses; only the positive half is
    iterated and the rule is mirrored, which makes the symmetry
    ``node[i] = -node[N-1-i]`` exact by construction.

    Parameters
    ----------
    order :
        Number of nodes, at least 2.

    Returns
    -------
    QuadratureRule

    Raises
    ------
    DomainError
        If ``order`` is less than 2.
    ConvergenceError
        If a Newton iterate fails to settle, which does not happen for
        any practical order.
    """
    if order < 2:
        raise DomainError(f"quadrature order must be >= 2, got {order}")
    n = int(order)
    m = n // 2
    k = np.arange(1, m + 1, dtype=np.float64)
    x = np.cos(np.pi * (4 * k - 1) / (4 * n + 2))
    for _ in range(100):
        p, dp = _legendre_and_derivative(n, x)
        step = p / dp
        x -= step
        if np.max(np.abs(step)) < 1e-16:
            break
    else:
        raise ConvergenceError("Legendre root iteration did not settle")
    _, dp = _legendre_and_derivative(n, x)
    w_half = 2.0 / ((1.0 - x * x) * dp * dp)

    if n % 2:
        zero = np.zeros(1)
        _, dp0 = _legendre_and_derivative(n, zero)
        w0 = 2.0 / (dp0 * dp0)
        nodes = np.concatenate([-x, zero, x[::-1]])
        weights = np.concatenate([w_half, w0, w_half[::-1]])
    else:
        nodes = np.concatenate([-x, x[::-1]])
        weights = np.concatenate([w_half, w_half[::-1]])
    return QuadratureRule(nodes=nodes, weights=weights, order=n)


_SI_RULE_ORDER = 32
_SI_PANEL = 2.0
_SI_ASYMPTOTIC_CUT = 50.0


def sine_integral(y: float) -> float:
    """Sine integral Si(y), the integral of sin(t)/t from 0 to y.

    Uses panel Gauss-Legendre quadrature up to |y| = 50 (the integrand is
    entire, so fixed panels of length 2 already reach machine accuracy)
    and the asymptotic auxiliary-function expansion beyond, keeping the
    absolute error below 1e-12 everywhere. Odd in y.
    """
    if not math.isfinite(y):
        raise DomainError(f"sine_integral requires finite input, got {y}")
    if y == 0.0:
        return 0.0
    sign, ay = (1.0, y) if y > 0 else (-1.0, -y)
    if ay <= 1e-4:
        # two Taylor terms reach 1e-23 here and avoid underflow in the
        # panel node products for subnormal arguments
        return sign * ay * (1.0 - ay * ay / 18.0)
    if ay <= _SI_ASYMPTOTIC_CUT:
        rule = gauss_legendre(_SI_RULE_ORDER)
        npanels = max(1, math.ceil(ay / _SI_PANEL))
        edges = np.linspace(0.0, ay, npanels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        t = mid[:, None] + half[:, None] * rule.nodes[None, :]
        vals = np.sin(t) / t
        total = float(np.sum(half[:, None] * rule.weights[None, :] * vals))
        return sign * total
    # Si(y) = pi/2 - cos(y) f(y) - sin(y) g(y) with asymptotic f, g
    inv2 = 1.0 / (ay * ay)
    f = 0.0
    g = 0.0
    term_f = 1.0 / ay
    term_g = inv2
    k = 0
    while k < 14:
        f += term_f
        g += term_g
        next_f = -term_f * (2 * k + 1) * (2 * k + 2) * inv2
        next_g = -term_g * (2 * k + 2) * (2 * k + 3) * inv2
        if abs(next_f) >= abs(term_f):
            break
        term_f, term_g = next_f, next_g
        k += 1
    si = 0.5 * math.pi - math.cos(ay) * f - math.sin(ay) * g
    return sign * si


def erf_inverse(theta: float) -> float:
    """Inverse of the error function on [0, 1).

    Newton iteration on ``math.erf`` with the exact derivative, clipped
    to a maintained bracket so every step is safe; converges to
    ``erf(result) = theta`` within 1e-13.

    Raises
    ------
    DomainError
        If ``theta`` is outside [0, 1).
    """
    if not 0.0 <= theta < 1.0:
        raise DomainError(f"erf_inverse requires 0 <= theta < 1, got {theta}")
    if theta == 0.0:
        return 0.0
    lo, hi = 0.0, 1.0
    while math.erf(hi) < theta:
        hi *= 2.0
    x = 0.5 * (lo + hi)
    for _ in range(200):
        fx = math.erf(x) - theta
        if abs(fx) <= 1e-13 or (hi - lo) <= 1e-15 * (1.0 + x):
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        step = fx / (2.0 / math.sqrt(math.pi) * math.exp(-x * x))
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        x = x_new
    raise ConvergenceError(f"erf_inverse did not converge for theta={theta}")


def largest_eigenpair(
    matrix: NDArray[np.float64], tol: float = 1e-12
) -> tuple[float, NDArray[np.float64]]:
    """Largest eigenvalue and unit eigenvector of a real symmetric matrix.

    A dense symmetric eigensolve provides the pair; the symmetry of the
    input and the residual ``||M v - lambda v|| <= tol`` are verified so
    the contract does not rest on the backend. The eigenvector sign is
    fixed so its entry of largest magnitude is positive, which makes the
    result deterministic.

    Raises
    ------
    DomainError
        If the matrix is not square and symmetric to 1e-12.
    ConvergenceError
        If the residual check fails at the requested tolerance.
    """
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        raise DomainError("expected a nonempty matrix")
    asym = float(np.max(np.abs(m - m.T)))
    if asym > 1e-12:
        raise DomainError(f"matrix is not symmetric: max |M - M^T| = {asym:.3e}")
    sym = 0.5 * (m + m.T)
    eigenvalues, eigenvectors = np.linalg.eigh(sym)
    value = float(eigenvalues[-1])
    vector = eigenvectors[:, -1]
    residual = float(np.linalg.norm(sym @ vector - value * vector))
    if residual > tol:
        raise ConvergenceError(
            f"eigenpair residual {residual:.3e} exceeds tolerance {tol:.3e}"
        )
    if vector[int(np.argmax(np.abs(vector)))] < 0:
        vector = -vector
    vector = vector.copy()
    vector.setflags(write=False)
    return value, vector


def bisect_monotone(
    f,
    target: float,
    bracket: tuple[float, float],
    tol: float = 1e-10,
) -> float:
    """Solve f(x) = target for monotone f by bisection on a bracket.

    Terminates when either ``|f(x) - target| <= tol`` or the bracket
    width falls below ``tol``. Works for increasing and decreasing f.

    Raises
    ------
    BracketError
        If f evaluated at the bracket ends does not straddle the target.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise BracketError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")
    flo = f(lo) - target
    fhi = f(hi) - target
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(
            f"f does not straddle target {target} on ({lo}, {hi}): "
            f"f(lo)-target={flo:.3e}, f(hi)-target={fhi:.3e}"
        )
    increasing = fhi > 0
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = f(mid) - target
        if abs(fmid) <= tol or (hi - lo) <= tol:
            return mid
        if (fmid < 0) == increasing:
            lo = mid
        else:
            hi = mid
    return mid
