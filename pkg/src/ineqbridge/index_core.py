"""Population value of the bridging inequality index.

For an interpolation weight lam in [0, 1] the index is

    I(lam) = E|(1-lam)(X1 - mu) + lam(X1 - X2)| / (2 mu),

which equals the Hoover index at lam = 0 and the Gini coefficient at
lam = 1.  This module evaluates it three ways: an exact double sum for
finite discrete distributions, a survival-function integral for arbitrary
non-negative distributions, and a closed form for gamma populations built
from regularized incomplete gamma functions.
"""

from __future__ import annotations

import math

import numpy as np

from .distributions import DiscreteDist
from .quadrature import integrate_finite, integrate_semi_infinite
from .specfun import reg_gamma_q

__all__ = [
    "discrete_index",
    "integral_index",
    "gamma_index",
    "gamma_hoover",
    "gamma_gini",
    "j_index",
    "lambda_path",
]


def check_lambda(lam: float) -> float:
    lam = float(lam)
    if not (math.isfinite(lam) and 0.0 <= lam <= 1.0):
        raise ValueError(f"interpolation weight must lie in [0, 1], got {lam!r}")
    return lam


def discrete_index(d: DiscreteDist, lam: float) -> float:
    """Exact index of a finite discrete distribution by direct double sum.

    This is the brute-force oracle the integral and closed-form routes are
    checked against.
    """
    lam = check_lambda(lam)
    mu = d.mean()
    if mu <= 0.0:
        raise ValueError("index undefined: the distribution has mean 0")
    v = d.values
    terms = np.abs((1.0 - lam) * (v - mu)[:, None] + lam * (v[:, None] - v[None, :]))
    weighted = (d.probs[:, None] * d.probs[None, :]) * terms
    return math.fsum(weighted.ravel().tolist()) / (2.0 * mu)


def integral_index(survival, mean: float, lam: float, *,
                   x_breakpoints=(), x_upper=None,
                   abs_tol: float = 1e-11, rel_tol: float = 1e-9) -> float:
    """Index from the survival function of a non-negative distribution.

    `survival(t)` must return P(X >= t) (the left limit, so that discrete
    atoms are counted on the closed side).  `x_breakpoints` lists atom
    locations of X so integration never straddles a jump, and `x_upper`
    bounds the support when it is finite; both stay None/empty for
    continuous unbounded distributions.

    Evaluates (1/mu) * int_0^inf F(t) * S_Y(t) dt where Y = lam*X2 +
    (1-lam)*mu, S_Y(t) = 1 below (1-lam)*mu and survival((t-c)/lam) above.
    The lam = 0 case integrates F over [0, mu] directly (the change of
    variables above is singular there).
    """
    lam = check_lambda(lam)
    mean = float(mean)
    if not (math.isfinite(mean) and mean > 0.0):
        raise ValueError(f"mean must be finite and > 0, got {mean!r}")

    def cdf_left(t):
        return 1.0 - survival(t)

    bps = sorted(float(b) for b in x_breakpoints)
    if lam == 0.0:
        res = integrate_finite(cdf_left, 0.0, mean, abs_tol, rel_tol,
                               breakpoints=[b for b in bps if 0.0 < b < mean])
        return res.value / mean

    c = (1.0 - lam) * mean
    part1 = 0.0
    if c > 0.0:
        res1 = integrate_finite(cdf_left, 0.0, c, abs_tol, rel_tol,
                                breakpoints=[b for b in bps if 0.0 < b < c])
        part1 = res1.value

    def tail_integrand(t):
        u = np.maximum(np.asarray(t, dtype=float) - c, 0.0) / lam
        return cdf_left(t) * survival(u)

    if x_upper is None:
        res2 = integrate_semi_infinite(tail_integrand, c, abs_tol, rel_tol)
    else:
        hi = c + lam * float(x_upper)
        cuts = sorted({b for b in bps if c < b < hi} | {c + lam * b for b in bps if c < c + lam * b < hi})
        res2 = integrate_finite(tail_integrand, c, hi, abs_tol, rel_tol, breakpoints=cuts)
    return (part1 + res2.value) / mean


def _gamma_q_tail(alpha: float, t: float) -> float:
    # int_t^inf Q(alpha, u) du = alpha*Q(alpha+1, t) - t*Q(alpha, t)
    return alpha * reg_gamma_q(alpha + 1.0, t) - t * reg_gamma_q(alpha, t)


def gamma_index(alpha: float, lam: float) -> float:
    """Closed-form index of a gamma population with shape alpha.

    Scale free, so no rate parameter appears.  lam = 0 is the analytic
    limit handled by the Hoover closed form.
    """
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise ValueError(f"shape must be finite and > 0, got {alpha!r}")
    lam = check_lambda(lam)
    if lam == 0.0:
        return gamma_hoover(alpha)

    c = (1.0 - lam) * alpha
    if lam == 1.0:
        term1 = 0.0
    else:
        term1 = math.exp(alpha * math.log1p(-lam) + (alpha - 1.0) * math.log(alpha)
                         - c - math.lgamma(alpha))
    term2 = lam * reg_gamma_q(alpha, c)

    upper = max(c, alpha + 40.0 * math.sqrt(alpha) + 40.0 * lam)
    while _gamma_q_tail(alpha, upper) > 1e-13:
        upper *= 1.5

    def integrand(t):
        u = np.maximum(np.asarray(t, dtype=float) - c, 0.0) / lam
        return reg_gamma_q(alpha, t) * reg_gamma_q(alpha, u)

    res = integrate_finite(integrand, c, upper, abs_tol=1e-11, rel_tol=1e-9)
    return term1 + term2 - res.value / alpha


def gamma_hoover(alpha: float) -> float:
    """Hoover index of a gamma population: alpha^(alpha-1) e^(-alpha) / Gamma(alpha)."""
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise ValueError(f"shape must be finite and > 0, got {alpha!r}")
    return math.exp((alpha - 1.0) * math.log(alpha) - alpha - math.lgamma(alpha))


def gamma_gini(alpha: float) -> float:
    """Gini coefficient of a gamma population: Gamma(alpha + 1/2) / (sqrt(pi) alpha Gamma(alpha))."""
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise ValueError(f"shape must be finite and > 0, got {alpha!r}")
    return math.exp(math.lgamma(alpha + 0.5) - math.lgamma(alpha)) / (math.sqrt(math.pi) * alpha)


def j_index(hoover: float, gini: float, lam: float) -> float:
    """Convex combination (1-lam)*H + lam*G, the triangle-inequality upper bound."""
    lam = check_lambda(lam)
    return (1.0 - lam) * float(hoover) + lam * float(gini)


def lambda_path(evaluator, grid_size: int) -> list[tuple[float, float]]:
    """Evaluate lam -> value on a uniform grid over [0, 1] inclusive."""
    grid_size = int(grid_size)
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size}")
    out = []
    for i in range(grid_size):
        lam = i / (grid_size - 1)
        try:
            out.append((lam, float(evaluator(lam))))
        except Exception as exc:
            raise RuntimeError(f"path evaluation failed at lambda={lam!r}: {exc}") from exc
    return out
