"""Shared test oracles and cached heavy computations.

Oracles here are deliberately independent of the package internals: erfc by
its Taylor series, hypergeometric sums in 50-digit arithmetic, closed-form
densities, and brute-force enumeration.
"""

from __future__ import annotations

import math
from functools import cache

import mpmath as mp
import numpy as np

from ineqbridge import BiasQuery, DiscreteDist, bias

from reference_values import MC_REFERENCE

mp.mp.dps = 50


def erfc_series(x: float, terms: int = 80) -> float:
    """erfc by the Maclaurin series of erf in extended precision."""
    xm = mp.mpf(x)
    s = mp.mpf(0)
    for k in range(terms):
        s += (-1) ** k * xm ** (2 * k + 1) / (mp.factorial(k) * (2 * k + 1))
    return float(1 - 2 / mp.sqrt(mp.pi) * s)


def mp_1f1_taylor(a, b, x, terms: int = 400) -> mp.mpf:
    """Direct Taylor summation of 1F1 in extended precision.

    Negative arguments cancel catastrophically (terms grow to ~e^|x| before
    shrinking), so the working precision scales with |x|.
    """
    with mp.workdps(max(50, int(0.45 * abs(x)) + 30)):
        s = mp.mpf(0)
        t = mp.mpf(1)
        for k in range(terms):
            s += t
            t = t * (mp.mpf(a) + k) * mp.mpf(x) / ((mp.mpf(b) + k) * (k + 1))
        return +s


def mp_reg_q(s, x) -> float:
    return float(mp.gammainc(mp.mpf(s), mp.mpf(x), mp.inf, regularized=True))


def mp_phi2_unit(a, c, x, y, terms: int = 5000) -> mp.mpf:
    """Reference evaluation of the two-variable confluent series."""
    S = mp.mpf(1)
    r = mp.mpf(1)
    v = mp.mpf(1)
    for s in range(1, terms):
        v = v * (mp.mpf(a) + s - 1) * mp.mpf(x) / (s * (mp.mpf(c) + s - 1))
        r = mp.mpf(y) * r / (mp.mpf(c) + s - 1) + v
        S += r
        if abs(r) < mp.mpf("1e-40") * abs(S):
            break
    return S


def hypoexp_cdf(b1: float, b2: float, t: float) -> float:
    """Closed-form distribution function of Exp(b1) + Exp(b2), b1 != b2."""
    return 1.0 - (b2 * math.exp(-b1 * t) - b1 * math.exp(-b2 * t)) / (b2 - b1)


def random_discrete(rng: np.random.Generator, n_atoms: int) -> DiscreteDist:
    """Random discrete distribution with distinct non-negative atom values."""
    values = np.unique(np.round(rng.uniform(0.0, 20.0, size=n_atoms), 6))
    while values.size < n_atoms:
        values = np.unique(np.concatenate([values, rng.uniform(0.0, 20.0, size=n_atoms)]))
    values = values[:n_atoms]
    raw = rng.uniform(0.1, 1.0, size=n_atoms)
    probs = raw / math.fsum(raw.tolist())
    return DiscreteDist(list(zip(values.tolist(), probs.tolist())))


@cache
def analytic_bias_table() -> dict[tuple[float, float, int], float]:
    """Analytic estimator bias at every reference design point (cached)."""
    out: dict[tuple[float, float, int], float] = {}
    for alpha, lam, n, *_ in MC_REFERENCE:
        out[(alpha, lam, n)] = bias(BiasQuery(alpha=alpha, lam=lam, n=n))
    return out


def tilting_agrees(check, k: float = 4.0) -> bool:
    """Both Monte Carlo routes agree within k combined standard errors."""
    return abs(check.lhs_mc - check.rhs_analytic) <= k * math.hypot(check.lhs_se, check.rhs_se)
