"""Scalar special functions behind the closed forms.

Provides the log-gamma function, the regularized upper incomplete gamma
function Q(s, x) = Gamma(s, x)/Gamma(s), Kummer's confluent hypergeometric
function 1F1, and the two-variable confluent (Humbert) series needed by the
gamma-sum distribution function.

Everything is arranged so that summed series have non-negative terms and
large prefactors live in log space: shape parameters beyond a thousand are
routine.  All functions are pure and safe for concurrent callers.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "log_gamma",
    "reg_gamma_q",
    "kummer_1f1",
    "log_kummer_1f1",
    "log_humbert_phi2",
]

_TERM_CAP = 100_000
_REL_EPS = 1e-16        # a term this small relative to the sum is negligible
_STREAK = 3             # consecutive negligible terms required to stop
_RESCALE_LIMIT = 1e250
_LOG_MAX = 709.0        # exp() overflows just above this
_TAYLOR_ARG_MAX = 4.0e4  # beyond this the direct series is too long; use the large-x expansion


def log_gamma(s: float) -> float:
    """Natural log of the gamma function for s > 0."""
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise ValueError(f"log_gamma requires finite s > 0, got {s!r}")
    return math.lgamma(s)


def _stirling_defect(s: float) -> float:
    # s*ln(s) - s - lgamma(s) without cancellation for large s
    if s < 18.0:
        return s * math.log(s) - s - math.lgamma(s)
    r = 1.0 / s
    r2 = r * r
    corr = r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))))
    return 0.5 * math.log(s / (2.0 * math.pi)) - corr


def _log_gamma_prefactor(s: float, x: np.ndarray) -> np.ndarray:
    # ln(x^s e^{-x} / Gamma(s)), stable near x ~ s where the direct form cancels
    out = np.empty_like(x)
    u = (x - s) / s
    near = np.abs(u) <= 0.5
    if near.any():
        un = u[near]
        out[near] = _stirling_defect(s) + s * (np.log1p(un) - un)
    far = ~near
    if far.any():
        xf = x[far]
        out[far] = s * np.log(xf) - xf - math.lgamma(s)
    return out


def _gamma_p_series(s: float, x: np.ndarray) -> np.ndarray:
    # lower regularized P(s,x) for x < s+1; terms decrease monotonically
    ax = _log_gamma_prefactor(s, x)
    term = np.full(x.shape, 1.0 / s)
    total = term.copy()
    streak = np.zeros(x.shape, dtype=np.int64)
    for k in range(1, _TERM_CAP):
        term = term * x / (s + k)
        total += term
        streak = np.where(term < _REL_EPS * total, streak + 1, 0)
        if (streak >= _STREAK).all():
            return np.exp(ax) * total
    raise RuntimeError(f"incomplete gamma series hit the {_TERM_CAP}-term cap at s={s}")


def _gamma_q_contfrac(s: float, x: np.ndarray) -> np.ndarray:
    # upper regularized Q(s,x) for x >= s+1 by the modified Lentz continued fraction
    ax = _log_gamma_prefactor(s, x)
    tiny = 1e-300
    b = x + 1.0 - s
    c = np.full(x.shape, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, _TERM_CAP):
        an = -i * (i - s)
        b = b + 2.0
        d = an * d + b
        np.copyto(d, tiny, where=np.abs(d) < tiny)
        c = b + an / c
        np.copyto(c, tiny, where=np.abs(c) < tiny)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) < 1e-15):
            return np.exp(ax) * h
    raise RuntimeError(f"incomplete gamma continued fraction hit the {_TERM_CAP}-term cap at s={s}")


def reg_gamma_q(s: float, x):
    """Regularized upper incomplete gamma Q(s, x) for s > 0, x >= 0.

    Accepts a scalar or an ndarray for x.  Power series for x < s+1,
    continued fraction otherwise, both with a log-space prefactor.
    """
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise ValueError(f"reg_gamma_q requires finite s > 0, got {s!r}")
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    flat = np.atleast_1d(xa).ravel().copy()
    if not np.isfinite(flat).all() or (flat < 0).any():
        raise ValueError("reg_gamma_q requires finite x >= 0")
    out = np.ones_like(flat)
    lo = flat > 0
    series = lo & (flat < s + 1.0)
    if series.any():
        out[series] = 1.0 - _gamma_p_series(s, flat[series])
    cf = lo & ~series
    if cf.any():
        out[cf] = _gamma_q_contfrac(s, flat[cf])
    if scalar:
        return float(out[0])
    return out.reshape(xa.shape)


def _log_1f1_taylor(a: float, b: float, y: np.ndarray) -> np.ndarray:
    # log of sum_k (a)_k y^k / ((b)_k k!) for y >= 0; rescaled to dodge overflow
    term = np.ones_like(y)
    total = np.ones_like(y)
    logscale = np.zeros_like(y)
    streak = np.zeros(y.shape, dtype=np.int64)
    for k in range(_TERM_CAP):
        term = term * y * (a + k) / ((b + k) * (k + 1.0))
        total = total + term
        big = total > _RESCALE_LIMIT
        if big.any():
            f = total[big]
            logscale[big] += np.log(f)
            term[big] /= f
            total[big] = 1.0
        streak = np.where(term < _REL_EPS * total, streak + 1, 0)
        if (streak >= _STREAK).all():
            return logscale + np.log(total)
    raise RuntimeError(
        f"confluent hypergeometric series hit the {_TERM_CAP}-term cap (a={a}, b={b}, max arg={float(np.max(y))})"
    )


def _log_1f1_large_arg(a: float, b: float, y: float) -> float | None:
    """Large-argument expansion of 1F1(a;b;y), or None when it cannot reach accuracy.

    1F1(a;b;y) ~ Gamma(b)/Gamma(a) e^y y^(a-b) sum_k (b-a)_k (1-a)_k / (k! y^k).
    The complementary y^(-a) branch must be verifiably negligible.
    """
    if a <= 0.0 or b <= a:
        return None
    s1 = 1.0
    t = 1.0
    k = 0
    while k < 500:
        t_next = t * (b - a + k) * (1.0 - a + k) / ((k + 1.0) * y)
        if k > 0 and abs(t_next) >= abs(t):
            break
        t = t_next
        s1 += t
        k += 1
        if abs(t) < 1e-17 * abs(s1):
            break
    if s1 <= 0.0 or abs(t) > 1e-11 * abs(s1):
        return None
    log_second = math.lgamma(a) - math.lgamma(b - a) + (b - 2.0 * a) * math.log(y) - y
    if log_second > math.log(1e-13):
        return None
    return math.lgamma(b) - math.lgamma(a) + y + (a - b) * math.log(y) + math.log(s1)


def log_kummer_1f1(a: float, b: float, x):
    """Natural log of 1F1(a; b; x) for a >= 0, b > 0 (and b > a when x < 0).

    Negative arguments go through the reflection
    1F1(a;b;x) = e^x 1F1(b-a;b;-x) so every summed series has positive terms.
    Accepts a scalar or ndarray x.
    """
    a = float(a)
    b = float(b)
    if not math.isfinite(b) or b <= 0.0:
        raise ValueError(f"kummer_1f1 requires finite b > 0, got {b!r}")
    if not math.isfinite(a) or a < 0.0:
        raise ValueError(f"kummer_1f1 supports a >= 0 only, got {a!r}")
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    flat = np.atleast_1d(xa).ravel()
    if not np.isfinite(flat).all():
        raise ValueError("kummer_1f1 requires finite x")
    if (flat < 0).any() and b <= a:
        raise ValueError(f"kummer_1f1 with x < 0 requires b > a, got a={a}, b={b}")
    out = np.empty_like(flat)
    neg = flat < 0
    if neg.any():
        out[neg] = flat[neg] + _log_1f1_pos(b - a, b, -flat[neg])
    pos = ~neg
    if pos.any():
        out[pos] = _log_1f1_pos(a, b, flat[pos])
    if scalar:
        return float(out[0])
    return out.reshape(xa.shape)


def _log_1f1_pos(a: float, b: float, y: np.ndarray) -> np.ndarray:
    out = np.empty_like(y)
    small = y <= _TAYLOR_ARG_MAX
    if small.any():
        out[small] = _log_1f1_taylor(a, b, y[small])
    big = ~small
    if big.any():
        vals = []
        for yv in y[big]:
            lg = _log_1f1_large_arg(a, b, float(yv))
            if lg is None:
                lg = float(_log_1f1_taylor(a, b, np.array([float(yv)]))[0])
            vals.append(lg)
        out[big] = vals
    return out


def kummer_1f1(a: float, b: float, x: float) -> float:
    """Kummer's confluent hypergeometric function 1F1(a; b; x)."""
    lg = log_kummer_1f1(a, b, float(x))
    if lg > _LOG_MAX:
        raise OverflowError(f"1F1({a}; {b}; {x}) overflows double precision (log value {lg:.1f})")
    return math.exp(lg)


def log_humbert_phi2(a: float, c: float, x, y):
    """Log of the two-variable confluent series with unit second parameter.

    Evaluates ln sum_{k,m>=0} (a)_k x^k y^m / ((c)_{k+m} k! m!) for a > 0,
    c > 0 and x, y >= 0 (elementwise over matching arrays).  This is the
    Humbert Phi2 series specialized to second numerator parameter 1; it is
    the reduced form taken by the distribution function of a sum of two
    independent gamma variables with distinct rates.
    """
    a = float(a)
    c = float(c)
    if not (math.isfinite(a) and a > 0.0 and math.isfinite(c) and c > 0.0):
        raise ValueError(f"log_humbert_phi2 requires a > 0 and c > 0, got a={a!r}, c={c!r}")
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    scalar = xa.ndim == 0 and ya.ndim == 0
    xf, yf = np.broadcast_arrays(np.atleast_1d(xa).astype(float), np.atleast_1d(ya).astype(float))
    xf = xf.ravel().copy()
    yf = yf.ravel().copy()
    if (xf < 0).any() or (yf < 0).any() or not np.isfinite(xf).all() or not np.isfinite(yf).all():
        raise ValueError("log_humbert_phi2 requires finite x >= 0 and y >= 0")
    # diagonal recursion: v_s carries the pure-x term, r_s the full degree-s layer
    v = np.ones_like(xf)
    r = np.ones_like(xf)
    total = np.ones_like(xf)
    logscale = np.zeros_like(xf)
    streak = np.zeros(xf.shape, dtype=np.int64)
    for s in range(1, _TERM_CAP):
        v = v * (a + s - 1.0) * xf / (s * (c + s - 1.0))
        r = yf * r / (c + s - 1.0) + v
        total = total + r
        big = total > _RESCALE_LIMIT
        if big.any():
            f = total[big]
            logscale[big] += np.log(f)
            r[big] /= f
            v[big] /= f
            total[big] = 1.0
        streak = np.where(r < _REL_EPS * total, streak + 1, 0)
        if (streak >= _STREAK).all():
            out = logscale + np.log(total)
            if scalar:
                return float(out[0])
            return out.reshape(np.broadcast_shapes(xa.shape, ya.shape))
    raise RuntimeError(
        f"two-variable confluent series hit the {_TERM_CAP}-term cap "
        f"(a={a}, c={c}, max x={float(np.max(xf))}, max y={float(np.max(yf))})"
    )
