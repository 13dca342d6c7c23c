"""Kummer's confluent hypergeometric function 1F1(a; b; x) for real arguments.

Two regimes: the Maclaurin series for moderate |x| and the large-argument
expansion beyond ``SeriesControl.asymptotic_switch_radius``. Negative
arguments are folded onto positive ones with Kummer's transformation so the
series never alternates in sign beyond a small window around the origin.
"""

from __future__ import annotations

import numpy as np

from ..errors import ParameterError
from ._elementary import SeriesControl, cospi, rgamma

DEFAULT_CONTROL = SeriesControl(rel_tol=1e-16, max_terms=2000, asymptotic_switch_radius=30.0)

# below this |x| negative arguments are summed directly
_DIRECT_NEGATIVE = 2.0


def _check_b(b):
    if b <= 0 and b == np.round(b):
        raise ParameterError(f"1F1 is undefined for non-positive integer b (got b={b})")


def _series(a, b, x, control):
    x = np.asarray(x, dtype=float)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(control.max_terms):
        term = term * ((a + k) / (b + k)) * x / (k + 1)
        total = total + term
        if k + 1 > abs(a) and np.all(np.abs(term) <= control.rel_tol * np.abs(total)):
            break
    return total


def _asymptotic_scaled(a, b, x, control):
    """exp(-x) * 1F1(a; b; x) for large positive x.

    Returns the value and the magnitude of the last retained term relative to
    the sum, a cheap estimate of the truncation error.
    """
    x = np.asarray(x, dtype=float)
    # exponential part: Gamma(b)/Gamma(a) x^(a-b) sum (b-a)_k (1-a)_k / (k! x^k)
    s1 = np.ones_like(x)
    term = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    for k in range(control.max_terms):
        nxt = term * (b - a + k) * (1 - a + k) / ((k + 1) * x)
        # stop at convergence or just before the terms start to grow
        active &= np.abs(nxt) <= np.abs(term)
        active &= np.abs(term) > control.rel_tol * np.abs(s1)
        if not np.any(active):
            break
        s1 = np.where(active, s1 + nxt, s1)
        term = np.where(active, nxt, term)
        if np.all(nxt == 0):
            break
    err = np.abs(term) / np.maximum(np.abs(s1), 1e-300)
    exp_part = rgamma(a) * np.power(x, a - b) * s1
    # algebraic part, exponentially small relative to the first for x > 0
    alg = np.zeros_like(x)
    ra = rgamma(b - a)
    if ra != 0.0:
        s2 = np.ones_like(x)
        term = np.ones_like(x)
        active = np.ones(x.shape, dtype=bool)
        for k in range(control.max_terms):
            nxt = term * (a + k) * (a - b + 1 + k) / ((k + 1) * (-x))
            active &= np.abs(nxt) < np.abs(term)
            active &= np.abs(term) > control.rel_tol * np.abs(s2)
            if not np.any(active):
                break
            s2 = np.where(active, s2 + nxt, s2)
            term = np.where(active, nxt, term)
            if np.all(nxt == 0):
                break
        alg = cospi(a) * ra * np.power(x, -a) * s2 * np.exp(-x)
    return (exp_part + alg) / rgamma(b), err


# the series is still usable (no overflow) up to here
_SERIES_CEILING = 600.0
_ASYMPTOTIC_ACCEPT = 1e-15


def _large_scaled(a, b, x, control):
    val, err = _asymptotic_scaled(a, b, x, control)
    redo = (err > _ASYMPTOTIC_ACCEPT) & (x <= _SERIES_CEILING)
    if np.any(redo):
        val[redo] = np.exp(-x[redo]) * _series(a, b, x[redo], control)
    return val


def _is_nonpositive_int(a):
    return a <= 0 and a == np.round(a)


def kummer_1f1_scaled(a, b, x, control=DEFAULT_CONTROL):
    """Return exp(-x) * 1F1(a; b; x), finite for arbitrarily large positive x."""
    a = float(a)
    b = float(b)
    _check_b(b)
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ParameterError("1F1 argument must be finite")
    xs = np.atleast_1d(arr)
    out = np.empty(xs.shape)
    R = control.asymptotic_switch_radius
    if _is_nonpositive_int(a):
        out[:] = np.exp(-xs) * _series(a, b, xs, control)
        return out.reshape(arr.shape)[()] if arr.shape else out[0]
    neg = xs < -_DIRECT_NEGATIVE
    if np.any(neg):
        # exp(-x) 1F1(a;b;x) = 1F1(b-a; b; -x)
        out[neg] = kummer_1f1(b - a, b, -xs[neg], control)
    mid = ~neg & (xs <= R)
    if np.any(mid):
        out[mid] = np.exp(-xs[mid]) * _series(a, b, xs[mid], control)
    big = xs > R
    if np.any(big):
        out[big] = _large_scaled(a, b, xs[big], control)
    return out.reshape(arr.shape)[()] if arr.shape else out[0]


def kummer_1f1(a, b, x, control=DEFAULT_CONTROL):
    """Confluent hypergeometric function 1F1(a; b; x) for real a, b, x."""
    a = float(a)
    b = float(b)
    _check_b(b)
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ParameterError("1F1 argument must be finite")
    xs = np.atleast_1d(arr)
    out = np.empty(xs.shape)
    R = control.asymptotic_switch_radius
    if _is_nonpositive_int(a):
        out[:] = _series(a, b, xs, control)
        return out.reshape(arr.shape)[()] if arr.shape else out[0]
    neg = xs < -_DIRECT_NEGATIVE
    if np.any(neg):
        out[neg] = np.exp(xs[neg]) * kummer_1f1(b - a, b, -xs[neg], control)
    mid = ~neg & (xs <= R)
    if np.any(mid):
        out[mid] = _series(a, b, xs[mid], control)
    big = xs > R
    if np.any(big):
        with np.errstate(over="ignore"):
            out[big] = np.exp(xs[big]) * _large_scaled(a, b, xs[big], control)
    return out.reshape(arr.shape)[()] if arr.shape else out[0]


def kummer_series(a, b, x, control=DEFAULT_CONTROL):
    """Plain Maclaurin series, exposed for seam checks against the expansion."""
    _check_b(float(b))
    return _series(float(a), float(b), np.asarray(x, dtype=float), control)


def kummer_asymptotic(a, b, x, control=DEFAULT_CONTROL):
    """Large-argument expansion (unscaled), exposed for seam checks."""
    _check_b(float(b))
    x = np.asarray(x, dtype=float)
    out = np.exp(x) * _asymptotic_scaled(float(a), float(b), np.atleast_1d(x), control)[0].reshape(x.shape)
    return out if out.ndim else out[()]
