"""Bessel, modified Bessel and Hankel functions of real order, complex argument.

Everything is built on one scalar routine computing I and K of orders nu and
nu+1 in the closed right half-plane:

* K of the reduced order mu = nu - round(nu) from Temme's series (|z| < 2),
  Steed's continued fraction (2 <= |z| < R) or the Hankel asymptotic series
  (|z| >= R), followed by upward recurrence in the order, which is stable for K;
* I from the power series for |z| <= 2, otherwise from the continued fraction
  for I_{nu+1}/I_nu combined with the Wronskian.

The left half-plane, J, Y and the Hankel functions follow from rotation and
continuation formulas on the principal branch, arg z in (-pi, pi].
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import BranchCutError, ConvergenceError, ParameterError, PoleError
from ._elementary import RGAMMA_TAYLOR, SeriesControl, cospi, rgamma, sinpi

BESSEL_CONTROL = SeriesControl(rel_tol=1e-16, max_terms=2000, asymptotic_switch_radius=18.0)

_SMALL = 2.0
_TINY = 1e-300
_METHODS = (None, "auto", "series", "cf", "asymptotic")


def _gam12(mu):
    # Temme's gamma_1, gamma_2 and the reciprocals 1/G(1+mu), 1/G(1-mu), |mu| <= 1/2
    gam1 = 0.0
    gam2 = 0.0
    for k in range(len(RGAMMA_TAYLOR) - 1, 0, -1):
        if k % 2 == 0:
            gam1 = gam1 * mu * mu - RGAMMA_TAYLOR[k]
        else:
            gam2 = gam2 * mu * mu + RGAMMA_TAYLOR[k]
    return gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1


def _k_temme(mu, z, control):
    x2 = 0.5 * z
    pimu = math.pi * mu
    fact = 1.0 if abs(pimu) < 1e-15 else pimu / math.sin(pimu)
    d = -cmath.log(x2)
    e = mu * d
    fact2 = 1.0 if abs(e) < 1e-15 else cmath.sinh(e) / e
    gam1, gam2, gampl, gammi = _gam12(mu)
    ff = fact * (gam1 * cmath.cosh(e) + gam2 * fact2 * d)
    total = ff
    e = cmath.exp(e)
    p = 0.5 * e / gampl
    q = 0.5 / (e * gammi)
    c = 1.0
    dd = x2 * x2
    total1 = p
    for i in range(1, control.max_terms):
        ff = (i * ff + p + q) / (i * i - mu * mu)
        c = c * dd / i
        p = p / (i - mu)
        q = q / (i + mu)
        delta = c * ff
        total += delta
        delta1 = c * (p - i * ff)
        total1 += delta1
        if abs(delta) <= control.rel_tol * abs(total) and abs(delta1) <= control.rel_tol * abs(total1):
            break
    return total, total1 * 2.0 / z


def _k_steed(mu, z, control):
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - mu * mu
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    limit = 20 * control.max_terms
    for i in range(2, limit):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels) <= control.rel_tol * abs(s):
            break
    else:
        raise ConvergenceError(f"Steed's continued fraction did not converge at z={z}")
    h = a1 * h
    kmu = cmath.sqrt(math.pi / (2.0 * z)) * cmath.exp(-z) / s
    return kmu, kmu * (mu + z + 0.5 - h) / z


def _k_asymptotic_single(mu, z, control):
    four_mu2 = 4.0 * mu * mu
    total = 1.0 + 0j
    term = 1.0 + 0j
    for k in range(1, control.max_terms):
        nxt = term * (four_mu2 - (2 * k - 1) ** 2) / (k * 8.0 * z)
        if abs(nxt) > abs(term):
            break
        total += nxt
        term = nxt
        if abs(term) <= control.rel_tol * abs(total):
            break
    return cmath.sqrt(math.pi / (2.0 * z)) * cmath.exp(-z) * total


def _k_asymptotic(mu, z, control):
    return _k_asymptotic_single(mu, z, control), _k_asymptotic_single(mu + 1.0, z, control)


def _i_series(nu, z, control):
    # (z/2)^nu sum (z^2/4)^k / (k! Gamma(nu+k+1)); only used for |z| <= 2
    if z == 0:
        return (1.0 + 0j) if nu == 0 else 0j
    q = 0.25 * z * z
    term = complex(rgamma(nu + 1.0))
    total = term
    for k in range(control.max_terms):
        term = term * q / ((k + 1) * (nu + k + 1))
        total += term
        if abs(term) <= control.rel_tol * abs(total):
            break
    return cmath.exp(nu * cmath.log(0.5 * z)) * total


def _i_ratio(nu, z, control):
    # I_{nu+1}/I_nu by the modified Lentz method
    f = _TINY
    c = f
    d = 0j
    for k in range(1, 20 * control.max_terms):
        b = 2.0 * (nu + k) / z
        d = b + d
        d = _TINY if d == 0 else d
        c = b + 1.0 / c
        c = _TINY if c == 0 else c
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) <= control.rel_tol:
            return f
    raise ConvergenceError(f"continued fraction for I_(nu+1)/I_nu did not converge at z={z}")


def _ik_right(nu, z, control, method=None):
    """(I_nu, I_{nu+1}, K_nu, K_{nu+1}) for nu >= 0 and Re z >= 0, z != 0."""
    n = int(math.floor(nu + 0.5))
    mu = nu - n
    r = abs(z)
    R = control.asymptotic_switch_radius
    if method in (None, "auto"):
        method = "series" if r < _SMALL else ("cf" if r < R else "asymptotic")
    if method == "series":
        km, kp = _k_temme(mu, z, control)
    elif method == "cf":
        km, kp = _k_steed(mu, z, control)
    else:
        km, kp = _k_asymptotic(mu, z, control)
    for k in range(1, n + 1):
        km, kp = kp, km + 2.0 * (mu + k) / z * kp
    if r <= _SMALL or method == "series":
        i0 = _i_series(nu, z, control)
        i1 = _i_series(nu + 1.0, z, control)
    else:
        ratio = _i_ratio(nu, z, control)
        i0 = 1.0 / (z * (kp + ratio * km))
        i1 = ratio * i0
    return i0, i1, km, kp


def _check_branch(z):
    if z.imag == 0 and z.real < 0 and math.copysign(1.0, z.imag) < 0:
        raise BranchCutError(f"arg z = -pi exactly is ambiguous (z={z!r})")


def _ik(nu, z, control, method=None):
    """I and K of orders nu, nu+1 on the principal branch, nu >= 0."""
    if z.real >= 0:
        return _ik_right(nu, z, control, method)
    _check_branch(z)
    w = -z
    # z = w e^{i m pi}, m = +1 in the upper half-plane (and on the cut from above)
    m = 1 if z.imag >= 0 else -1
    i0, i1, k0, k1 = _ik_right(nu, w, control, method)
    ph = cmath.exp(1j * m * math.pi * nu)
    i0z = ph * i0
    i1z = -ph * i1
    k0z = k0 / ph - 1j * math.pi * m * i0
    k1z = -k1 / ph - 1j * math.pi * m * i1
    return i0z, i1z, k0z, k1z


# ---------------------------------------------------------------------------
# scalar kernels for the individual families, non-negative order

def _mul_i(z):
    return complex(-z.imag, z.real)


def _mul_neg_i(z):
    return complex(z.imag, -z.real)


def _j_pos(nu, z, control, method):
    if z == 0:
        return (1.0 + 0j) if nu == 0 else 0j
    _check_branch(z)
    if z.imag >= 0:
        i0, _, _, _ = _ik(nu, _mul_neg_i(z), control, method)
        return cmath.exp(0.5j * math.pi * nu) * i0
    i0, _, _, _ = _ik(nu, _mul_i(z), control, method)
    return cmath.exp(-0.5j * math.pi * nu) * i0


def _h1_direct_ok(z):
    # arg z in (-pi/2, pi]
    return z.imag >= 0 or z.real > 0


def _h2_direct_ok(z):
    # arg z in (-pi, pi/2]
    return z.imag < 0 or z.real > 0 or (z.real == 0 and z.imag > 0)


def _h1_direct(nu, z, control, method):
    _, _, k0, _ = _ik(nu, _mul_neg_i(z), control, method)
    return 2.0 / (math.pi * 1j) * cmath.exp(-0.5j * math.pi * nu) * k0


def _h2_direct(nu, z, control, method):
    _, _, k0, _ = _ik(nu, _mul_i(z), control, method)
    return -2.0 / (math.pi * 1j) * cmath.exp(0.5j * math.pi * nu) * k0


def _hankel_pair(nu, z, control, method):
    if z == 0:
        raise PoleError("Hankel functions are singular at z = 0")
    _check_branch(z)
    h1 = _h1_direct(nu, z, control, method) if _h1_direct_ok(z) else None
    h2 = _h2_direct(nu, z, control, method) if _h2_direct_ok(z) else None
    if h1 is None:
        h1 = 2.0 * _j_pos(nu, z, control, method) - h2
    if h2 is None:
        h2 = 2.0 * _j_pos(nu, z, control, method) - h1
    return h1, h2


def _scalar(kind, nu, z, control, method):
    """Any of the six functions at real order nu (negative allowed)."""
    if nu < 0:
        a = -nu
        if kind == "k":
            return _scalar("k", a, z, control, method)
        if kind == "i":
            extra = 0j if a == round(a) else (2.0 / math.pi) * float(sinpi(a)) * _scalar("k", a, z, control, method)
            return _scalar("i", a, z, control, method) + extra
        if kind == "h1":
            return cmath.exp(1j * math.pi * a) * _scalar("h1", a, z, control, method)
        if kind == "h2":
            return cmath.exp(-1j * math.pi * a) * _scalar("h2", a, z, control, method)
        c, s = float(cospi(a)), float(sinpi(a))
        if kind == "j":
            if a == round(a):
                return c * _scalar("j", a, z, control, method)
            return c * _scalar("j", a, z, control, method) - s * _scalar("y", a, z, control, method)
        if kind == "y":
            return s * _scalar("j", a, z, control, method) + c * _scalar("y", a, z, control, method)
        raise ParameterError(f"unknown function id {kind!r}")
    if kind == "i":
        if z == 0:
            return (1.0 + 0j) if nu == 0 else 0j
        return _ik(nu, z, control, method)[0]
    if kind == "k":
        if z == 0:
            raise PoleError("K is singular at z = 0")
        return _ik(nu, z, control, method)[2]
    if kind == "j":
        return _j_pos(nu, z, control, method)
    if kind == "h1":
        return _hankel_pair(nu, z, control, method)[0]
    if kind == "h2":
        return _hankel_pair(nu, z, control, method)[1]
    if kind == "y":
        h1, h2 = _hankel_pair(nu, z, control, method)
        return (h1 - h2) / 2j
    raise ParameterError(f"unknown function id {kind!r}")


def _evaluate(kind, nu, z, control, method):
    nu = float(nu)
    if not math.isfinite(nu):
        raise ParameterError("order must be finite")
    if method not in _METHODS:
        raise ParameterError(f"unknown method {method!r}")
    control = BESSEL_CONTROL if control is None else control
    arr = np.asarray(z)
    if not np.all(np.isfinite(arr)):
        raise ParameterError("Bessel argument must be finite")
    flat = np.atleast_1d(arr).astype(complex).ravel()
    out = np.empty(flat.shape, dtype=complex)
    for idx, zz in enumerate(flat):
        out[idx] = _scalar(kind, nu, complex(zz), control, method)
    return out.reshape(arr.shape)[()] if arr.shape else out[0]


def bessel_i(nu, z, control=None, method=None):
    """Modified Bessel function of the first kind I_nu(z)."""
    return _evaluate("i", nu, z, control, method)


def bessel_k(nu, z, control=None, method=None):
    """Modified Bessel function of the second kind K_nu(z)."""
    return _evaluate("k", nu, z, control, method)


def bessel_j(nu, z, control=None, method=None):
    """Bessel function of the first kind J_nu(z); negative order supported."""
    return _evaluate("j", nu, z, control, method)


def bessel_y(nu, z, control=None, method=None):
    """Bessel function of the second kind, defined as (H1 - H2)/(2i)."""
    return _evaluate("y", nu, z, control, method)


def hankel1(nu, z, control=None, method=None):
    return _evaluate("h1", nu, z, control, method)


def hankel2(nu, z, control=None, method=None):
    return _evaluate("h2", nu, z, control, method)


_FUNCS = {"i": bessel_i, "k": bessel_k, "j": bessel_j, "y": bessel_y, "h1": hankel1, "h2": hankel2}


def derivative(fn, nu, z, control=None, method=None):
    """d/dz of one of 'i', 'k', 'j', 'y', 'h1', 'h2' via the order recurrences."""
    try:
        f = _FUNCS[fn]
    except KeyError:
        raise ParameterError(f"unknown function id {fn!r}") from None
    z = np.asarray(z, dtype=complex)
    up = f(nu + 1.0, z, control, method)
    base = f(nu, z, control, method)
    with np.errstate(divide="ignore", invalid="ignore"):
        tail = np.where(z == 0, 0.0, nu / np.where(z == 0, 1.0, z) * base)
    if fn == "i":
        out = up + tail
    else:
        out = -up + tail
    return out[()] if np.ndim(out) == 0 else out


def bessel_j_complex_order(nu, z, control=None):
    """J_nu(z) for complex order by the power series; meant for modest |z|.

    The series alternates, so roughly exp(|Im z|) of relative accuracy is
    lost; callers keep |z| below about 10.
    """
    control = BESSEL_CONTROL if control is None else control
    nu = complex(nu)
    arr = np.asarray(z, dtype=complex)
    flat = np.atleast_1d(arr).ravel()
    out = np.empty(flat.shape, dtype=complex)
    r0 = complex(rgamma(np.complex128(nu + 1.0)))
    for idx, zz in enumerate(flat):
        zz = complex(zz)
        if zz == 0:
            raise PoleError("complex-order J is evaluated away from z = 0")
        _check_branch(zz)
        q = -0.25 * zz * zz
        term = r0
        total = term
        for k in range(control.max_terms):
            term = term * q / ((k + 1) * (nu + k + 1))
            total += term
            if abs(term) <= control.rel_tol * abs(total) and k > abs(q):
                break
        out[idx] = cmath.exp(nu * cmath.log(0.5 * zz)) * total
    return out.reshape(arr.shape)[()] if arr.shape else out[0]
