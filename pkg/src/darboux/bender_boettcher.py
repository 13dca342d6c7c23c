"""Darboux partners of V1 = -(ix)^N / 2 at eps = 0 on anti-Stokes contours.

The seed u = z^nu [alpha I_nu(z) + beta K_nu(z)], z = 2/(N+2) (ix)^((N+2)/2),
nu = 1/(N+2), is rewritten through the entire function

    F_mu(s) = sum_k s^k / (k! Gamma(mu + k + 1)),   s = z^2/4 = (ix)^(N+2)/(N+2)^2,

as u = A (ix) F_nu(s) + B F_{-nu}(s). No Bessel branch is involved, which
matters because the straight contour rays are mapped exactly onto the cut
arg z = +-pi. Away from the origin the same function is evaluated as

    u = (w/2)^nu [P I_nu(w) + Q K_nu(w)],   w = 2 sqrt(s), Re w >= 0,

with exponentially scaled I and K, so the recessive combination (P = 0)
keeps full relative accuracy. The Bessel form in z is kept as an
independent cross-check with explicit continuation across the cut.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import core, harmonic
from .core import ComplexContour
from .errors import BranchCutError, DomainError, ParameterError, RangeError, ZeroCrossingError
from .specfun import bessel_i, bessel_k


@dataclass(frozen=True)
class BBParams:
    N: float
    alpha: complex = 1.0
    beta: complex = 0.0

    def __post_init__(self):
        n = float(self.N)
        a, b = complex(self.alpha), complex(self.beta)
        if not (math.isfinite(n) and np.isfinite(a) and np.isfinite(b)):
            raise ParameterError("N, alpha and beta must be finite")
        if n < 2:
            raise ParameterError(f"N must be at least 2, got {n}")
        if a == 0 and b == 0:
            raise ParameterError("alpha and beta cannot both vanish")
        object.__setattr__(self, "N", n)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def nu(self) -> float:
        return 1.0 / (self.N + 2.0)


def _is_int(n):
    return float(n) == round(float(n))


def _ix_power(N, x):
    """(ix)^N on the principal branch; exact repeated multiplication for integer N."""
    ix = 1j * np.asarray(x, dtype=complex)
    if _is_int(N):
        return ix ** int(round(N)), ix
    bad = (ix.imag == 0) & (ix.real < 0)
    if np.any(bad):
        raise BranchCutError("(ix)^N with non-integer N is undefined on arg(ix) = pi")
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(ix == 0, 0j, np.exp(N * np.log(np.where(ix == 0, 1.0, ix))))
    return p, ix


def v1(N, x):
    p, _ = _ix_power(float(N), x)
    return -0.5 * p


def map_z_nu(N, x):
    """z = 2/(N+2) (ix)^((N+2)/2) on the principal branch, nu = 1/(N+2)."""
    N = float(N)
    ix = 1j * np.asarray(x, dtype=complex)
    if not _is_int(N) and np.any((ix.imag == 0) & (ix.real < 0)):
        raise BranchCutError("(ix)^((N+2)/2) with non-integer N is undefined on arg(ix) = pi")
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(ix == 0, 0j, 2.0 / (N + 2.0) * np.exp(0.5 * (N + 2.0) * np.log(np.where(ix == 0, 1.0, ix))))
    return z, 1.0 / (N + 2.0)


def ray_angles(N):
    """Asymptotic directions of x for t -> +inf and t -> -inf."""
    a = 2.0 * math.pi / (float(N) + 2.0)
    return -0.5 * math.pi + a, -0.5 * math.pi - a


def contour(N, scale: float = 20.0, count: int = 401, shift: float = 0.0) -> ComplexContour:
    """Two straight rays along the anti-Stokes directions, joined at -i*shift.

    t is the arclength measured from the joint, t in [-scale, scale].
    """
    if int(count) != count or count < 3 or count % 2 == 0:
        raise DomainError(f"contour count must be an odd integer >= 3, got {count}")
    if not scale > 0 or shift < 0:
        raise DomainError("scale must be positive and shift non-negative")
    plus, minus = ray_angles(N)
    t = np.linspace(-scale, scale, int(count))
    t[count // 2] = 0.0
    x = np.where(t >= 0, t * np.exp(1j * plus), -t * np.exp(1j * minus)) - 1j * shift
    if N == 2 and shift == 0:
        x = x.real + 0j
    return ComplexContour(t, x, (plus, minus))


# ---------------------------------------------------------------------------
# entire-series evaluation

_LOG_CACHE: dict = {}


def _lgamma_table(mu, kmax):
    key = round(mu, 15)
    tab = _LOG_CACHE.get(key)
    if tab is None or tab.size <= kmax:
        size = max(kmax + 1, 2 * (0 if tab is None else tab.size), 256)
        k = np.arange(size)
        tab = np.array([math.lgamma(kk + 1.0) + math.lgamma(mu + kk + 1.0) for kk in k])
        _LOG_CACHE[key] = tab
    return tab


def f_series(mu, s):
    """F_mu(s) as (mantissa, log_scale) with a real log_scale.

    Terms are summed relative to the largest one, k0, so only the small
    differences (k - k0) log s and lgamma differences are rounded.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    mant = np.empty(s.shape, dtype=complex)
    scale = np.zeros(s.shape)
    r = np.abs(s)
    kmax_all = np.ceil(np.sqrt(r) + 12.0 * r**0.25 + 40.0).astype(int)
    tab = _lgamma_table(mu, int(kmax_all.max()))
    for i, (si, km) in enumerate(zip(s, kmax_all)):
        if si == 0:
            mant[i] = math.exp(-tab[0])
            continue
        k = np.arange(km + 1)
        ls = cmath.log(si)
        k0 = int(np.argmax(k * ls.real - tab[: km + 1]))
        rel = (k - k0) * ls - (tab[: km + 1] - tab[k0])
        mant[i] = np.sum(np.exp(rel)) * cmath.exp(1j * k0 * ls.imag)
        scale[i] = k0 * ls.real - tab[k0]
    return mant, scale


# |w| below this uses the power series, above it the I/K form
SERIES_RADIUS = 2.0
# |w| above this uses the large-argument expansions for scaled I and K
ASYMPTOTIC_RADIUS = 300.0
# a growing coefficient this small relative to its parts is taken as exactly zero
RECESSIVE_SNAP = 1e-12


def _asym_terms(mu, w, terms=30):
    a = 1.0 + 0j
    plus = np.ones_like(w)
    minus = np.ones_like(w)
    m4 = 4.0 * mu * mu
    for k in range(1, terms):
        a = a * (m4 - (2 * k - 1) ** 2) / (8.0 * k)
        t = a / w**k
        plus = plus + t
        minus = minus + (-1) ** k * t
    return plus, minus


def scaled_ik(mu, w):
    """(e^{-w} I_mu(w), e^{w} K_mu(w)) for Re w >= 0."""
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    ie = np.empty(w.shape, dtype=complex)
    ke = np.empty(w.shape, dtype=complex)
    big = np.abs(w) > ASYMPTOTIC_RADIUS
    if np.any(~big):
        ws = w[~big]
        ie[~big] = np.asarray(bessel_i(mu, ws), dtype=complex) * np.exp(-ws)
        ke[~big] = np.asarray(bessel_k(abs(mu), ws), dtype=complex) * np.exp(ws)
    if np.any(big):
        wb = w[big]
        plus, minus = _asym_terms(mu, wb)
        root = np.sqrt(2.0 * np.pi * wb)
        sgn = np.where(wb.imag >= 0, 1.0, -1.0)
        ie[big] = (minus + 1j * sgn * np.exp(1j * sgn * mu * np.pi) * np.exp(-2.0 * wb) * plus) / root
        ke[big] = np.pi * plus / root
    return ie, ke


class BBSeed(core.SeedSolution):
    family_tag = "bender_boettcher"

    def __init__(self, params: BBParams):
        super().__init__(0.0, {"N": params.N, "alpha": params.alpha, "beta": params.beta})
        self.bp = params
        nu = params.nu
        c0 = (2.0 / (params.N + 2.0)) ** (2.0 * nu)
        k_fac = math.pi / (2.0 * math.sin(nu * math.pi))
        self.A = 2.0 ** (-nu) * c0 * (params.alpha - params.beta * k_fac)
        self.B = params.beta * 2.0 ** nu * k_fac

    def jet(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=complex))
        N = self.bp.N
        pN, ix = _ix_power(N, x)
        s = pN * ix * ix / (N + 2.0) ** 2
        w = 2.0 * np.sqrt(s)
        near = np.abs(w) < SERIES_RADIUS
        out = [np.empty(x.shape, dtype=complex) for _ in range(3)] + [np.zeros(x.shape)]
        for mask, fn in ((near, self._series_jet), (~near, self._bessel_jet)):
            if np.any(mask):
                for o, part in zip(out, fn(x[mask], pN[mask], ix[mask], s[mask], w[mask])):
                    o[mask] = part
        return tuple(out)

    def _series_jet(self, x, pN, ix, s, w):
        N, nu = self.bp.N, self.bp.nu
        pN1 = pN * ix
        sp = 1j * pN1 / (N + 2.0)
        spp = -(N + 1.0) * pN / (N + 2.0)
        parts = {mu: f_series(mu, s) for mu in (nu, nu + 1, nu + 2, -nu, 1 - nu, 2 - nu)}
        L = np.max(np.stack([p[1] for p in parts.values()]), axis=0)
        F = {mu: m * np.exp(sc - L) for mu, (m, sc) in parts.items()}
        A, B = self.A, self.B
        u = A * ix * F[nu] + B * F[-nu]
        du = A * (1j * F[nu] + ix * sp * F[nu + 1]) + B * sp * F[1 - nu]
        d2u = (A * (2j * sp * F[nu + 1] + ix * (spp * F[nu + 1] + sp * sp * F[nu + 2]))
               + B * (spp * F[1 - nu] + sp * sp * F[2 - nu]))
        return u, du, d2u, L

    def _bessel_jet(self, x, pN, ix, s, w):
        # F_mu(s) = (w/2)^-mu I_mu(w); I_-nu = I_nu + (2/pi) sin(nu pi) K_nu
        N, nu = self.bp.N, self.bp.nu
        half = np.exp(nu * np.log(0.5 * w))
        kappa = ix / (half * half)
        P = self.A * kappa + self.B
        P = np.where(np.abs(P) <= RECESSIVE_SNAP * (np.abs(self.A * kappa) + abs(self.B)), 0.0, P)
        Q = self.B * 2.0 * math.sin(nu * math.pi) / math.pi
        i0, k0 = scaled_ik(nu, w)
        i1, k1 = scaled_ik(nu - 1.0, w)
        # common real scale: the larger of the growing and decaying parts
        with np.errstate(divide="ignore"):
            lg = w.real + np.log(np.abs(P * i0) + np.abs(P * i1))
            ld = -w.real + np.log(np.abs(Q * k0) + np.abs(Q * k1))
        L = np.fmax(lg, ld)
        L = np.where(np.isfinite(L), L, 0.0)
        eg = np.where(P != 0, np.exp(np.where(P != 0, w - L, 0.0)), 0.0)
        ed = np.where(Q != 0, np.exp(np.where(Q != 0, -w - L, 0.0)), 0.0)
        G0 = P * i0 * eg + Q * k0 * ed
        G1 = P * i1 * eg - Q * k1 * ed
        wp = 0.5 * (N + 2.0) * w / x
        wpp = 0.25 * N * (N + 2.0) * w / (x * x)
        u = half * G0
        du = half * G1 * wp
        H = half * (G0 + (2.0 * nu - 1.0) / w * G1)
        d2u = H * wp * wp + half * G1 * wpp
        return u, du, d2u, L


def seed(params: BBParams) -> BBSeed:
    return BBSeed(params)


def seed_u(params: BBParams, x):
    """(u, u') in plain floating point."""
    return BBSeed(params).evaluate(x)


def _v1_of(params):
    return lambda x: v1(params.N, x)


# ---------------------------------------------------------------------------
# partner potential

def partner_v2(params: BBParams, path: ComplexContour, check: bool = True) -> core.PartnerPotential:
    s = BBSeed(params)
    if check:
        rep = core.check_zero_free(s, path)
        if not rep.verdict:
            raise ZeroCrossingError(f"alpha I_nu + beta K_nu vanishes near x = {rep.argmin_point}",
                                    location=rep.argmin_point)
    return core.partner_potential(s, _v1_of(params), path, check=False,
                                  meta={"N": params.N, "alpha": params.alpha, "beta": params.beta})


def _sheet_bessel(order, z_abs, theta):
    """I and K of real order at |z| e^{i theta}, theta anywhere on the Riemann surface."""
    m = int(np.round(theta / math.pi))
    w = z_abs * cmath.exp(1j * (theta - m * math.pi))
    iw = complex(bessel_i(order, w))
    kw = complex(bessel_k(abs(order), w))
    if m == 0:
        return iw, kw
    ratio = math.sin(m * order * math.pi) / math.sin(order * math.pi)
    return cmath.exp(1j * m * order * math.pi) * iw, cmath.exp(-1j * m * order * math.pi) * kw - 1j * math.pi * ratio * iw


def v2_bessel(params: BBParams, x):
    """V2 = -(ix)^N/2 [2 ((alpha I_{nu-1} - beta K_{nu-1})/(alpha I_nu + beta K_nu))^2 - 1]."""
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    N, nu = params.N, params.nu
    pN, ix = _ix_power(N, x)
    out = np.empty(x.shape, dtype=complex)
    for j, (xx, ixx) in enumerate(zip(x, ix)):
        theta = 0.5 * (N + 2.0) * cmath.phase(ixx)
        r = 2.0 / (N + 2.0) * abs(ixx) ** (0.5 * (N + 2.0))
        if r > 600.0:
            raise RangeError(f"|z| = {r:.4g} is beyond the range of the unscaled Bessel cross-check")
        i0, k0 = _sheet_bessel(nu, r, theta)
        im, km = _sheet_bessel(nu - 1.0, r, theta)
        ratio = (params.alpha * im - params.beta * km) / (params.alpha * i0 + params.beta * k0)
        out[j] = -0.5 * pN[j] * (2.0 * ratio * ratio - 1.0)
    return out


def pt_defect(values) -> np.ndarray:
    """|conj V(x(-t)) - V(x(t))| on a contour symmetric under x -> -conj(x)."""
    v = np.asarray(values)
    return np.abs(np.conj(v[::-1]) - v)


def asymptotic_ratio(params: BBParams, radius, branch: int = 1):
    """|V2/V1 - 1| at |x - joint| = radius on the ray t > 0 (branch=1) or t < 0."""
    plus, minus = ray_angles(params.N)
    ang = plus if branch > 0 else minus
    x = np.atleast_1d(np.asarray(radius, dtype=float)) * np.exp(1j * ang)
    v2 = core.partner_values(BBSeed(params), _v1_of(params), x)
    return np.abs(v2 / v1(params.N, x) - 1.0)


# ---------------------------------------------------------------------------
# SUSY classification

class SusyPhase(str, Enum):
    UNBROKEN = "unbroken"
    BROKEN = "broken"


def susy_classification(params: BBParams, path: ComplexContour) -> SusyPhase:
    """Unbroken iff 1/u is square integrable along the contour (extra level 0)."""
    s = BBSeed(params)
    rep = core.check_zero_free(s, path)
    if not rep.verdict:
        raise ZeroCrossingError(f"seed vanishes near x = {rep.argmin_point}", location=rep.argmin_point)
    return SusyPhase.UNBROKEN if core.extra_state(s, path) is not None else SusyPhase.BROKEN


def decaying_ratio(N, branch: int = 1) -> complex:
    """alpha/beta for which u decays along one ray (then SUSY is broken)."""
    nu = 1.0 / (float(N) + 2.0)
    return branch * 1j * math.pi * cmath.exp(-branch * 1j * nu * math.pi)


# ---------------------------------------------------------------------------
# residuals and cross-checks

# FD step relative to the local length 1/sqrt|2V|: e^w with |w| ~ 1e5 carries
# ~1e-11 relative rounding noise, which a smaller step would amplify
CONTOUR_FD_STEP = 5e-2


def seed_residual(params: BBParams, path: ComplexContour, analytic: bool = True,
                  h_rel: float = CONTOUR_FD_STEP) -> float:
    """Max relative residual of -u''/2 + V1 u = 0 along the contour.

    The finite-difference variant skips points where u vanishes exactly
    (the joint for alpha = 1, beta = 0), where every term is zero.
    """
    s = BBSeed(params)
    if analytic:
        return core.seed_jet_residual(s, _v1_of(params), path.x)
    u, _ = s.scaled(path.x)
    keep = np.asarray(u) != 0
    d = np.broadcast_to(np.asarray(path.direction()), path.x.shape)
    return core.seed_residual(s, _v1_of(params), path.x[keep], direction=d[keep], h_rel=h_rel)


def harmonic_reduction_defect(params: BBParams, x) -> float:
    """N = 2: max relative gap between u and the eps = 0 oscillator seed.

    u is expanded as u(0) e(x) + u'(0) o(x) in the even/odd oscillator basis.
    """
    if params.N != 2:
        raise ParameterError("the oscillator reduction needs N = 2")
    x = np.asarray(x, dtype=float)
    s = BBSeed(params)
    u, ls = s.scaled(x.astype(complex))
    u0, du0 = s.evaluate(np.array([0j]))
    e, o = harmonic.basis(0.0, x)
    ref = u0[0] * e + du0[0] * o
    # both carry their scale as exp(log_scale); compare in log-shifted form
    got = u * np.exp(ls - 0.5 * x * x)
    keep = ref != 0
    return float(np.max(np.abs(got[keep] - ref[keep]) / np.abs(ref[keep])))
