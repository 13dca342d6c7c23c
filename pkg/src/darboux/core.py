"""Family-independent first-order Darboux machinery.

Conventions: H = -1/2 d^2/dx^2 + V, seed u with H1 u = eps u, superpotential
f = u'/u, intertwiner A = -d/dx + f and partner V2 = f^2 - V1 + 2 eps.

Seeds report values as (mantissa, log_scale) with u = mantissa * exp(log_scale)
and a real log_scale, so that seeds growing like exp(x^2/2) or exp(|z|) can be
handled far beyond the floating-point range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import numerics
from .errors import DegenerateMapError, DomainError, ZeroCrossingError
from .numerics import Grid1D

FAMILY_TAGS = ("harmonic", "bender_boettcher", "custom")
ZERO_THRESHOLD = 1e-8


# ---------------------------------------------------------------------------
# domains

@dataclass(frozen=True)
class ComplexContour:
    """Sampled path x(t) in the complex plane, t strictly increasing."""

    t: np.ndarray
    x: np.ndarray
    asymptotic_angles: tuple = (0.0, np.pi)

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        x = np.asarray(self.x, dtype=complex)
        if t.ndim != 1 or t.shape != x.shape or t.size < 3:
            raise DomainError("contour needs matching 1-d t and x arrays with >= 3 samples")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(x))):
            raise DomainError("contour samples must be finite")
        if np.any(np.diff(t) <= 0):
            raise DomainError("contour parameter must be strictly increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)

    def point(self, t):
        """Piecewise-linear interpolation between samples (exact for polygonal paths)."""
        t = np.asarray(t, dtype=float)
        return np.interp(t, self.t, self.x.real) + 1j * np.interp(t, self.t, self.x.imag)

    def direction(self, t=None):
        """Unit tangent dx/dt at the samples (or at given t)."""
        tt = self.t if t is None else np.asarray(t, dtype=float)
        dx = np.gradient(self.x, self.t)
        d = np.interp(tt, self.t, dx.real) + 1j * np.interp(tt, self.t, dx.imag)
        return d / np.abs(d)

    def refined(self, resolution: float) -> "ComplexContour":
        n = int(np.ceil((self.t[-1] - self.t[0]) / resolution)) + 1
        t = np.union1d(np.linspace(self.t[0], self.t[-1], max(n, 3)), self.t)
        return ComplexContour(t, self.point(t), self.asymptotic_angles)


def _domain_points(domain, resolution=None):
    """(parameter, points) for a Grid1D, ComplexContour or explicit array."""
    if isinstance(domain, Grid1D):
        if resolution is not None and domain.spacing > resolution:
            n = int(np.ceil((domain.hi - domain.lo) / resolution)) + 1
            pts = np.linspace(domain.lo, domain.hi, n)
        else:
            pts = domain.points
        return pts, pts
    if isinstance(domain, ComplexContour):
        c = domain.refined(resolution) if resolution is not None else domain
        return c.t, c.x
    pts = np.atleast_1d(np.asarray(domain))
    if pts.size == 0:
        raise DomainError("empty domain")
    if np.iscomplexobj(pts):
        return np.arange(pts.size, dtype=float), pts
    pts = np.sort(pts.astype(float))
    return pts, pts


# ---------------------------------------------------------------------------
# seeds

class SeedSolution:
    """A solution u of -u''/2 + V1 u = eps u.

    Subclasses implement ``jet(x)`` returning (u, u', u'' or None, log_scale)
    with the first three scaled by exp(-log_scale).
    """

    family_tag = "custom"

    def __init__(self, epsilon: float, params: Optional[dict] = None):
        self.epsilon = float(epsilon)
        self.params = dict(params or {})

    def jet(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def scaled(self, x):
        u, _, _, ls = self.jet(x)
        return u, ls

    def evaluate(self, x):
        """(u, u') in plain floating point; may overflow for large |x|."""
        u, du, _, ls = self.jet(x)
        with np.errstate(over="ignore"):
            s = np.exp(ls)
        return u * s, du * s

    def log_derivative(self, x):
        u, du, _, _ = self.jet(x)
        return du / u

    def log_derivative_prime(self, x):
        """f' = u''/u - f^2 when u'' is known, else a 4th-order difference of f."""
        u, du, d2u, _ = self.jet(x)
        f = du / u
        if d2u is not None:
            return d2u / u - f * f
        x = np.asarray(x)
        h = 1e-3 * np.maximum(1.0, np.abs(x)) ** -1
        fp = [self.log_derivative(x + k * h) for k in (-2, -1, 1, 2)]
        return (fp[0] - 8 * fp[1] + 8 * fp[2] - fp[3]) / (12 * h)


class CallableSeed(SeedSolution):
    """Seed built from plain callables u, u' (and optionally u'')."""

    def __init__(self, u: Callable, du: Callable, epsilon: float, d2u: Optional[Callable] = None,
                 family_tag: str = "custom", params: Optional[dict] = None):
        super().__init__(epsilon, params)
        if family_tag not in FAMILY_TAGS:
            raise DomainError(f"unknown family tag {family_tag!r}")
        self.family_tag = family_tag
        self._u, self._du, self._d2u = u, du, d2u

    def jet(self, x):
        x = np.asarray(x)
        u = np.asarray(self._u(x), dtype=complex) * np.ones(np.shape(x))
        du = np.asarray(self._du(x), dtype=complex) * np.ones(np.shape(x))
        d2u = None if self._d2u is None else np.asarray(self._d2u(x), dtype=complex) * np.ones(np.shape(x))
        return u, du, d2u, np.zeros(np.shape(x))


# ---------------------------------------------------------------------------
# zero-free check

@dataclass
class ZeroFreeReport:
    min_abs_u: float
    argmin_point: complex
    verdict: bool
    scan_resolution: float
    threshold: float = ZERO_THRESHOLD
    sign_change: bool = False


def _relative_modulus(logabs, window):
    # |u| relative to the largest |u| within +-window samples
    n = logabs.size
    pad = np.pad(logabs, window, mode="edge")
    local = np.max(np.lib.stride_tricks.sliding_window_view(pad, 2 * window + 1), axis=1)[:n]
    return np.exp(logabs - local)


def _predicted_log(la, fa, xa, lb, fb, xb, x):
    # log|u(x)| from both neighbours with the trapezoid of Re(f dx); f' errors cancel
    left = la + np.real(fa * (x - xa))
    right = lb - np.real(fb * (xb - x))
    both = np.isfinite(left) & np.isfinite(right)
    return np.where(both, 0.5 * (left + right), np.fmax(left, right))


def _predicted_modulus(logabs, f, pts):
    """|u| relative to the value extrapolated from neighbouring samples via f = u'/u."""
    n = logabs.size
    if n < 3:
        return np.ones(n)
    with np.errstate(invalid="ignore", over="ignore"):
        f = np.where(np.isfinite(f), f, np.nan)
        pred = np.empty(n)
        pred[1:-1] = _predicted_log(logabs[:-2], f[:-2], pts[:-2], logabs[2:], f[2:], pts[2:], pts[1:-1])
        pred[0] = logabs[1] - np.real(f[1] * (pts[1] - pts[0]))
        pred[-1] = logabs[-2] + np.real(f[-2] * (pts[-1] - pts[-2]))
        pred = np.where(np.isnan(pred), -np.inf, pred)
        rel = np.exp(np.minimum(logabs - pred, 0.0))
    return np.where(np.isfinite(logabs), rel, 0.0)


def _signs_change(a, b):
    return np.sign(a) * np.sign(b) <= 0


def _cell_has_crossing(u0, u1):
    re = _signs_change(u0.real, u1.real)
    im = _signs_change(u0.imag, u1.imag)
    return re & im


def _bisect_cell(seed, domain_point, a, b, depth=60):
    """Shrink a parameter cell [a, b] keeping a joint sign change of Re u, Im u."""
    ua, _ = seed.scaled(domain_point(np.array([a])))
    ua = ua[0]
    for _ in range(depth):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        um, _ = seed.scaled(domain_point(np.array([m])))
        um = um[0]
        if _cell_has_crossing(np.array([ua]), np.array([um]))[0]:
            b = m
        else:
            a, ua = m, um
    return 0.5 * (a + b)


def check_zero_free(seed: SeedSolution, domain, resolution: Optional[float] = None,
                    threshold: float = ZERO_THRESHOLD, window: int = 8) -> ZeroFreeReport:
    """Scan |u| on the (refined) domain for zeros.

    A cell is suspicious when Re u and Im u both change sign across it (an
    identically vanishing part counts as changing sign), or when |u| drops
    below ``threshold`` times its local maximum. Suspicious cells are bisected.
    """
    if resolution is not None and not resolution > 0:
        raise DomainError("resolution must be positive")
    tpar, pts = _domain_points(domain, resolution)
    if isinstance(domain, ComplexContour):
        domain_point = domain.point
    elif np.iscomplexobj(pts):
        def domain_point(t):
            return np.interp(t, tpar, pts.real) + 1j * np.interp(t, tpar, pts.imag)
    else:
        def domain_point(t):
            return np.asarray(t, dtype=float)
    u, ls = seed.scaled(pts)
    u = np.asarray(u, dtype=complex)
    with np.errstate(divide="ignore"):
        logabs = np.log(np.abs(u)) + ls
    try:
        with np.errstate(divide="ignore", invalid="ignore"):
            f = np.asarray(seed.log_derivative(pts), dtype=complex)
    except (DomainError, NotImplementedError):
        f = None
    rel = _relative_modulus(logabs, window) if f is None else _predicted_modulus(logabs, f, pts)
    k = int(np.argmin(rel))
    min_rel, argmin = float(rel[k]), pts[k]
    sign_change = False
    for c in np.nonzero(_cell_has_crossing(u[:-1], u[1:]))[0]:
        loc = _bisect_cell(seed, domain_point, tpar[c], tpar[c + 1])
        p = np.atleast_1d(domain_point(np.array([loc])))
        um, lm = seed.scaled(p)
        if f is None:
            ref = max(logabs[c], logabs[c + 1])
        else:
            with np.errstate(invalid="ignore"):
                ref = float(_predicted_log(logabs[c], f[c], pts[c], logabs[c + 1], f[c + 1], pts[c + 1], p[0]))
        with np.errstate(divide="ignore", over="ignore"):
            r = float(np.exp(min(np.log(np.abs(um[0])) + lm[0] - ref, 0.0)))
        if r < threshold:
            sign_change = True
            if r <= min_rel:
                min_rel, argmin = r, p[0]
    res = resolution if resolution is not None else float(np.min(np.diff(tpar))) if tpar.size > 1 else 0.0
    verdict = bool(min_rel > threshold)
    return ZeroFreeReport(min_rel, complex(argmin), verdict, float(res), threshold, sign_change)


def _require_zero_free(seed, domain, resolution=None):
    rep = check_zero_free(seed, domain, resolution)
    if not rep.verdict:
        raise ZeroCrossingError(f"seed vanishes near x = {rep.argmin_point}", location=rep.argmin_point)
    return rep


# ---------------------------------------------------------------------------
# superpotential and partner

@dataclass
class Superpotential:
    seed: SeedSolution

    def __call__(self, x):
        return self.seed.log_derivative(x)

    def derivative(self, x):
        return self.seed.log_derivative_prime(x)


def superpotential(seed: SeedSolution, domain=None, resolution=None) -> Superpotential:
    """f = u'/u; with a domain the seed is first checked to be zero-free there."""
    if domain is not None:
        _require_zero_free(seed, domain, resolution)
    return Superpotential(seed)


@dataclass
class PartnerPotential:
    points: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)
    parameter: Optional[np.ndarray] = None

    @property
    def samples(self):
        return list(zip(self.points, self.values))


def _eval_v(v1, pts):
    return np.asarray(v1(pts) if callable(v1) else v1, dtype=complex) * np.ones(pts.shape)


def partner_values(seed: SeedSolution, v1, x):
    """V2 = f^2 - V1 + 2 eps at the points x, without any zero check."""
    x = np.asarray(x)
    f = seed.log_derivative(x)
    return f * f - _eval_v(v1, x) + 2.0 * seed.epsilon


def partner_values_susy(seed: SeedSolution, x):
    """The equivalent form V2 = f^2/2 - f'/2 + eps."""
    x = np.asarray(x)
    f = seed.log_derivative(x)
    return 0.5 * f * f - 0.5 * seed.log_derivative_prime(x) + seed.epsilon


def partner_potential(seed: SeedSolution, v1, domain, check: bool = True, resolution=None,
                      meta: Optional[dict] = None) -> PartnerPotential:
    tpar, pts = _domain_points(domain)
    if pts.size == 0:
        raise DomainError("empty domain")
    if check:
        _require_zero_free(seed, domain, resolution)
    vals = partner_values(seed, v1, pts)
    info = {"family": seed.family_tag, "epsilon": seed.epsilon}
    info.update(seed.params)
    info.update(meta or {})
    return PartnerPotential(pts, vals, info, tpar)


# ---------------------------------------------------------------------------
# eigenfunctions

@dataclass
class EigenPair:
    energy: float
    points: np.ndarray
    wavefunction: np.ndarray
    normalization: complex


def apply_intertwiner(seed: SeedSolution, phi, dphi, x):
    """A phi = -phi' + f phi."""
    return -np.asarray(dphi) + seed.log_derivative(x) * np.asarray(phi)


def map_eigenfunction(seed: SeedSolution, phi, dphi, energy: float, x) -> EigenPair:
    """psi_n = C_n (-phi_n' + f phi_n) with |C_n|^-2 = 2 (E_n - eps).

    ``phi`` and ``dphi`` are samples (or callables) of the base eigenfunction
    and its derivative at the points ``x``.
    """
    x = np.asarray(x)
    phi = phi(x) if callable(phi) else np.asarray(phi)
    dphi = dphi(x) if callable(dphi) else np.asarray(dphi)
    gap = float(energy) - seed.epsilon
    if not gap > 0:
        raise DegenerateMapError(f"E_n = {energy} does not exceed eps = {seed.epsilon}")
    a_phi = apply_intertwiner(seed, phi, dphi, x)
    scale = np.linalg.norm(dphi) + np.linalg.norm(seed.log_derivative(x) * phi)
    if not np.linalg.norm(a_phi) > 1e-12 * scale:
        raise DegenerateMapError("A phi vanishes numerically")
    c = 1.0 / np.sqrt(2.0 * gap)
    return EigenPair(float(energy), x, c * a_phi, complex(c))


def literal_norm(seed: SeedSolution, phi, dphi, grid: Grid1D) -> float:
    """The plain integral of |A phi|^2 over the grid."""
    x = grid.points
    phi = phi(x) if callable(phi) else np.asarray(phi)
    dphi = dphi(x) if callable(dphi) else np.asarray(dphi)
    a_phi = apply_intertwiner(seed, phi, dphi, x)
    return float(numerics.quadrature(np.abs(a_phi) ** 2, grid))


def _integrate(values, tpar):
    n = values.size
    h = np.diff(tpar)
    if n % 2 == 1 and n >= 3 and np.allclose(h, h[0], rtol=1e-9, atol=0):
        return float(numerics.simpson(values, h[0]))
    return float(np.sum(0.5 * (values[1:] + values[:-1]) * h))


def inverse_seed(seed: SeedSolution, domain):
    """(parameter, points, log|1/u|, phase of 1/u) on the domain."""
    tpar, pts = _domain_points(domain)
    u, ls = seed.scaled(pts)
    u = np.asarray(u, dtype=complex)
    return tpar, pts, -(np.log(np.abs(u)) + ls), np.conj(u) / np.abs(u)


def tail_decays(logpsi, tail_fraction: float = 0.1, floor: float = np.log(1e-10)) -> bool:
    """|psi| below 1e-10 at both ends and non-increasing outward over the tails."""
    n = logpsi.size
    k = max(2, int(np.ceil(tail_fraction * n)))
    if not (logpsi[0] < floor and logpsi[-1] < floor):
        return False
    right = logpsi[-k:]
    left = logpsi[:k][::-1]
    tol = 1e-12
    return bool(np.all(np.diff(right) <= tol * np.abs(right[:-1])) and np.all(np.diff(left) <= tol * np.abs(left[:-1])))


def extra_state(seed: SeedSolution, domain) -> Optional[EigenPair]:
    """psi_eps = C/u normalized to one, or None when 1/u is not square integrable."""
    tpar, pts, logmod, phase = inverse_seed(seed, domain)
    peak = np.max(logmod)
    dens = np.exp(2.0 * (logmod - peak))
    norm2 = _integrate(dens, tpar)
    log_c = -peak - 0.5 * np.log(norm2)
    logpsi = logmod + log_c
    if not tail_decays(logpsi):
        return None
    psi = np.exp(logpsi) * phase
    return EigenPair(seed.epsilon, pts, psi, complex(np.exp(log_c)))


# ---------------------------------------------------------------------------
# residuals

def seed_residual(seed: SeedSolution, v1, points, direction=1.0, **kw) -> float:
    """Finite-difference residual of -u''/2 + V1 u = eps u at the points."""
    return numerics.ode_residual(seed.scaled, lambda x: _eval_v(v1, np.asarray(x)), seed.epsilon, points,
                                 direction=direction, scaled=True, **kw)


def seed_jet_residual(seed: SeedSolution, v1, points) -> float:
    """Same residual with the seed's own analytic u''."""
    pts = np.asarray(points)
    u, _, d2u, _ = seed.jet(pts)
    if d2u is None:
        raise DomainError("seed has no analytic second derivative")
    return numerics.jet_residual(u, d2u, _eval_v(v1, pts), seed.epsilon)


def intertwining_residual(seed: SeedSolution, v1, v2, test_function, grid: Grid1D, order: int = 4) -> float:
    """Discrete L2 norm of (A H1 - H2 A) phi, all derivatives by finite differences."""
    x = grid.points
    h = grid.spacing
    phi = np.asarray(test_function(x) if callable(test_function) else test_function, dtype=complex)
    V1 = _eval_v(v1, x)
    V2 = _eval_v(v2, x)
    f = seed.log_derivative(x)
    # H1 phi on x[2:-2], then A of it on x[4:-4]
    h1phi = numerics.apply_hamiltonian(phi, V1, h, order)
    a_h1 = -numerics.first_derivative(h1phi, h, order) + f[4:-4] * h1phi[2:-2]
    a_phi = -numerics.first_derivative(phi, h, order) + f[2:-2] * phi[2:-2]
    h2a = numerics.apply_hamiltonian(a_phi, V2[2:-2], h, order)
    r = a_h1 - h2a
    return float(np.sqrt(h * np.sum(np.abs(r) ** 2)))
