"""Complex partners of the harmonic oscillator V1 = x^2/2.

Seed (alpha = 1):
    u(x) = exp(-x^2/2) [ M((1-2eps)/4, 1/2, x^2) + beta x M((3-2eps)/4, 3/2, x^2) ]
evaluated as u = exp(x^2/2) g(x) with g built from exp(-y) M(a, b, y), so
nothing overflows however large |x| is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from . import core, numerics
from .errors import AdmissibilityError, DomainError, ParameterError, RangeError
from .numerics import Grid1D
from .specfun import gamma, hermite_h, kummer_1f1_scaled

MAX_LEVEL = 50
V_CAP = 1e6
FIGURE_GRID = Grid1D(-5.0, 5.0, 1001)
VERIFY_GRID = Grid1D(-12.0, 12.0, 2400)


def v1(x):
    return 0.5 * np.asarray(x) ** 2


@dataclass(frozen=True)
class HarmonicParams:
    epsilon: float
    beta: complex = 0j

    def __post_init__(self):
        eps = float(self.epsilon)
        beta = complex(self.beta)
        if not (math.isfinite(eps) and np.isfinite(beta)):
            raise ParameterError("epsilon and beta must be finite")
        if eps >= 0.5:
            raise RangeError(f"epsilon must lie below the ground level 1/2, got {eps}")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "beta", beta)


def beta_c(epsilon: float) -> float:
    """Largest |beta| on the real axis keeping the seed positive."""
    eps = float(epsilon)
    if eps >= 0.5:
        raise RangeError(f"beta_c needs epsilon < 1/2, got {eps}")
    return float(2.0 * gamma(0.75 - 0.5 * eps) / gamma(0.25 - 0.5 * eps))


def admissible(params: HarmonicParams) -> bool:
    b = params.beta
    return b.imag != 0 or abs(b.real) < beta_c(params.epsilon)


def require_admissible(params: HarmonicParams):
    if not admissible(params):
        bc = beta_c(params.epsilon)
        raise AdmissibilityError(
            f"beta={params.beta} lies on the real axis with |beta| >= beta_c={bc:.10g}; the seed has a zero",
            beta_c=bc,
        )


# ---------------------------------------------------------------------------
# seed

def _mt(a, b, y):
    return np.asarray(kummer_1f1_scaled(a, b, y), dtype=float)


def basis(epsilon: float, x):
    """Even and odd scaled solutions (e(x), o(x)); u = exp(x^2/2) (e + beta o).

    No admissibility check: any combination solves the seed equation.
    """
    x = np.asarray(x, dtype=float)
    y = x * x
    a1 = 0.25 - 0.5 * epsilon
    a2 = 0.75 - 0.5 * epsilon
    return _mt(a1, 0.5, y), x * _mt(a2, 1.5, y)


class HarmonicSeed(core.SeedSolution):
    family_tag = "harmonic"

    def __init__(self, params: HarmonicParams):
        super().__init__(params.epsilon, {"beta": params.beta, "alpha": 1.0})
        self.hp = params

    def jet(self, x):
        x = np.asarray(x, dtype=float)
        eps, beta = self.hp.epsilon, self.hp.beta
        y = x * x
        a1 = 0.25 - 0.5 * eps
        a2 = 0.75 - 0.5 * eps
        m1 = _mt(a1, 0.5, y)
        m1p = (2.0 * a1 - 1.0) * _mt(a1, 1.5, y)
        m1pp = (2.0 * a1 - 1.0) * ((a1 - 1.5) / 1.5) * _mt(a1, 2.5, y)
        m2 = _mt(a2, 1.5, y)
        m2p = ((a2 - 1.5) / 1.5) * _mt(a2, 2.5, y)
        m2pp = ((a2 - 1.5) / 1.5) * ((a2 - 2.5) / 2.5) * _mt(a2, 3.5, y)
        g = m1 + beta * x * m2
        gp = 2.0 * x * m1p + beta * (m2 + 2.0 * y * m2p)
        gpp = 4.0 * y * m1pp + 2.0 * m1p + beta * (6.0 * x * m2p + 4.0 * x * y * m2pp)
        u = g.astype(complex)
        du = x * g + gp
        d2u = (1.0 + y) * g + 2.0 * x * gp + gpp
        return u, du.astype(complex), d2u.astype(complex), 0.5 * y

    def log_derivative(self, x):
        u, du, _, _ = self.jet(x)
        return du / u


def seed(params: HarmonicParams) -> HarmonicSeed:
    return HarmonicSeed(params)


def seed_u(params: HarmonicParams, x):
    """(u, u') in plain floating point (overflows beyond |x| ~ 37)."""
    return HarmonicSeed(params).evaluate(x)


def seed_u_erf(beta: complex, x):
    """Closed form at eps = -1/2: u = exp(x^2/2) (1 + beta sqrt(pi)/2 erf x)."""
    from .specfun import erf

    x = np.asarray(x, dtype=float)
    return np.exp(0.5 * x * x) * (1.0 + complex(beta) * 0.5 * math.sqrt(math.pi) * np.asarray(erf(x)))


# ---------------------------------------------------------------------------
# base oscillator

def _check_level(n):
    if int(n) != n or n < 0:
        raise ParameterError(f"level must be a non-negative integer, got {n}")
    if n > MAX_LEVEL:
        raise RangeError(f"levels are limited to n <= {MAX_LEVEL}, got {n}")
    return int(n)


def oscillator_functions(n: int, x):
    """phi_n, phi_n' by the normalized three-term recurrence."""
    n = _check_level(n)
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    for k in range(n):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * x * cur - math.sqrt(k / (k + 1)) * prev
    return cur, -x * cur + math.sqrt(2.0 * n) * prev


def base_eigensystem(n: int, x):
    """(E_n, phi_n(x), phi_n'(x)) for the oscillator, E_n = n + 1/2."""
    phi, dphi = oscillator_functions(n, x)
    return n + 0.5, phi, dphi


# ---------------------------------------------------------------------------
# partner potential and spectrum

def partner_v2(params: HarmonicParams, grid=FIGURE_GRID, check: bool = True) -> core.PartnerPotential:
    require_admissible(params)
    s = HarmonicSeed(params)
    return core.partner_potential(s, v1, grid, check=check,
                                  meta={"beta": params.beta, "epsilon": params.epsilon})


def v2_values(params: HarmonicParams, x):
    """V2 at arbitrary real points, no checks."""
    return core.partner_values(HarmonicSeed(params), v1, np.asarray(x, dtype=float))


def pt_defect(values) -> np.ndarray:
    """|conj V(-x) - V(x)| on a grid symmetric about the origin."""
    v = np.asarray(values)
    return np.abs(np.conj(v[::-1]) - v)


def eigenfunction(params: HarmonicParams, n: int, x):
    """Closed form of psi_n with the Hermite polynomials and a log-domain prefactor."""
    n = _check_level(n)
    require_admissible(params)
    x = np.asarray(x, dtype=float)
    eps = params.epsilon
    log_norm = -0.5 * (0.5 * math.log(math.pi) + (n + 1) * math.log(2.0) + math.lgamma(n + 1) + math.log(n + 0.5 - eps))
    f = HarmonicSeed(params).log_derivative(x)
    bracket = np.asarray(hermite_h(n + 1, x)) + (f - x) * np.asarray(hermite_h(n, x))
    return np.exp(log_norm - 0.5 * x * x) * bracket


def mapped_eigenfunction(params: HarmonicParams, n: int, x) -> core.EigenPair:
    """Same state through the generic map applied to the recurrence-based phi_n."""
    e, phi, dphi = base_eigensystem(n, x)
    return core.map_eigenfunction(HarmonicSeed(params), phi, dphi, e, x)


def extra_state(params: HarmonicParams, grid=VERIFY_GRID):
    require_admissible(params)
    return core.extra_state(HarmonicSeed(params), grid)


def asymptotic_check(params: HarmonicParams, x_large: float) -> float:
    """|u |x|^(1/2+eps) exp(-x^2/2) - leading bracket| at a large |x|."""
    x = float(x_large)
    if abs(x) < 6:
        raise DomainError(f"asymptotic check needs |x| >= 6, got {x}")
    eps = params.epsilon
    u, _, _, _ = HarmonicSeed(params).jet(np.array([x]))
    scaled = u[0] * abs(x) ** (0.5 + eps)
    bracket = gamma(0.5) / gamma(0.25 - 0.5 * eps) + params.beta * gamma(1.5) / gamma(0.75 - 0.5 * eps) * math.copysign(1.0, x)
    return float(abs(scaled - bracket))


@dataclass
class HarmonicSpectrum:
    extra_level: Optional[float]
    oscillator_levels: list = field(default_factory=list)

    def lowest(self, k: int) -> list:
        levels = sorted(([self.extra_level] if self.extra_level is not None else []) + list(self.oscillator_levels))
        return levels[:k]


def spectrum(params: HarmonicParams, count: int = 10, verify_extra: bool = False) -> HarmonicSpectrum:
    """{eps} united with {n + 1/2}; with ``verify_extra`` the extra level is kept only if 1/u is normalizable."""
    require_admissible(params)
    extra = params.epsilon
    if verify_extra and extra_state(params) is None:
        extra = None
    return HarmonicSpectrum(extra, [n + 0.5 for n in range(int(count))])


def numerical_spectrum(params: HarmonicParams, grid=VERIFY_GRID, method: str = "auto") -> numerics.EigenSet:
    """Eigenvalues of the finite-difference H2."""
    require_admissible(params)
    mat = numerics.discretize_hamiltonian(lambda x: v2_values(params, x), grid)
    return numerics.eigenvalues(mat, method=method).sorted()


# ---------------------------------------------------------------------------
# figure data

def _refined_peaks(params, x, vals):
    # |V2| at the minimizer of |u| near each local minimum of |u| on the grid
    s = HarmonicSeed(params)
    u, ls = s.scaled(x)
    logabs = np.log(np.abs(u)) + ls
    peaks = np.abs(vals).copy()
    interior = np.nonzero((logabs[1:-1] <= logabs[:-2]) & (logabs[1:-1] <= logabs[2:]))[0] + 1
    for k in interior:
        def obj(t):
            uu, ll = s.scaled(np.array([t]))
            return float(np.log(np.abs(uu[0])) + ll[0])
        res = minimize_scalar(obj, bounds=(x[k - 1], x[k + 1]), method="bounded", options={"xatol": 1e-12})
        vpk = abs(complex(v2_values(params, np.array([res.x]))[0]))
        for j in (k - 1, k, k + 1):
            peaks[j] = max(peaks[j], vpk)
    return peaks


def figure_rows(params: HarmonicParams, grid=FIGURE_GRID):
    """Rows (x, re_v2, im_v2, epsilon, re_beta, im_beta, pt_defect, singular)."""
    require_admissible(params)
    x = grid.points
    vals = v2_values(params, x)
    peaks = _refined_peaks(params, x, vals)
    singular = (peaks > V_CAP) | ~np.isfinite(vals)
    mag = np.abs(vals)
    capped = np.where(mag > V_CAP, vals * (V_CAP / np.where(mag > 0, mag, 1.0)), vals)
    capped = np.where(np.isfinite(capped), capped, V_CAP)
    defect = pt_defect(capped)
    return [
        (float(xi), float(v.real), float(v.imag), params.epsilon, params.beta.real, params.beta.imag,
         float(d), int(sg))
        for xi, v, d, sg in zip(x, capped, defect, singular)
    ]


FIGURE_COLUMNS = ("x", "re_v2", "im_v2", "epsilon", "re_beta", "im_beta", "pt_defect", "singular")

# extra values of Im beta approaching the cut from below, for Fig. 3
FIG3_APPROACH = (-1e-2, -1e-3, -1e-4, -1e-5, -1e-6)


def figure_parameters(name: str) -> list:
    step = 0.05
    if name == "fig1":
        eps = [round(-3.0 + step * k, 10) for k in range(1, 70)]
        return [HarmonicParams(e, 1j) for e in eps]
    if name == "fig2":
        return [HarmonicParams(-0.5, complex(0.5, round(-2.0 + step * k, 10))) for k in range(81)]
    if name == "fig3":
        ims = [round(-1.0 + step * k, 10) for k in range(20)] + list(FIG3_APPROACH)
        return [HarmonicParams(-0.5, complex(2.0, b)) for b in ims]
    raise ParameterError(f"unknown figure {name!r}; choose fig1, fig2 or fig3")


def figure_data(name: str, grid=FIGURE_GRID) -> list:
    rows = []
    for p in figure_parameters(name):
        rows.extend(figure_rows(p, grid))
    return rows


# ---------------------------------------------------------------------------
# zero-free boundary on the real beta axis

def line_points(x_max: float = 1e4, count: int = 4000) -> np.ndarray:
    """Symmetric sample set, dense near the origin and geometric out to x_max."""
    r = np.unique(np.concatenate([np.linspace(0.0, 8.0, 801), np.geomspace(8.0, float(x_max), count)]))
    return np.concatenate([-r[::-1], r[1:]])


def has_real_zero(epsilon: float, beta: float, x_max: float = 1e4) -> bool:
    """Sign change of the (real) seed anywhere on line_points(x_max)."""
    u, _ = HarmonicSeed(HarmonicParams(epsilon, complex(beta))).scaled(line_points(x_max))
    s = np.sign(np.real(u))
    return bool(np.any(s[:-1] * s[1:] <= 0))


def locate_zero_free_boundary(epsilon: float, tol: float = 1e-9, x_max: float = 1e4) -> float:
    """Bisection on beta > 0 between zero-free and zero-crossing seeds."""
    lo, hi = 0.0, 1.0
    while not has_real_zero(epsilon, hi, x_max):
        lo, hi = hi, 2.0 * hi
        if hi > 1e6:
            raise RangeError("no zero crossing found for beta up to 1e6")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if has_real_zero(epsilon, mid, x_max):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
