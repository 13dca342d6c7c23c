"""The periodic potential V(x) = e^{2ix}/2 in the lower half plane.

With z = e^{ix} the Schroedinger equation psi'' + (2E - e^{2ix}) psi = 0
becomes Bessel's equation of order nu = sqrt(2E). All solutions are
evaluated as analytic functions of x: arg z = Re x is tracked across
stripes, and the principal-branch values are carried over with the
continuation formulas for J, Y, H1 and H2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy import integrate

from .errors import ConvergenceError, DomainError, IntegerOrderError, ParameterError, RangeError
from .specfun import BESSEL_CONTROL, bessel_j, bessel_y, hankel1, hankel2, rgamma, sinpi

BRANCHES = ("psi1", "psi2", "psi3", "psi4")
BOUNDARY_TOL = 1e-12


class _Boundary:
    """Marker returned by stripe_of on a stripe border."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "BOUNDARY"


BOUNDARY = _Boundary()


def potential(x):
    """V(x) = e^{2ix}/2, with Re x reduced mod pi so V(x + pi) == V(x) up to rounding of x."""
    x = np.asarray(x, dtype=complex)
    k = np.floor(x.real / math.pi)
    return 0.5 * np.exp(2j * (x - k * math.pi))


def periodicity_defect(x) -> float:
    x = np.asarray(x, dtype=complex)
    v = potential(x)
    return float(np.max(np.abs(potential(x + math.pi) - v) / np.abs(v)))


def stripe_of(x):
    """Index l of S_l = {Im x < 0, l pi <= Re x < (l+1) pi}, or BOUNDARY on a border."""
    x = complex(x)
    if not x.imag < 0:
        raise DomainError(f"stripes live in the lower half plane, got Im x = {x.imag}")
    q = x.real / math.pi
    if abs(q - round(q)) * math.pi <= BOUNDARY_TOL:
        return BOUNDARY
    return int(math.floor(q))


# ---------------------------------------------------------------------------
# Bessel functions of e^{ix} on the right sheet

def order_of(E) -> complex:
    """nu with nu^2 = 2E: real for E >= 0, positive imaginary for E < 0."""
    E = float(E)
    if not math.isfinite(E):
        raise ParameterError("energy must be finite")
    return math.sqrt(2.0 * E) if E >= 0 else 1j * math.sqrt(-2.0 * E)


def _branch_spec(branch, E):
    nu = order_of(E)
    if branch not in BRANCHES:
        raise ParameterError(f"branch must be one of {BRANCHES}, got {branch!r}")
    if branch == "psi4":
        return ("y", nu) if E >= 0 else ("j", -nu)
    return {"psi1": ("h1", nu), "psi2": ("h2", nu), "psi3": ("j", nu)}[branch]


def _sin_ratio(k, mu):
    """sin(k mu pi)/sin(mu pi), with its limit at integer mu."""
    if isinstance(mu, complex):
        return cmath.sin(k * mu * math.pi) / cmath.sin(mu * math.pi)
    if mu == round(mu):
        n = int(round(mu))
        return float(k * (-1) ** (((k - 1) * n) % 2))
    return sinpi(k * mu) / sinpi(mu)


def _real_order_on_sheet(family, mu, x):
    out = np.empty(x.shape, dtype=complex)
    m_all = np.round(x.real / math.pi).astype(int)
    for m in np.unique(m_all):
        sel = m_all == m
        w = np.exp(1j * (x[sel] - m * math.pi))
        ph = cmath.exp(1j * m * mu * math.pi)
        if family == "j":
            out[sel] = ph * bessel_j(mu, w)
        elif family == "y":
            out[sel] = bessel_y(mu, w) / ph + 2j * _sin_ratio(m, mu) * math.cos(mu * math.pi) * bessel_j(mu, w)
        elif family == "h1":
            out[sel] = (-_sin_ratio(m - 1, mu) * hankel1(mu, w)
                        - cmath.exp(-1j * mu * math.pi) * _sin_ratio(m, mu) * hankel2(mu, w))
        else:
            out[sel] = (_sin_ratio(m + 1, mu) * hankel2(mu, w)
                        + cmath.exp(1j * mu * math.pi) * _sin_ratio(m, mu) * hankel1(mu, w))
    return out


def _j_series(mu, x):
    # J_mu(e^{ix}) = (z/2)^mu sum (-z^2/4)^k / (k! Gamma(mu+k+1)), log z = ix
    z = np.exp(1j * x)
    q = -0.25 * z * z
    term = np.full(x.shape, complex(rgamma(np.complex128(mu + 1.0))))
    total = term.copy()
    tol = BESSEL_CONTROL.rel_tol
    for k in range(BESSEL_CONTROL.max_terms):
        term = term * q / ((k + 1) * (mu + k + 1))
        total = total + term
        if k > np.max(np.abs(q)) and np.all(np.abs(term) <= tol * np.abs(total)):
            break
    else:
        raise ConvergenceError("complex-order series did not converge", partial=total)
    return np.exp(mu * (1j * x - math.log(2.0))) * total


def _complex_order_on_sheet(family, mu, x):
    if family == "j":
        return _j_series(mu, x)
    jp, jm = _j_series(mu, x), _j_series(-mu, x)
    s = cmath.sin(mu * math.pi)
    if family == "y":
        return (jp * cmath.cos(mu * math.pi) - jm) / s
    if family == "h1":
        return (jm - cmath.exp(-1j * mu * math.pi) * jp) / (1j * s)
    return (jm - cmath.exp(1j * mu * math.pi) * jp) / (-1j * s)


def _on_sheet(family, mu, x):
    if isinstance(mu, complex) and mu.imag != 0:
        return _complex_order_on_sheet(family, mu, x)
    return _real_order_on_sheet(family, float(np.real(mu)), x)


def solution_jet(branch: str, E: float, x):
    """(psi, psi', psi'') with derivatives from the order recurrences."""
    family, mu = _branch_spec(branch, E)
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    if np.any(~np.isfinite(x)):
        raise ParameterError("x must be finite")
    z = np.exp(1j * x)
    c0 = _on_sheet(family, mu, x)
    c1 = _on_sheet(family, mu + 1, x)
    cp = mu / z * c0 - c1
    cpp = -c0 + c1 / z + (mu * mu - mu) * c0 / (z * z)
    return c0, 1j * z * cp, -z * (cp + z * cpp)


def solution(branch: str, E: float, x):
    """psi1 = H1_nu(e^{ix}), psi2 = H2_nu, psi3 = J_nu, psi4 = Y_nu (E >= 0) or J_{-nu} (E < 0)."""
    psi, _, _ = solution_jet(branch, E, x)
    return psi if np.ndim(x) else psi[0]


def ode_residual(branch: str, E: float, x) -> float:
    """max |psi'' + (2E - e^{2ix}) psi| relative to the largest of the three terms."""
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    psi, _, d2 = solution_jet(branch, E, x)
    z2 = np.exp(2j * x)
    lhs = d2 + (2.0 * E - z2) * psi
    den = np.maximum.reduce([np.abs(d2), np.abs(2.0 * E * psi), np.abs(z2 * psi), np.full(x.shape, 1e-300)])
    return float(np.max(np.abs(lhs) / den))


# ---------------------------------------------------------------------------
# continuation and quantization

def continuation_coefficients(nu: float, m: int):
    """(c1, c2) with H1_nu(z e^{m pi i}) = c1 H1_nu(z) + c2 H2_nu(z)."""
    nu = float(nu)
    if nu == round(nu):
        raise IntegerOrderError(f"continuation coefficients need a non-integer order, got {nu}")
    if int(m) != m or m < 1:
        raise RangeError(f"m must be a positive integer, got {m}")
    m = int(m)
    s = sinpi(nu)
    c1 = -sinpi((m - 1) * nu) / s
    c2 = -cmath.exp(-1j * nu * math.pi) * (sinpi(m * nu) / s)
    return complex(c1), complex(c2)


def j_basis_continuation(nu: float, m: int, z):
    """H1_nu(z e^{m pi i}) written through J_{+-nu}(z) and J_nu(z e^{m pi i}) = e^{i m nu pi} J_nu(z)."""
    nu = float(nu)
    jp, jm = bessel_j(nu, z), bessel_j(-nu, z)
    return ((cmath.exp(-1j * m * nu * math.pi) * jm - cmath.exp(-1j * nu * math.pi) * cmath.exp(1j * m * nu * math.pi) * jp)
            / (1j * sinpi(nu)))


class SpectrumKind(str, Enum):
    EXACT = "exact"
    SEMICLASSICAL = "semiclassical"
    UNBOUND = "unbound"


@dataclass(frozen=True)
class SectorSpec:
    m: int

    def __post_init__(self):
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 1:
            raise RangeError(f"stripe index m must be a positive integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))

    @property
    def l(self) -> int:
        return self.m // 2

    @property
    def unbound(self) -> bool:
        return self.m == 1


@dataclass(frozen=True)
class QuantizationResult:
    kind: SpectrumKind
    m: int
    indices: tuple = ()
    nu_values: tuple = ()
    energies: tuple = ()
    excluded_indices: frozenset = frozenset()
    notes: tuple = ()

    def rows(self):
        """(kind, m, n, nu, energy, excluded) including excluded indices."""
        out = [(self.kind.value, self.m, n, nu, e, 0) for n, nu, e in zip(self.indices, self.nu_values, self.energies)]
        if self.kind is SpectrumKind.EXACT:
            step = 2 * (self.m // 2)
            for n in self.excluded_indices:
                nu = Fraction(n + 1, step)
                out.append((self.kind.value, self.m, n, nu, nu * nu / 2, 1))
        return sorted(out, key=lambda r: r[2])


def _as_spec(spec):
    return spec if isinstance(spec, SectorSpec) else SectorSpec(spec)


def exact_spectrum(spec, count: int) -> QuantizationResult:
    """Levels from sin(2 l pi nu) = 0, sin(pi nu) != 0: nu = (n+1)/(2l), E = nu^2/2."""
    spec = _as_spec(spec)
    if int(count) != count or count < 1:
        raise RangeError(f"count must be a positive integer, got {count}")
    if spec.unbound:
        return QuantizationResult(SpectrumKind.UNBOUND, 1,
                                  notes=("continuation into S_1 imposes no condition; unbound from below",))
    step = 2 * spec.l
    idx, nus, excluded = [], [], set()
    n = 0
    while len(idx) < count:
        if (n + 1) % step == 0:
            excluded.add(n)
        else:
            idx.append(n)
            nus.append(Fraction(n + 1, step))
        n += 1
    return QuantizationResult(SpectrumKind.EXACT, spec.m, tuple(idx), tuple(nus),
                              tuple(v * v / 2 for v in nus), frozenset(excluded))


def semiclassical_spectrum(m: int, count: int) -> QuantizationResult:
    """E_n = (n + 1/2)^2 / (2 m^2), with no exclusions."""
    spec = _as_spec(m)
    if int(count) != count or count < 1:
        raise RangeError(f"count must be a positive integer, got {count}")
    nus = tuple(Fraction(2 * n + 1, 2 * spec.m) for n in range(int(count)))
    notes = ("discrete although the exact spectrum is unbound",) if spec.unbound else ()
    return QuantizationResult(SpectrumKind.SEMICLASSICAL, spec.m, tuple(range(int(count))), nus,
                              tuple(v * v / 2 for v in nus), frozenset(), notes)


def turning_points(k: float, m: int):
    x1 = -1j * math.log(k)
    return x1, m * math.pi + x1


def action_quadrature(k: float, m: int) -> complex:
    """Integral of sqrt(k^2 - e^{2ix}) along the horizontal line between the turning points.

    The principal root is continuous inside each pi-segment (Re >= 0 there);
    the integrand vanishes at the segment ends, so segments are summed.
    """
    k = float(k)
    if not k > 0 or not math.isfinite(k):
        raise ParameterError(f"k must be positive, got {k}")
    x1, _ = turning_points(k, m)
    m = SectorSpec(m).m

    def g(t):
        return cmath.sqrt(k * k - cmath.exp(2j * (x1 + t)))

    total = 0j
    for j in range(m):
        a, b = j * math.pi, (j + 1) * math.pi
        re, _ = integrate.quad(lambda t: g(t).real, a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
        im, _ = integrate.quad(lambda t: g(t).imag, a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
        total += complex(re, im)
    return total


def action_integral(k: float, m: int, imag_tol: float = 1e-8) -> float:
    """Real action I(k, m); equals m pi k."""
    val = action_quadrature(k, m)
    if abs(val.imag) > imag_tol:
        raise ConvergenceError(f"action has imaginary part {val.imag:.3g}", partial=val)
    return val.real
