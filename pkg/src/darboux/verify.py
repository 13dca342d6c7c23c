"""Named verification checks across all modules, with a JSON report.

Each check measures one number and compares it with a bound. Failures are
report content; only I/O problems raise.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import bender_boettcher as bb
from . import core, exp_potential as xp, harmonic, numerics
from .numerics import Grid1D
from .specfun import bessel_i, bessel_j, bessel_k, erf, gamma, hankel1, hankel2, kummer_1f1

SCHEMA = 1
SEED_TOL_ENV = "DARBOUX_SEED_TOL"
# added to every partner potential when the corruption control is on
CORRUPTION_SHIFT = 0.1


@dataclass
class Check:
    name: str
    suite: str
    value: float
    bound: float
    relation: str
    passed: bool
    detail: str = ""


@dataclass
class Context:
    corrupt: bool = False
    seed_tol: float | None = None

    @property
    def v2_shift(self) -> float:
        return CORRUPTION_SHIFT if self.corrupt else 0.0

    def tol(self, default: float) -> float:
        return default if self.seed_tol is None else self.seed_tol


def seed_tolerance_from_env():
    raw = os.environ.get(SEED_TOL_ENV)
    if raw is None or raw == "":
        return None
    val = float(raw)
    if not val > 0:
        raise ValueError(f"{SEED_TOL_ENV} must be positive, got {raw!r}")
    return val


def _le(name, suite, value, bound, detail=""):
    value = float(value)
    return Check(name, suite, value, bound, "<=", bool(math.isfinite(value) and value <= bound), detail)


def _ge(name, suite, value, bound, detail=""):
    value = float(value)
    return Check(name, suite, value, bound, ">=", bool(math.isfinite(value) and value >= bound), detail)


def _true(name, suite, ok, detail=""):
    return Check(name, suite, float(bool(ok)), 1.0, "==", bool(ok), detail)


# ---------------------------------------------------------------------------
# specfun

def _gamma_reflection(ctx):
    z = np.array([0.3, 0.71, -1.4, 2.5 + 1j, -0.2 + 0.8j])
    lhs = np.array([complex(gamma(v)) * complex(gamma(1 - v)) for v in z])
    rhs = np.pi / np.sin(np.pi * z)
    return _le("gamma_reflection", "specfun", np.max(np.abs(lhs / rhs - 1)), 1e-13)


def _erf_kummer(ctx):
    x = np.linspace(-4, 4, 41)
    a = np.array([erf(v) for v in x])
    b = 2 * x / math.sqrt(math.pi) * np.array([kummer_1f1(0.5, 1.5, -v * v) for v in x])
    return _le("erf_equals_kummer", "specfun", np.max(np.abs(a - b)), 1e-13)


def _kummer_ode(ctx):
    worst = 0.0
    for a, b in [(0.25, 0.5), (1.3, 1.5), (-2.7, 0.5), (3.1, 2.5)]:
        for y in [0.1, 1.0, 7.5, 25.0, 60.0]:
            m0 = kummer_1f1(a, b, y)
            m1 = a / b * kummer_1f1(a + 1, b + 1, y)
            m2 = a * (a + 1) / (b * (b + 1)) * kummer_1f1(a + 2, b + 2, y)
            terms = [y * m2, (b - y) * m1, a * m0]
            worst = max(worst, abs(terms[0] + terms[1] - terms[2]) / max(abs(t) for t in terms))
    return _le("kummer_ode_residual", "specfun", worst, 1e-7)


def _bessel_wronskian(ctx):
    z = np.array([0.3, 1.7 + 0.4j, 6.0 - 2j, 25.0 + 3j])
    worst = 0.0
    for nu in [0.0, 0.25, 1.5, 3.7]:
        w = bessel_i(nu, z) * bessel_k(nu + 1, z) + bessel_i(nu + 1, z) * bessel_k(nu, z)
        worst = max(worst, float(np.max(np.abs(w * z - 1))))
    return _le("bessel_ik_wronskian", "specfun", worst, 1e-12)


def _hankel_sum(ctx):
    z = np.array([0.5 + 0.1j, 3.0, 2.0 - 1.5j, 12.0 + 4j])
    worst = 0.0
    for nu in [0.3, 1.0, 2.25]:
        j = bessel_j(nu, z)
        worst = max(worst, float(np.max(np.abs(hankel1(nu, z) + hankel2(nu, z) - 2 * j) / np.abs(j))))
    return _le("hankel_sum_is_2j", "specfun", worst, 1e-12)


# ---------------------------------------------------------------------------
# numerics

def _eig_trace_det(ctx):
    rng = np.random.default_rng(7)
    a = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
    ev = numerics.eigenvalues(a, method="qr").eigenvalues
    norm = np.linalg.norm(a)
    tr = abs(np.sum(ev) - np.trace(a)) / norm
    det = abs(np.prod(ev) - np.linalg.det(a)) / abs(np.linalg.det(a))
    return _le("eigensolver_trace_det", "numerics", max(tr, det), 1e-8)


def _simpson_cubic(ctx):
    g = Grid1D(-1.0, 2.0, 31)
    x = g.points
    val = numerics.quadrature(x**3 - 2 * x**2 + 0.5, g)
    exact = (2**4 - 1) / 4 - 2 * (8 + 1) / 3 + 0.5 * 3
    return _le("simpson_exact_on_cubics", "numerics", abs(val - exact), 1e-12)


def _fd_order(ctx):
    errs = []
    for count in (201, 401):
        g = Grid1D(-8.0, 8.0, count)
        mat = numerics.discretize_hamiltonian(lambda x: 0.5 * x * x, g)
        ev = np.sort(np.linalg.eigvals(mat).real)[:3]
        errs.append(np.max(np.abs(ev - np.array([0.5, 1.5, 2.5]))))
    ratio = errs[0] / errs[1]
    ok = 12.0 <= ratio <= 20.0
    return Check("fd_fourth_order_convergence", "numerics", ratio, 16.0, "in [12, 20]", bool(ok),
                 f"errors {errs[0]:.3g}, {errs[1]:.3g}")


def _ode_negative_control(ctx):
    p = harmonic.HarmonicParams(-0.5, 0.3)
    s = harmonic.seed(p)

    def bad(x):
        u, ls = s.scaled(x)
        return u * (1 + 1e-3 * np.asarray(x)), ls

    pts = np.linspace(-4, 4, 50)
    r = numerics.ode_residual(bad, harmonic.v1, p.epsilon, pts, scaled=True)
    return _ge("ode_residual_detects_perturbation", "numerics", r, 1e-4)


# ---------------------------------------------------------------------------
# harmonic family and core

H_FINE = Grid1D(-12.0, 12.0, 24001)


def _beta_c(ctx):
    return _le("beta_c_at_minus_half", "harmonic", abs(harmonic.beta_c(-0.5) - 2 / math.sqrt(math.pi)), 1e-10)


def _erf_equivalence(ctx):
    x = np.linspace(-5, 5, 1001)
    worst = 0.0
    for b in (0, 1j, 0.5 + 1j, 1.0):
        u, _ = harmonic.seed_u(harmonic.HarmonicParams(-0.5, b), x)
        worst = max(worst, float(np.max(np.abs(u - harmonic.seed_u_erf(b, x)) / np.abs(u))))
    return _le("seed_kummer_equals_erf_form", "harmonic", worst, 1e-10)


def _harm_seed_residual(ctx):
    pts = np.linspace(-10, 10, 100)
    worst = 0.0
    for eps, b in [(-2.0, 1j), (-0.5, 0.5 + 1j), (0.4, 0.2)]:
        s = harmonic.seed(harmonic.HarmonicParams(eps, b))
        worst = max(worst, core.seed_residual(s, harmonic.v1, pts))
    return _le("harmonic_seed_ode_residual", "harmonic", worst, ctx.tol(1e-8))


def _pt_imag(ctx):
    worst = 0.0
    for b in (1j, -0.7j, 2j):
        v = harmonic.partner_v2(harmonic.HarmonicParams(-0.5, b)).values + ctx.v2_shift * 1j
        worst = max(worst, float(np.max(harmonic.pt_defect(v))))
    return _le("pt_invariant_for_imaginary_beta", "harmonic", worst, 1e-10)


def _pt_nonpt(ctx):
    v = harmonic.partner_v2(harmonic.HarmonicParams(-0.5, 0.5 + 1j)).values
    return _ge("pt_broken_for_beta_half_plus_i", "harmonic", np.max(harmonic.pt_defect(v)), 1e-3)


def _eigen_residuals(ctx):
    x, h = H_FINE.points, H_FINE.spacing
    worst = 0.0
    for b in (1j, 0.5 + 1j):
        p = harmonic.HarmonicParams(-0.5, b)
        v = harmonic.v2_values(p, x) + ctx.v2_shift
        for n in range(6):
            worst = max(worst, numerics.eigen_residual(harmonic.eigenfunction(p, n, x), v, n + 0.5, h))
    return _le("eigenfunction_residuals", "harmonic", worst, 1e-5, "eps=-1/2, n<=5")


def _extra_residual(ctx):
    x, h = H_FINE.points, H_FINE.spacing
    worst = 0.0
    for b in (1j, 0.5 + 1j):
        p = harmonic.HarmonicParams(-0.5, b)
        ex = harmonic.extra_state(p, H_FINE)
        v = harmonic.v2_values(p, x) + ctx.v2_shift
        worst = max(worst, numerics.eigen_residual(ex.wavefunction, v, p.epsilon, h))
    return _le("extra_state_residual", "harmonic", worst, 1e-5)


def _normalization(ctx):
    g = Grid1D(-12.0, 12.0, 2401)
    worst = 0.0
    for b in (0.5, -0.9):
        s = harmonic.seed(harmonic.HarmonicParams(-0.5, b))
        for n in range(5):
            e, phi, dphi = harmonic.base_eigensystem(n, g.points)
            worst = max(worst, abs(core.literal_norm(s, phi, dphi, g) - 2 * (e + 0.5)))
    return _le("intertwined_norm_is_2(E-eps)", "harmonic", worst, 1e-6)


def _zero_free_boundary(ctx):
    worst = max(abs(harmonic.locate_zero_free_boundary(e, tol=1e-7) - harmonic.beta_c(e)) for e in (-2, -1, -0.5, 0))
    return _le("zero_free_boundary_bisection", "harmonic", worst, 1e-4)


def _numerical_spectrum(ctx):
    p = harmonic.HarmonicParams(-0.5, 1j)
    mat = numerics.discretize_hamiltonian(lambda x: harmonic.v2_values(p, x) + ctx.v2_shift, harmonic.VERIFY_GRID)
    ev = numerics.eigenvalues(mat).smallest(6)
    rep = numerics.match_spectrum(ev, [-0.5, 0.5, 1.5, 2.5, 3.5, 4.5], window=2e-3)
    val = rep.max_delta if rep.all_matched else float("inf")
    return _le("fd_spectrum_matches_closed_form", "harmonic", val, 2e-3, f"max |Im E| = {rep.max_imag:.2g}")


def _intertwining(ctx):
    p = harmonic.HarmonicParams(-0.5, 0.0)
    s = harmonic.seed(p)
    gauss = lambda x: np.exp(-0.5 * x * x)  # noqa: E731
    v2 = lambda x: harmonic.v2_values(p, x) + ctx.v2_shift  # noqa: E731
    r = core.intertwining_residual(s, harmonic.v1, v2, gauss, Grid1D(-8, 8, 1601), order=2)
    return _le("intertwining_residual_beta0", "core", r, 1e-3)


def _intertwining_ratio(ctx):
    p = harmonic.HarmonicParams(-0.5, 0.0)
    s = harmonic.seed(p)
    gauss = lambda x: np.exp(-0.5 * x * x)  # noqa: E731
    v2 = lambda x: harmonic.v2_values(p, x)  # noqa: E731
    r = [core.intertwining_residual(s, harmonic.v1, v2, gauss, Grid1D(-8, 8, c), order=2) for c in (1601, 3201)]
    ratio = r[0] / r[1]
    return Check("intertwining_h2_ratio", "core", ratio, 4.0, "in [3.5, 4.5]", bool(3.5 <= ratio <= 4.5))


def _intertwining_control(ctx):
    p = harmonic.HarmonicParams(-0.5, 0.0)
    s = harmonic.seed(p)
    gauss = lambda x: np.exp(-0.5 * x * x)  # noqa: E731
    bad = lambda x: harmonic.v2_values(p, x) + 0.1  # noqa: E731
    r = core.intertwining_residual(s, harmonic.v1, bad, gauss, Grid1D(-8, 8, 1601), order=2)
    return _ge("intertwining_detects_corrupted_v2", "core", r, 1e-2)


def _susy_form(ctx):
    x = np.linspace(-5, 5, 401)
    worst = 0.0
    for eps, b in [(-0.5, 1j), (-2.0, 0.5 + 1j), (0.3, -0.4)]:
        s = harmonic.seed(harmonic.HarmonicParams(eps, b))
        a = core.partner_values(s, harmonic.v1, x) + ctx.v2_shift
        c = core.partner_values_susy(s, x)
        worst = max(worst, float(np.max(np.abs(a - c) / np.maximum(1, np.abs(c)))))
    return _le("partner_forms_agree", "core", worst, 1e-10)


def _zero_scan(ctx):
    bad = core.check_zero_free(harmonic.seed(harmonic.HarmonicParams(-0.5, 1.2)), harmonic.FIGURE_GRID)
    good = core.check_zero_free(harmonic.seed(harmonic.HarmonicParams(-0.5, 1.0)), harmonic.FIGURE_GRID)
    return _true("zero_scan_verdicts", "core", (not bad.verdict) and good.verdict, "beta=1.2 crosses, beta=1.0 does not")


# ---------------------------------------------------------------------------
# Bender-Boettcher family

BB_NS = (2, 3, 4, 6)
BB_COEFFS = ((1, 0), (1, 1), (1, 1j))


def _bb_residual(ctx):
    worst = 0.0
    for n in BB_NS:
        c = bb.contour(n, 20.0, 401)
        for a, b in BB_COEFFS:
            worst = max(worst, bb.seed_residual(bb.BBParams(n, a, b), c))
    return _le("bb_seed_ode_residual", "bender_boettcher", worst, ctx.tol(1e-7), "analytic u''")


def _bb_fd_residual(ctx):
    worst = 0.0
    for n in BB_NS:
        c = bb.contour(n, 20.0, 101)
        for a, b in BB_COEFFS:
            worst = max(worst, bb.seed_residual(bb.BBParams(n, a, b), c, analytic=False))
    return _le("bb_seed_fd_residual", "bender_boettcher", worst, ctx.tol(1e-7), "finite differences")


def _bb_asymptotic(ctx):
    worst = 0.0
    for n in BB_NS:
        for br in (1, -1):
            r = bb.asymptotic_ratio(bb.BBParams(n, 1, 1), [10.0, 20.0], branch=br)
            worst = max(worst, float(r[1] / r[0]))
    return _le("bb_partner_approaches_v1", "bender_boettcher", worst, 0.5, "ratio of |V2/V1-1| at 20 vs 10")


def _bb_reduction(ctx):
    x = np.linspace(-6, 6, 121)
    worst = max(bb.harmonic_reduction_defect(bb.BBParams(2, 1, b), x) for b in (0, 0.3, 1j))
    return _le("bb_n2_matches_oscillator", "bender_boettcher", worst, 1e-8)


def _bb_bessel_form(ctx):
    worst = 0.0
    for n in (3, 4):
        p = bb.BBParams(n, 1, 1)
        c = bb.contour(n, 6.0, 61)
        x = c.x[np.abs(c.x) > 0.5]
        v = core.partner_values(bb.seed(p), lambda y: bb.v1(n, y), x) + ctx.v2_shift
        vb = bb.v2_bessel(p, x)
        worst = max(worst, float(np.max(np.abs(v - vb) / np.abs(vb))))
    return _le("bb_partner_equals_bessel_form", "bender_boettcher", worst, 1e-8)


def _bb_map_arg(ctx):
    worst = 0.0
    for n in BB_NS:
        c = bb.contour(n, 20.0, 401)
        z, _ = bb.map_z_nu(n, c.x[[0, -1]])
        worst = max(worst, float(np.max(np.abs(np.abs(np.angle(z)) - math.pi))))
    return _le("bb_z_image_on_cut", "bender_boettcher", worst, 0.05)


def _bb_classification(ctx):
    ok = True
    for n in (3, 4):
        for scale in (10.0, 20.0):
            c = bb.contour(n, scale, 401)
            ok &= bb.susy_classification(bb.BBParams(n, 1, 1), c) is bb.SusyPhase.UNBROKEN
            ok &= bb.susy_classification(bb.BBParams(n, bb.decaying_ratio(n), 1), c) is bb.SusyPhase.BROKEN
    return _true("bb_susy_classification_stable", "bender_boettcher", ok)


# ---------------------------------------------------------------------------
# exponential potential

def _exp_residual(ctx):
    rng = np.random.default_rng(11)
    worst = 0.0
    for l in range(3):
        x = l * math.pi + rng.uniform(0, math.pi, 100) - 1j * rng.uniform(0.05, 2.0, 100)
        for E in (0.125, 1.0, -0.3):
            for br in xp.BRANCHES:
                worst = max(worst, xp.ode_residual(br, E, x))
    return _le("exp_solutions_ode_residual", "exp_potential", worst, ctx.tol(1e-7))


def _exp_periodic(ctx):
    x = np.linspace(-7, 7, 141) - 0.8j
    return _le("exp_potential_periodic", "exp_potential", xp.periodicity_defect(x), 1e-14)


def _exp_continuation(ctx):
    worst = 0.0
    for nu, m in ((0.3, 2), (0.45, 3)):
        c1, c2 = xp.continuation_coefficients(nu, m)
        for z in (1.0, 2 + 1j):
            lhs = xp.j_basis_continuation(nu, m, z)
            rhs = c1 * complex(hankel1(nu, z)) + c2 * complex(hankel2(nu, z))
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
    return _le("exp_continuation_identity", "exp_potential", worst, 1e-8)


def _exp_m1(ctx):
    worst = 0.0
    for nu in (0.1, 0.3, 0.77, 1.5):
        c1, c2 = xp.continuation_coefficients(nu, 1)
        worst = max(worst, abs(c1), abs(c2 + cmath.exp(-1j * nu * math.pi)))
    return _le("exp_m1_connection_formula", "exp_potential", worst, 0.0)


def _exp_spectra(ctx):
    e2 = xp.exact_spectrum(2, 4).energies
    ok = e2 == (Fraction(1, 8), Fraction(9, 8), Fraction(25, 8), Fraction(49, 8))
    ok &= xp.exact_spectrum(4, 5).nu_values == (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(5, 4), Fraction(3, 2))
    ok &= xp.exact_spectrum(1, 3).kind is xp.SpectrumKind.UNBOUND
    return _true("exp_exact_spectra", "exp_potential", ok)


def _exp_law(ctx):
    ok = True
    for l in (1, 2, 3):
        a, b = xp.exact_spectrum(2 * l, 12), xp.exact_spectrum(2 * l + 1, 12)
        ok &= a.energies == b.energies
        ok &= all(v.denominator != 1 for v in a.nu_values)
        ok &= all(v * v / 2 == e for v, e in zip(a.nu_values, a.energies))
    ok &= min(xp.exact_spectrum(2, 5).excluded_indices) == 1
    return _true("exp_quantization_law", "exp_potential", ok, "m=2l and 2l+1 agree, no integer nu")


def _exp_action(ctx):
    worst = 0.0
    for k, m in ((1, 2), (0.5, 1), (2, 3)):
        v = xp.action_quadrature(k, m)
        worst = max(worst, abs(v.real - m * math.pi * k), abs(v.imag) * 100)
    return _le("exp_action_equals_m_pi_k", "exp_potential", worst, 1e-6)


def _exp_band(ctx):
    lo, hi = float("inf"), 0.0
    for l in (1, 2, 3):
        ex = xp.exact_spectrum(2 * l, 11).energies
        sc = xp.semiclassical_spectrum(2 * l, 11).energies
        r = [float(s / e) for s, e in zip(sc, ex)]
        lo, hi = min(lo, min(r)), max(hi, max(r))
    return Check("exp_semiclassical_band", "exp_potential", lo, 0.2, "ratios in [0.2, 1.3]",
                 bool(lo >= 0.2 and hi <= 1.3), f"ratio range [{lo:.3f}, {hi:.3f}]")


SUITES: dict[str, list[Callable]] = {
    "specfun": [_gamma_reflection, _erf_kummer, _kummer_ode, _bessel_wronskian, _hankel_sum],
    "numerics": [_eig_trace_det, _simpson_cubic, _fd_order, _ode_negative_control],
    "harmonic": [_beta_c, _erf_equivalence, _harm_seed_residual, _pt_imag, _pt_nonpt, _eigen_residuals,
                 _extra_residual, _normalization, _zero_free_boundary, _numerical_spectrum],
    "core": [_intertwining, _intertwining_ratio, _intertwining_control, _susy_form, _zero_scan],
    "bender_boettcher": [_bb_residual, _bb_fd_residual, _bb_asymptotic, _bb_reduction, _bb_bessel_form,
                         _bb_map_arg, _bb_classification],
    "exp_potential": [_exp_residual, _exp_periodic, _exp_continuation, _exp_m1, _exp_spectra, _exp_law,
                      _exp_action, _exp_band],
}


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    corrupted: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "corrupted": self.corrupted,
            "count": len(self.checks),
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }


def run(suite: str = "all", corrupt: bool = False, seed_tol: float | None = None) -> Report:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose all or one of {sorted(SUITES)}")
    ctx = Context(corrupt, seed_tol if seed_tol is not None else seed_tolerance_from_env())
    names = list(SUITES) if suite == "all" else [suite]
    rep = Report(suite, corrupted=corrupt)
    for name in names:
        for fn in SUITES[name]:
            try:
                rep.checks.append(fn(ctx))
            except Exception as exc:  # a crashing check is a failed check
                rep.checks.append(Check(fn.__name__.lstrip("_"), name, float("nan"), float("nan"), "error", False,
                                        f"{type(exc).__name__}: {exc}"))
    return rep
