"""Acceptance criteria, one test each.

Every test prints a single ``[ACCEPT nn] PASS|FAIL`` line (also when output
capture is on) and then asserts. Running this file as a script prints the
same twelve lines without pytest.
"""

import math
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from darboux import bender_boettcher as bb
from darboux import core, harmonic, numerics
from darboux import exp_potential as xp
from darboux.harmonic import HarmonicParams
from darboux.numerics import Grid1D
from darboux.specfun import hankel1, hankel2

FINE = Grid1D(-12.0, 12.0, 24001)


def c01_beta_c():
    val = harmonic.beta_c(-0.5)
    err = abs(val - 2 / math.sqrt(math.pi))
    runs = []
    for _ in range(20):
        t0 = time.perf_counter()
        harmonic.beta_c(-0.5)
        runs.append(time.perf_counter() - t0)
    ms = 1e3 * min(runs)
    return err <= 1e-10 and ms < 1.0, f"beta_c(-1/2) = {val!r}, error {err:.1e}, {ms:.3f} ms"


def c02_harmonic_spectrum():
    t0 = time.perf_counter()
    p = HarmonicParams(-0.5, 1j)
    ev = harmonic.numerical_spectrum(p, Grid1D(-12.0, 12.0, 2400)).smallest(6)
    rep = numerics.match_spectrum(ev, [-0.5, 0.5, 1.5, 2.5, 3.5, 4.5], window=2e-3)
    dt = time.perf_counter() - t0
    ok = rep.all_matched and rep.max_delta <= 2e-3 and rep.max_imag <= 1e-6 and dt <= 120
    return ok, f"max |dE| = {rep.max_delta:.2e}, max |Im E| = {rep.max_imag:.1e}, {dt:.1f} s"


def c03_eigenfunction_residuals():
    x, h = FINE.points, FINE.spacing
    worst = 0.0
    for eps in (-2.0, -0.5, 0.4):
        for beta in (1j, 0.5 + 1j):
            p = HarmonicParams(eps, beta)
            v = harmonic.v2_values(p, x)
            for n in range(6):
                worst = max(worst, numerics.eigen_residual(harmonic.eigenfunction(p, n, x), v, n + 0.5, h))
            ex = harmonic.extra_state(p, FINE)
            worst = max(worst, numerics.eigen_residual(ex.wavefunction, v, eps, h))
    return worst <= 1e-5, f"max relative residual {worst:.2e} (36 states + 6 extra states)"


def c04_erf_equivalence():
    x = np.linspace(-5, 5, 1001)
    worst = 0.0
    for b in (0, 1j, 0.5 + 1j, 1.0):
        u, _ = harmonic.seed_u(HarmonicParams(-0.5, b), x)
        worst = max(worst, float(np.max(np.abs(u - harmonic.seed_u_erf(b, x)) / np.abs(u))))
    return worst <= 1e-10, f"max relative gap {worst:.1e}"


def c05_pt_dichotomy():
    pt = max(float(np.max(harmonic.pt_defect(harmonic.partner_v2(HarmonicParams(-0.5, b)).values)))
             for b in (1j, -0.5j, 2j, 0.1j))
    non = float(np.max(harmonic.pt_defect(harmonic.partner_v2(HarmonicParams(-0.5, 0.5 + 1j)).values)))
    return pt <= 1e-10 and non >= 1e-3, f"imaginary beta defect {pt:.1e}, beta=0.5+1i defect {non:.3f}"


def c06_normalization():
    g = Grid1D(-12.0, 12.0, 2401)
    worst = 0.0
    for eps, b in ((-0.5, 0.5), (-0.5, -0.9), (-2.0, 1.5), (0.0, 0.3)):
        s = harmonic.seed(HarmonicParams(eps, b))
        for n in range(5):
            e, phi, dphi = harmonic.base_eigensystem(n, g.points)
            worst = max(worst, abs(core.literal_norm(s, phi, dphi, g) - 2 * (e - eps)))
    return worst <= 1e-6, f"max |int |A phi_n|^2 - 2(E_n - eps)| = {worst:.1e}"


def c07_zero_free_boundary():
    gaps = {e: abs(harmonic.locate_zero_free_boundary(e, tol=1e-7) - harmonic.beta_c(e)) for e in (-2, -1, -0.5, 0)}
    worst = max(gaps.values())
    return worst <= 1e-4, f"max |bisection - beta_c| = {worst:.1e}"


def c08_bender_boettcher():
    res = 0.0
    fd = 0.0
    ratio = 0.0
    for n in (2, 3, 4, 6):
        c = bb.contour(n, 20.0, 401)
        c_fd = bb.contour(n, 20.0, 101)
        for a, b in ((1, 0), (1, 1), (1, 1j)):
            p = bb.BBParams(n, a, b)
            res = max(res, bb.seed_residual(p, c))
            fd = max(fd, bb.seed_residual(p, c_fd, analytic=False))
        for br in (1, -1):
            r = bb.asymptotic_ratio(bb.BBParams(n, 1, 1), [10.0, 20.0], branch=br)
            ratio = max(ratio, float(r[1] / r[0]))
    x = np.linspace(-6, 6, 121)
    cross = max(bb.harmonic_reduction_defect(bb.BBParams(2, 1, b), x) for b in (0, 0.3, 1j))
    ok = res <= 1e-7 and fd <= 1e-7 and ratio < 0.5 and cross <= 1e-8
    return ok, (f"residual {res:.1e} (finite differences {fd:.1e}), ratio 20 vs 10 <= {ratio:.3f}, "
                f"N=2 cross-check {cross:.1e}")


def c09_exp_spectra():
    e2 = xp.exact_spectrum(2, 4).energies
    nu4 = xp.exact_spectrum(4, 5).nu_values
    ok = e2 == (Fraction(1, 8), Fraction(9, 8), Fraction(25, 8), Fraction(49, 8))
    ok &= nu4 == (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(5, 4), Fraction(3, 2))
    ok &= xp.exact_spectrum(3, 12) == xp.QuantizationResult(**{**xp.exact_spectrum(2, 12).__dict__, "m": 3})
    ok &= xp.exact_spectrum(1, 4).kind is xp.SpectrumKind.UNBOUND
    return ok, f"m=2 {[str(e) for e in e2]}, m=4 nu {[str(v) for v in nu4]}, m=3 same as m=2, m=1 unbound"


def c10_action():
    t0 = time.perf_counter()
    worst_re, worst_im = 0.0, 0.0
    for k, m in ((1, 2), (0.5, 1), (2, 3)):
        v = xp.action_quadrature(k, m)
        worst_re = max(worst_re, abs(v.real - m * math.pi * k))
        worst_im = max(worst_im, abs(v.imag))
    dt = time.perf_counter() - t0
    ok = worst_re <= 1e-6 and worst_im <= 1e-8 and dt < 1.0
    return ok, f"max |I - m pi k| = {worst_re:.1e}, max |Im I| = {worst_im:.1e}, {dt * 1e3:.0f} ms"


def c11_continuation():
    worst = 0.0
    for nu, m in ((0.3, 2), (0.45, 3)):
        c1, c2 = xp.continuation_coefficients(nu, m)
        for z in (1.0, 2 + 1j):
            lhs = xp.j_basis_continuation(nu, m, z)
            rhs = c1 * complex(hankel1(nu, z)) + c2 * complex(hankel2(nu, z))
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
    exact = all(xp.continuation_coefficients(nu, 1) == (0j, -complex(np.exp(-1j * nu * math.pi)))
                for nu in (0.1, 0.3, 0.45, 0.77, 1.5))
    return worst <= 1e-8 and exact, f"max relative gap {worst:.1e}, m=1 coefficients exact: {exact}"


def c12_verify(clean, corrupted):
    code, rep = clean
    bad_code, bad_rep = corrupted
    failed = [c["name"] for c in rep["checks"] if not c["passed"]]
    caught = sum(not c["passed"] for c in bad_rep["checks"])
    ok = code == 0 and not failed and bad_code == 1
    return ok, (f"verify exit {code} with {rep['count']} checks ({len(failed)} failed); "
                f"corrupted run exit {bad_code} with {caught} checks failing")


CRITERIA = [
    (1, "beta_c reproduction", c01_beta_c),
    (2, "harmonic spectrum, 2400-point grid", c02_harmonic_spectrum),
    (3, "eigenfunction residuals", c03_eigenfunction_residuals),
    (4, "Kummer form equals erf form", c04_erf_equivalence),
    (5, "PT dichotomy", c05_pt_dichotomy),
    (6, "normalization 2(E_n - eps)", c06_normalization),
    (7, "zero-free boundary", c07_zero_free_boundary),
    (8, "Bender-Boettcher seeds", c08_bender_boettcher),
    (9, "exponential potential spectra", c09_exp_spectra),
    (10, "action integral", c10_action),
    (11, "continuation identity", c11_continuation),
]


def _line(num, title, ok, detail):
    return f"[ACCEPT {num:02d}] {'PASS' if ok else 'FAIL'} {title}: {detail}"


def _report(capsys, num, title, ok, detail):
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, detail = fn()
    _report(capsys, num, title, ok, detail)


def test_criterion_12(verify_run, corrupted_run, capsys):
    ok, detail = c12_verify(verify_run, corrupted_run)
    _report(capsys, 12, "verify suite and negative controls", ok, detail)


if __name__ == "__main__":
    import io
    import json

    from darboux.cli import main

    def _cli(*argv):
        buf = io.StringIO()
        code = main(list(argv), stdout=buf, stderr=io.StringIO())
        return code, json.loads(buf.getvalue())

    results = []
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        results.append(ok)
        print(_line(num, title, ok, detail), flush=True)
    ok, detail = c12_verify(_cli("verify"), _cli("verify", "--inject-corruption"))
    results.append(ok)
    print(_line(12, "verify suite and negative controls", ok, detail))
    sys.exit(0 if all(results) else 1)
