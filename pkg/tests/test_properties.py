import cmath
import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from darboux import core, harmonic, numerics, tables
from darboux import exp_potential as xp
from darboux.harmonic import HarmonicParams
from darboux.numerics import Grid1D
from darboux.specfun import erf, gamma, hankel1, hankel2, hermite_h, kummer_1f1

FAST = settings(max_examples=40, deadline=None, derandomize=True)
SLOW = settings(max_examples=12, deadline=None, derandomize=True)

reals = st.floats(-30, 30, allow_nan=False)
eps_st = st.floats(-3.0, 0.45)


@FAST
@given(st.floats(-8, 8))
def test_erf_odd_and_bounded(x):
    assert erf(x) == -erf(-x)
    assert abs(erf(x)) <= 1.0


@FAST
@given(st.floats(0.05, 8), st.floats(-3, 3))
def test_gamma_reflection(x, y):
    z = complex(x, y)
    assume(abs(cmath.sin(math.pi * z)) > 1e-3)
    lhs = complex(gamma(z)) * complex(gamma(1 - z))
    assert abs(lhs * cmath.sin(math.pi * z) / math.pi - 1) < 1e-12


@FAST
@given(st.floats(-4, 4), st.floats(0.3, 5), st.floats(-30, 30))
def test_kummer_transformation(a, b, x):
    lhs = kummer_1f1(a, b, x)
    rhs = math.exp(x) * kummer_1f1(b - a, b, -x)
    assert abs(lhs - rhs) <= 1e-9 * max(abs(lhs), math.exp(x) * 1e-6, 1e-300)


@FAST
@given(st.integers(1, 40), st.floats(-6, 6))
def test_hermite_recurrence(n, x):
    h = [float(hermite_h(k, x)) for k in (n - 1, n, n + 1)]
    assert abs(h[2] - (2 * x * h[1] - 2 * n * h[0])) <= 1e-12 * max(abs(v) for v in h)


@FAST
@given(st.floats(-10, 10))
def test_pt_invariance_for_imaginary_beta(b):
    assume(b != 0)
    v = harmonic.v2_values(HarmonicParams(-0.5, 1j * b), np.linspace(-6, 6, 121))
    assert np.max(harmonic.pt_defect(v)) <= 1e-10


@FAST
@given(eps_st, st.floats(-5, 5), st.floats(-5, 5))
def test_admissibility_rule(eps, re, im):
    p = HarmonicParams(eps, complex(re, im))
    assert harmonic.admissible(p) == (im != 0 or abs(re) < harmonic.beta_c(eps))


@FAST
@given(eps_st, st.floats(-0.99, 0.99))
def test_real_beta_gives_real_potential(eps, frac):
    beta = frac * harmonic.beta_c(eps)
    v = harmonic.v2_values(HarmonicParams(eps, beta), np.linspace(-8, 8, 161))
    assert np.max(np.abs(v.imag)) <= 1e-12


@FAST
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_kummer_equals_erf_form(re, im):
    beta = complex(re, im)
    assume(im != 0 or abs(re) < 1.12)
    x = np.linspace(-5, 5, 101)
    u, _ = harmonic.seed_u(HarmonicParams(-0.5, beta), x)
    assert np.max(np.abs(u - harmonic.seed_u_erf(beta, x)) / np.abs(u)) <= 1e-10


@SLOW
@given(eps_st, st.floats(-2, 2), st.floats(0.1, 2))
def test_zero_scan_stable_under_refinement(eps, re, im):
    s = harmonic.seed(HarmonicParams(eps, complex(re, im)))
    a = core.check_zero_free(s, Grid1D(-6, 6, 301))
    b = core.check_zero_free(s, Grid1D(-6, 6, 601))
    assert a.verdict == b.verdict


@FAST
@given(st.integers(1, 6), st.integers(1, 30))
def test_exact_spectrum_law(l, count):
    a, b = xp.exact_spectrum(2 * l, count), xp.exact_spectrum(2 * l + 1, count)
    assert a.energies == b.energies
    assert len(a.energies) == count
    assert all(v.denominator != 1 for v in a.nu_values)
    assert all(v * v / 2 == e for v, e in zip(a.nu_values, a.energies))
    assert list(a.energies) == sorted(a.energies)


@FAST
@given(st.integers(1, 8), st.integers(1, 20))
def test_semiclassical_formula(m, count):
    sc = xp.semiclassical_spectrum(m, count)
    assert all(e * 2 * m * m == (n + 0.5) ** 2 for n, e in zip(sc.indices, sc.energies))


@FAST
@given(st.floats(0.01, 3.9), st.integers(1, 6), st.floats(0.3, 4), st.floats(-2, 2))
def test_continuation_identity(nu, m, zr, zi):
    assume(abs(nu - round(nu)) > 1e-3)
    z = complex(zr, zi)
    c1, c2 = xp.continuation_coefficients(nu, m)
    lhs = xp.j_basis_continuation(nu, m, z)
    rhs = c1 * complex(hankel1(nu, z)) + c2 * complex(hankel2(nu, z))
    scale = max(abs(c1 * complex(hankel1(nu, z))), abs(c2 * complex(hankel2(nu, z))), abs(lhs))
    assert abs(lhs - rhs) <= 1e-9 * scale


@FAST
@given(st.floats(0.05, 5), st.floats(-4, 4), st.floats(-2.5, -0.05), st.sampled_from(xp.BRANCHES))
def test_exp_solutions_solve_the_ode(E, re, im, branch):
    assert xp.ode_residual(branch, E, complex(re, im)) <= 1e-9


@FAST
@given(st.floats(-4, 4), st.floats(-3, -0.01))
def test_potential_periodic(re, im):
    x = complex(re, im)
    assert abs(xp.potential(x + math.pi) - xp.potential(x)) <= 1e-14 * abs(xp.potential(x))


@FAST
@given(st.lists(st.tuples(st.integers(-10**6, 10**6), reals, st.text("abcxyz_", min_size=1, max_size=5)),
                max_size=20))
def test_csv_round_trip(rows):
    header = ("n", "value", "label")
    text = tables.format_csv(header, rows)
    h, back = tables.parse_csv(text)
    assert tuple(h) == header
    assert [tuple(r) for r in back] == [tuple(r) for r in rows]


@FAST
@given(st.lists(st.floats(-5, 5), max_size=8), st.lists(st.floats(-5, 5), max_size=8), st.floats(0, 1))
def test_match_spectrum_window(numerical, analytic, window):
    rep = numerics.match_spectrum(np.array(numerical), analytic, window)
    assert len(rep.levels) == len(analytic)
    for lv in rep.levels:
        if lv.matched:
            assert lv.delta < window
    assert sum(lv.matched for lv in rep.levels) <= len(numerical)
