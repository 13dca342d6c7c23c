"""Walk through the oscillator partners: admissible beta, PT symmetry, spectrum.

Run with ``python demos/harmonic_partners.py``. Takes a few seconds.
"""

import numpy as np

from darboux import harmonic, numerics
from darboux.errors import AdmissibilityError
from darboux.harmonic import HarmonicParams
from darboux.numerics import Grid1D


def section(title):
    print(f"\n== {title}")


section("real beta must stay below beta_c(eps)")
for eps in (-2.0, -1.0, -0.5, 0.0, 0.4):
    print(f"  eps = {eps:5.2f}   beta_c = {harmonic.beta_c(eps):.10f}")
try:
    harmonic.require_admissible(HarmonicParams(-0.5, 2.0))
except AdmissibilityError as exc:
    print(f"  beta = 2 at eps = -1/2 is rejected: {exc}")

section("the bisected boundary agrees with the closed form")
for eps in (-1.0, 0.0):
    found = harmonic.locate_zero_free_boundary(eps, tol=1e-7)
    print(f"  eps = {eps:4.1f}   bisection {found:.7f}   closed form {harmonic.beta_c(eps):.7f}")

section("imaginary beta keeps V2(-x) = conj V2(x); a real part breaks it")
for beta in (1j, 2j, 0.5 + 1j):
    v = harmonic.partner_v2(HarmonicParams(-0.5, beta)).values
    print(f"  beta = {beta!s:>8}   max PT defect {np.max(harmonic.pt_defect(v)):.2e}")

section("finite-difference spectrum of V2 for eps = -1/2, beta = i")
p = HarmonicParams(-0.5, 1j)
exact = harmonic.spectrum(p, count=5).lowest(6)
ev = harmonic.numerical_spectrum(p, Grid1D(-10.0, 10.0, 1201)).smallest(6)
rep = numerics.match_spectrum(ev, exact, window=5e-3)
for level, e in zip(exact, ev):
    print(f"  exact {level:5.2f}   numerical {e.real:+.6f} {e.imag:+.1e}i")
print(f"  all matched: {rep.all_matched}, worst |dE| = {rep.max_delta:.1e}")

section("the extra level eps carries the normalizable state 1/u")
ex = harmonic.extra_state(p)
print(f"  extra state found at E = {ex.energy}" if ex is not None else "  no extra state")
