"""The periodic complex potential e^{2ix}/2 continued through m stripes.

Compares the exact perforated spectra with the semiclassical ladder and
checks the action integral between turning points.
"""

import math

from darboux import exp_potential as xp


def show(result, limit=8):
    for kind, m, n, nu, e, excluded in result.rows()[:limit]:
        tag = "  (excluded)" if excluded else ""
        print(f"    n={n:2d}  nu={str(nu):>5}  E={str(e):>7} = {float(e):.5f}{tag}")


for m in (1, 2, 3, 4):
    exact = xp.exact_spectrum(m, 6)
    print(f"\nm = {m}: {exact.kind.value}")
    if exact.kind is xp.SpectrumKind.UNBOUND:
        print(f"    {exact.notes[0]}")
    else:
        show(exact)
    semi = xp.semiclassical_spectrum(m, 3)
    print("  semiclassical: " + ", ".join(f"{float(e):.5f}" for e in semi.energies))

print("\nOdd and even sectors share levels: m=2 and m=3 give",
      xp.exact_spectrum(2, 4).energies == xp.exact_spectrum(3, 4).energies)

print("\nAction integral between x1 = -i log k and x1 + m pi:")
for k, m in ((1.0, 2), (0.5, 1), (2.0, 3)):
    val = xp.action_integral(k, m)
    print(f"  k={k}, m={m}: I = {val:.9f}   m pi k = {m * math.pi * k:.9f}")

print("\nContinuation of H1 onto the m-th sheet, nu = 0.3:")
for m in (1, 2, 3):
    c1, c2 = xp.continuation_coefficients(0.3, m)
    print(f"  m={m}: H1 -> ({c1:.4f}) H1 + ({c2:.4f}) H2")
