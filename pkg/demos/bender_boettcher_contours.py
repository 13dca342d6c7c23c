"""Partners of V1 = -(ix)^N along the Stokes-wedge contour.

Shows the contour rays, seed residuals, PT symmetry of the partner and the
unbroken/broken classification of the SUSY pair.
"""

import math

import numpy as np

from darboux import bender_boettcher as bb
from darboux.bender_boettcher import BBParams

for N in (2, 3, 4, 6):
    left, right = bb.ray_angles(N)
    print(f"\nN = {N}: rays at {math.degrees(left):7.2f} and {math.degrees(right):7.2f} degrees")
    c = bb.contour(N, 20.0, 401)
    for alpha, beta in ((1, 1), (1, 1j)):
        p = BBParams(N, alpha, beta)
        print(f"  alpha={alpha}, beta={beta!s:>3}: seed residual {bb.seed_residual(p, c):.1e}")
    pt = bb.partner_v2(BBParams(N, 1, 1), c).values
    print(f"  PT defect of V2 for real alpha, beta: {np.max(bb.pt_defect(pt)) / np.max(np.abs(pt)):.1e}")

    ratio = bb.decaying_ratio(N)
    print(f"  alpha/beta = {ratio:.4f} makes u decay on the right ray")
    print(f"    (1, 1)           -> {bb.susy_classification(BBParams(N, 1, 1), c).value}")
    print(f"    (ratio, 1)       -> {bb.susy_classification(BBParams(N, ratio, 1), c).value}")

print("\nThe pure I_nu seed vanishes at x = 0; the contour is lowered by 0.5 instead.")
shifted = bb.contour(3, 20.0, 401, shift=0.5)
print(f"  N = 3, (1, 0) on shifted contour -> {bb.susy_classification(BBParams(3, 1, 0), shifted).value}")

print("\nAt N = 2 the seed reduces to the oscillator case:")
x = np.linspace(-6, 6, 121)
for beta in (0, 0.3, 1j):
    print(f"  beta = {beta!s:>3}: cross-check defect {bb.harmonic_reduction_defect(BBParams(2, 1, beta), x):.1e}")
