import cmath
import math

import mpmath
import numpy as np
import pytest

from darboux import bender_boettcher as bb
from darboux import core, harmonic
from darboux.bender_boettcher import BBParams
from darboux.core import CallableSeed
from darboux.errors import BranchCutError, DomainError, ParameterError, ZeroCrossingError

NS = (2, 3, 4, 6)


def mp_seed(N, alpha, beta, x, dps=40):
    """z^nu (alpha I_nu(z) + beta K_nu(z)) written through entire 0F1 series in x."""
    with mpmath.workdps(dps):
        nu = mpmath.mpf(1) / (N + 2)
        ix = 1j * mpmath.mpc(x)
        s = ix ** (N + 2) / (N + 2) ** 2
        z2nu = (mpmath.mpf(2) / (N + 2)) ** (2 * nu) * ix
        f_plus = mpmath.hyp0f1(nu + 1, s) / mpmath.gamma(nu + 1)
        f_minus = mpmath.hyp0f1(1 - nu, s) / mpmath.gamma(1 - nu)
        zi_plus = z2nu * 2 ** -nu * f_plus
        zi_minus = 2 ** nu * f_minus
        zk = mpmath.pi / (2 * mpmath.sin(nu * mpmath.pi)) * (zi_minus - zi_plus)
        return alpha * zi_plus + beta * zk


def test_v1_examples():
    x = np.linspace(-3, 3, 7)
    assert np.allclose(bb.v1(2, x), x * x / 2, rtol=0, atol=1e-15)
    assert np.allclose(bb.v1(4, x), -x**4 / 2, rtol=0, atol=1e-15)
    assert bb.v1(3, np.array([-1j]))[0] == pytest.approx(-0.5)


def test_noninteger_power_cut():
    with pytest.raises(BranchCutError):
        bb.v1(2.5, np.array([1j]))


def test_params_validation():
    with pytest.raises(ParameterError):
        BBParams(1.5)
    with pytest.raises(ParameterError):
        BBParams(3, 0, 0)
    assert BBParams(2).nu == 0.25


def test_contour_directions():
    c = bb.contour(2, 5.0, 11)
    assert np.all(c.x.imag == 0) and c.x[0] == -5 and c.x[-1] == 5
    plus, minus = bb.ray_angles(4)
    assert plus == pytest.approx(-math.pi / 6) and minus == pytest.approx(-5 * math.pi / 6)
    c = bb.contour(4, 10.0, 21)
    assert cmath.phase(c.x[-1]) == pytest.approx(-math.pi / 6)
    assert cmath.phase(c.x[0]) == pytest.approx(-5 * math.pi / 6)


def test_contour_validation():
    with pytest.raises(DomainError):
        bb.contour(3, 10.0, 400)
    with pytest.raises(DomainError):
        bb.contour(3, -1.0, 11)


@pytest.mark.parametrize("N", NS)
def test_z_image_on_cut(N):
    c = bb.contour(N, 20.0, 401)
    z, _ = bb.map_z_nu(N, c.x[[0, -1]])
    assert np.all(np.abs(np.abs(np.angle(z)) - math.pi) < 0.05)


def test_map_examples():
    x = np.array([0.5, 2.0, 3.0])
    z, nu = bb.map_z_nu(2, x)
    assert nu == 0.25
    assert np.allclose(z, -x * x / 2, rtol=1e-15)
    z, _ = bb.map_z_nu(3, np.array([2.0, 4.0]) * np.exp(-0.3j))
    assert abs(z[1]) / abs(z[0]) == pytest.approx(2 ** 2.5)


@pytest.mark.parametrize("N", NS)
@pytest.mark.parametrize("alpha,beta", [(1, 0), (1, 1), (1, 1j), (0, 1), (0.3 - 0.2j, 1.1)])
def test_seed_against_entire_series(N, alpha, beta):
    s = bb.seed(BBParams(N, alpha, beta))
    c = bb.contour(N, 20.0, 41, shift=0.3)
    pts = np.concatenate([c.x, [0.7, -1.2j, 2 - 0.5j]])
    u, ls = s.scaled(pts)
    for x, m, l in zip(pts, u, ls):
        ref = mp_seed(N, alpha, beta, x)
        got = mpmath.mpc(complex(m)) * mpmath.exp(l)
        assert abs(got - ref) / abs(ref) < 1e-11


@pytest.mark.parametrize("N", (3, 4))
def test_seed_against_mpmath_bessel(N):
    # where arg z stays principal, z^nu (alpha I + beta K) directly
    for x in (-0.4j, -3j * cmath.exp(0.2j), -2.2j * cmath.exp(-0.25j)):
        z, nu = bb.map_z_nu(N, np.array([x]))
        z = complex(z[0])
        ref = z ** nu * (mpmath.besseli(nu, z) + (0.5 + 0.5j) * mpmath.besselk(nu, z))
        u, _ = bb.seed_u(BBParams(N, 1, 0.5 + 0.5j), np.array([x]))
        assert abs(u[0] - complex(ref)) / abs(complex(ref)) < 1e-12


def test_seed_small_x_leading_term():
    N = 3
    x = np.array([-1e-3j * cmath.exp(0.1j)])
    z, nu = bb.map_z_nu(N, x)
    lead = z[0] ** nu * (z[0] / 2) ** nu / math.gamma(nu + 1)
    u, _ = bb.seed_u(BBParams(N, 1, 0), x)
    assert abs(u[0] / lead - 1) < 1e-5


def test_decaying_combination_against_high_precision():
    N = 3
    p = BBParams(N, bb.decaying_ratio(N), 1)
    c = bb.contour(N, 6.0, 13)
    u, ls = bb.seed(p).scaled(c.x)
    # the growing part is snapped to zero, so the oracle uses the exact ratio
    with mpmath.workdps(120):
        nu = mpmath.mpf(1) / (N + 2)
        exact = 1j * mpmath.pi * mpmath.exp(-1j * mpmath.pi * nu)
        for x, m, l in zip(c.x[c.t > 0.5], u[c.t > 0.5], ls[c.t > 0.5]):
            ref = mp_seed(N, exact, 1, x, dps=120)
            assert abs(mpmath.mpc(complex(m)) * mpmath.exp(l) - ref) / abs(ref) < 1e-9


@pytest.mark.parametrize("N", NS)
def test_seed_residuals(N):
    c = bb.contour(N, 20.0, 401)
    c_fd = bb.contour(N, 20.0, 101)
    for a, b in ((1, 0), (1, 1), (1, 1j)):
        p = BBParams(N, a, b)
        assert bb.seed_residual(p, c) <= 1e-7
        assert bb.seed_residual(p, c_fd, analytic=False) <= 1e-7


def test_fifty_point_residual_n3():
    c = bb.contour(3, 10.0, 51)
    assert bb.seed_residual(BBParams(3, 1, 0), c, analytic=False) <= 1e-7


@pytest.mark.parametrize("N", NS)
def test_partner_approaches_v1(N):
    for br in (1, -1):
        r = bb.asymptotic_ratio(BBParams(N, 1, 1), [10.0, 20.0], branch=br)
        assert r[1] < 0.5 * r[0]


def test_oscillator_reduction():
    x = np.linspace(-6, 6, 121)
    for b in (0, 0.3, 1j):
        assert bb.harmonic_reduction_defect(BBParams(2, 1, b), x) <= 1e-8
    with pytest.raises(ParameterError):
        bb.harmonic_reduction_defect(BBParams(3, 1, 0), x)


def test_oscillator_reduction_up_to_constant():
    # alpha=1, beta=0 is odd, so it is a multiple of the odd eps=0 oscillator solution
    x = np.linspace(0.2, 5, 25)
    u, _ = bb.seed_u(BBParams(2, 1, 0), x.astype(complex))
    _, o = harmonic.basis(0.0, x)
    ratio = u / (o * np.exp(x * x / 2))
    assert np.ptp(np.abs(ratio)) / np.abs(ratio[0]) < 1e-8


@pytest.mark.parametrize("N", (3, 4))
def test_partner_matches_bessel_form(N):
    for a, b in ((1, 1), (1, 0), (1, 0.4 - 1j)):
        p = BBParams(N, a, b)
        c = bb.contour(N, 6.0, 61)
        x = c.x[np.abs(c.x) > 0.5]
        v = core.partner_values(bb.seed(p), lambda y: bb.v1(N, y), x)
        vb = bb.v2_bessel(p, x)
        assert np.max(np.abs(v - vb) / np.abs(vb)) <= 1e-8


def test_pt_defect_examples():
    c = bb.contour(3, 10.0, 201)
    non_pt = bb.partner_v2(BBParams(3, 1, 1j), c).values
    assert np.max(bb.pt_defect(non_pt)) > 1e-3
    pt = bb.partner_v2(BBParams(3, 1, 1), c).values
    assert np.max(bb.pt_defect(pt)) / np.max(np.abs(pt)) < 1e-10


@pytest.mark.parametrize("N", (2, 3, 4, 6))
def test_classification(N):
    for scale in (10.0, 20.0):
        c = bb.contour(N, scale, 401)
        assert bb.susy_classification(BBParams(N, 1, 1), c) is bb.SusyPhase.UNBROKEN
        assert bb.susy_classification(BBParams(N, bb.decaying_ratio(N), 1), c) is bb.SusyPhase.BROKEN


def test_classification_pure_i_needs_shifted_contour():
    # u = z^nu I_nu vanishes at x = 0, so the contour is moved below the origin
    for scale in (10.0, 20.0):
        c = bb.contour(3, scale, 401, shift=0.5)
        assert bb.susy_classification(BBParams(3, 1, 0), c) is bb.SusyPhase.UNBROKEN
    with pytest.raises(ZeroCrossingError):
        bb.susy_classification(BBParams(3, 1, 0), bb.contour(3, 10.0, 401))


def test_pure_k_classification():
    c = bb.contour(3, 10.0, 401, shift=0.5)
    assert bb.susy_classification(BBParams(3, 0, 1), c) is bb.SusyPhase.UNBROKEN


def test_corrupted_seed_zero_detected():
    N = 3
    good = bb.seed(BBParams(N, 1, 1))
    c = bb.contour(N, 8.0, 401)
    bad = CallableSeed(lambda x: good.evaluate(x)[0] * (x - c.x[230]), lambda x: np.ones_like(x), 0.0,
                       family_tag="bender_boettcher")
    with pytest.raises(ZeroCrossingError):
        core.partner_potential(bad, lambda y: bb.v1(N, y), c)
    assert core.check_zero_free(good, c).verdict


def test_scaled_ik_regions_agree():
    for mu in (0.2, -0.8):
        for w in (250 + 40j, 350 - 60j):
            ie, ke = bb.scaled_ik(mu, np.array([w]))
            ref_i = complex(mpmath.besseli(mu, w) * mpmath.exp(-w))
            ref_k = complex(mpmath.besselk(abs(mu), w) * mpmath.exp(w))
            assert abs(ie[0] - ref_i) / abs(ref_i) < 1e-12
            assert abs(ke[0] - ref_k) / abs(ref_k) < 1e-12
