import math

import numpy as np
import pytest

from darboux import harmonic, numerics
from darboux.errors import DomainError, ParameterError, ParityError
from darboux.numerics import Grid1D


def test_grid_parse_and_refine():
    g = Grid1D.parse("-5:5:21")
    assert (g.lo, g.hi, g.count) == (-5.0, 5.0, 21)
    assert g.spacing == 0.5
    assert g.refined().spacing == 0.25


@pytest.mark.parametrize("text", ["1:2", "a:b:c", "3:1:20", "0:1:5"])
def test_grid_rejects(text):
    with pytest.raises((ParameterError, DomainError)):
        Grid1D.parse(text)


def test_infinite_well():
    g = Grid1D(0.0, math.pi, 64)
    ev = numerics.eigenvalues(numerics.discretize_hamiltonian(lambda x: 0 * x, g)).smallest(1)
    assert abs(ev[0] - 0.5) < 1e-4


def test_oscillator_levels():
    g = Grid1D(-12.0, 12.0, 2400)
    ev = numerics.eigenvalues(numerics.discretize_hamiltonian(lambda x: 0.5 * x * x, g)).smallest(5)
    assert np.max(np.abs(ev - np.array([0.5, 1.5, 2.5, 3.5, 4.5]))) < 1e-4


def test_laplacian_rows_annihilate_constants():
    g = Grid1D(0.0, 1.0, 80)
    mat = numerics.discretize_hamiltonian(np.zeros(80), g)
    assert np.max(np.abs(mat[2:-2].sum(axis=1))) < 1e-8 * np.max(np.abs(mat))


def test_discretize_rejects_small_and_nonfinite():
    with pytest.raises(DomainError):
        numerics.discretize_hamiltonian(lambda x: x, Grid1D(0, 1, 20))
    with pytest.raises(DomainError):
        numerics.discretize_hamiltonian(lambda x: np.full(x.shape, np.inf), Grid1D(0, 1, 100))


def test_eigenvalues_rotation():
    ev = np.sort_complex(numerics.eigenvalues(np.array([[0, 1], [-1, 0]]), method="qr").eigenvalues)
    assert np.allclose(ev, [-1j, 1j], atol=1e-14)


def test_eigenvalues_random_quartic(rng):
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    ours = numerics.eigenvalues(a, method="qr").eigenvalues
    roots = np.roots(np.poly(a))
    for r in roots:
        assert np.min(np.abs(ours - r)) < 1e-8


def test_eigenvalues_upper_triangular():
    a = np.triu(np.arange(1, 26).reshape(5, 5)).astype(complex)
    ev = numerics.eigenvalues(a, method="qr").eigenvalues
    assert sorted(ev.real) == [1.0, 7.0, 13.0, 19.0, 25.0]
    assert np.all(ev.imag == 0)


def test_qr_matches_lapack(rng):
    a = rng.standard_normal((60, 60)) + 1j * rng.standard_normal((60, 60))
    q = numerics.eigenvalues(a, method="qr").sorted().eigenvalues
    l = numerics.eigenvalues(a, method="lapack").sorted().eigenvalues
    assert np.max(np.abs(q - l)) < 1e-9


def test_eigenvalues_errors():
    with pytest.raises(DomainError):
        numerics.eigenvalues(np.ones((2, 3)))
    with pytest.raises(ParameterError):
        numerics.eigenvalues(np.eye(3), method="power")


def test_quadrature_examples():
    g = Grid1D(0.0, math.pi, 1001)
    assert abs(numerics.quadrature(np.sin(g.points), g) - 2) < 1e-8
    g = Grid1D(-12.0, 12.0, 2401)
    assert abs(numerics.quadrature(np.exp(-g.points**2), g) - math.sqrt(math.pi)) < 1e-10
    _, phi, _ = harmonic.base_eigensystem(2, g.points)
    assert abs(numerics.quadrature(phi**2, g) - 1) < 1e-8


def test_simpson_needs_odd_count():
    with pytest.raises(ParityError):
        numerics.quadrature(np.ones(2400), Grid1D(-12.0, 12.0, 2400))


def test_ode_residual_exact_and_perturbed():
    p = harmonic.HarmonicParams(-0.5, 0.3)
    s = harmonic.seed(p)
    pts = np.linspace(-4, 4, 50)
    assert numerics.ode_residual(s.scaled, harmonic.v1, p.epsilon, pts, scaled=True) <= 1e-7

    def bad(x):
        u, ls = s.scaled(x)
        return u * (1 + 1e-3 * np.asarray(x)), ls

    assert numerics.ode_residual(bad, harmonic.v1, p.epsilon, pts, scaled=True) > 1e-4


def test_ode_residual_fourth_order():
    # sin x solves -u''/2 = u/2; without Richardson the error is pure O(h^4)
    pts = np.linspace(0.3, 2.5, 12)
    r = [numerics.ode_residual(np.sin, lambda x: 0 * x, 0.5, pts, step=h, richardson=False) for h in (0.1, 0.05)]
    assert 14 < r[0] / r[1] < 18


def test_match_spectrum_examples():
    rep = numerics.match_spectrum(np.array([-0.5003, 0.5001, 1.4998 + 2e-7j]), [-0.5, 0.5, 1.5], window=2e-3)
    assert rep.all_matched
    assert rep.max_delta == pytest.approx(3e-4, rel=1e-6)
    empty = numerics.match_spectrum(np.array([]), [0.5, 1.5], window=1.0)
    assert empty.unmatched == [0.5, 1.5]
    none = numerics.match_spectrum(np.array([0.5]), [0.5], window=0.0)
    assert not none.all_matched


def test_match_spectrum_uses_each_eigenvalue_once():
    rep = numerics.match_spectrum(np.array([1.0]), [1.0, 1.0001], window=0.1)
    assert [lv.matched for lv in rep.levels] == [True, False]
