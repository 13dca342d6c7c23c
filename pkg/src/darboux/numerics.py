"""Independent numerical layer: grids, finite differences, eigenvalues, quadrature."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError, ParityError

# 4th-order central stencils
LAPLACIAN_4 = np.array([-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12])
FIRST_4 = np.array([1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12])


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid including both endpoints."""

    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)) or self.hi <= self.lo:
            raise DomainError(f"grid needs finite lo < hi, got [{self.lo}, {self.hi}]")
        if int(self.count) != self.count or self.count < 16:
            raise DomainError(f"grid count must be an integer >= 16, got {self.count}")

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.count - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, int(self.count))

    @classmethod
    def parse(cls, text: str) -> "Grid1D":
        """Parse ``lo:hi:count``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ParameterError(f"grid must look like lo:hi:count, got {text!r}")
        try:
            return cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise ParameterError(f"bad grid {text!r}: {exc}") from None

    def refined(self) -> "Grid1D":
        """Same interval with the spacing halved."""
        return Grid1D(self.lo, self.hi, 2 * self.count - 1)


# ---------------------------------------------------------------------------
# finite differences

def second_derivative(values, h: float, order: int = 4) -> np.ndarray:
    """Central second derivative at the interior points (2 lost at each end)."""
    v = np.asarray(values)
    if order == 4:
        c = LAPLACIAN_4
        return (c[0] * v[:-4] + c[1] * v[1:-3] + c[2] * v[2:-2] + c[3] * v[3:-1] + c[4] * v[4:]) / h**2
    if order == 2:
        return (v[1:-3] - 2.0 * v[2:-2] + v[3:-1]) / h**2
    raise ParameterError(f"order must be 2 or 4, got {order}")


def first_derivative(values, h: float, order: int = 4) -> np.ndarray:
    """Central first derivative at the interior points (2 lost at each end)."""
    v = np.asarray(values)
    if order == 4:
        c = FIRST_4
        return (c[0] * v[:-4] + c[1] * v[1:-3] + c[3] * v[3:-1] + c[4] * v[4:]) / h
    if order == 2:
        return (v[3:-1] - v[1:-3]) / (2.0 * h)
    raise ParameterError(f"order must be 2 or 4, got {order}")


def apply_hamiltonian(psi, potential, h: float, order: int = 4) -> np.ndarray:
    """(-1/2 psi'' + V psi) at the interior points psi[2:-2]."""
    psi = np.asarray(psi)
    v = np.asarray(potential)
    return -0.5 * second_derivative(psi, h, order) + v[2:-2] * psi[2:-2]


def eigen_residual(psi, potential, energy, h: float, order: int = 4) -> float:
    """||H psi - E psi||_2 / ||psi||_2 on the interior of the grid."""
    psi = np.asarray(psi)
    r = apply_hamiltonian(psi, potential, h, order) - energy * psi[2:-2]
    return float(np.linalg.norm(r) / np.linalg.norm(psi[2:-2]))


def discretize_hamiltonian(potential, grid: Grid1D) -> np.ndarray:
    """Dense matrix of H = -1/2 d^2/dx^2 + V on the grid interior.

    The endpoints carry psi = 0 and are not unknowns; the one stencil point
    beyond an endpoint is filled by odd reflection, which keeps the
    boundary closure fourth order for functions vanishing there.
    """
    if grid.count < 64:
        raise DomainError(f"discretize_hamiltonian needs count >= 64, got {grid.count}")
    pts = grid.points
    v = potential(pts) if callable(potential) else np.asarray(potential)
    v = np.broadcast_to(np.asarray(v, dtype=complex), pts.shape)
    if not np.all(np.isfinite(v)):
        raise DomainError("potential samples must be finite")
    n = grid.count - 2
    h = grid.spacing
    c = -0.5 * LAPLACIAN_4 / h**2
    mat = np.zeros((n, n), dtype=complex)
    idx = np.arange(n)
    for off, coef in zip((-2, -1, 0, 1, 2), c):
        sel = idx[(idx + off >= 0) & (idx + off < n)]
        mat[sel, sel + off] = coef
    # odd reflection: psi(lo - h) = -psi(lo + h)
    mat[0, 0] -= c[0]
    mat[-1, -1] -= c[4]
    mat[idx, idx] += v[1:-1]
    return mat


# ---------------------------------------------------------------------------
# eigenvalues

@dataclass
class EigenSet:
    eigenvalues: np.ndarray
    converged: np.ndarray
    iterations: int
    method: str

    def sorted(self) -> "EigenSet":
        order = np.lexsort((self.eigenvalues.imag, self.eigenvalues.real))
        return EigenSet(self.eigenvalues[order], self.converged[order], self.iterations, self.method)

    def smallest(self, k: int) -> np.ndarray:
        """The k eigenvalues of smallest real part."""
        return self.sorted().eigenvalues[:k]


def hessenberg(a) -> np.ndarray:
    """Unitary similarity reduction to upper Hessenberg form (Householder)."""
    h = np.array(a, dtype=complex)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k]
        norm = np.linalg.norm(x)
        if norm == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * norm
        v /= np.linalg.norm(v)
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h


def _wilkinson_shift(a, b, c, d):
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    m1 = 0.5 * (a + d) + disc
    m2 = 0.5 * (a + d) - disc
    return m1 if abs(m1 - d) < abs(m2 - d) else m2


def _qr_hessenberg(h, tol):
    n = h.shape[0]
    eig = np.zeros(n, dtype=complex)
    done = np.zeros(n, dtype=bool)
    hi = n - 1
    its = 0
    total = 0
    limit = 50 * n
    eps = np.finfo(float).eps
    while hi >= 0:
        if hi == 0:
            eig[0] = h[0, 0]
            done[0] = True
            break
        lo = hi
        while lo > 0:
            scale = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if scale == 0.0:
                scale = np.abs(h[max(lo - 2, 0):lo + 2, max(lo - 2, 0):lo + 2]).sum()
            if abs(h[lo, lo - 1]) <= max(tol, eps) * scale:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eig[hi] = h[hi, hi]
            done[hi] = True
            hi -= 1
            its = 0
            continue
        total += 1
        its += 1
        if total > limit:
            diag = np.diag(h).copy()
            eig[~done] = diag[~done]
            raise ConvergenceError(
                f"QR iteration exceeded {limit} sweeps",
                partial=EigenSet(eig, done.copy(), total, "qr"),
            )
        if its % 11 == 10:
            # exceptional shift to break cycles
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson_shift(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        idx = np.arange(lo, hi + 1)
        h[idx, idx] -= mu
        rots = []
        for k in range(lo, hi):
            x = h[k, k]
            y = h[k + 1, k]
            r = np.hypot(abs(x), abs(y))
            if r == 0.0:
                c, s = 1.0 + 0j, 0j
            else:
                c, s = x / r, y / r
            rows = h[k:k + 2, k:hi + 1]
            top = c.conjugate() * rows[0] + s.conjugate() * rows[1]
            bot = -s * rows[0] + c * rows[1]
            rows[0] = top
            rows[1] = bot
            h[k + 1, k] = 0.0
            rots.append((c, s))
        for k, (c, s) in zip(range(lo, hi), rots):
            top = min(k + 2, hi)
            cols = h[lo:top + 1, k:k + 2]
            left = c * cols[:, 0] + s * cols[:, 1]
            right = -s.conjugate() * cols[:, 0] + c.conjugate() * cols[:, 1]
            cols[:, 0] = left
            cols[:, 1] = right
        h[idx, idx] += mu
    return eig, done, total


QR_AUTO_LIMIT = 200


def eigenvalues(matrix, tol: float = 1e-14, method: str = "auto") -> EigenSet:
    """Eigenvalues of a dense complex matrix.

    ``method='qr'`` is the in-package Hessenberg + shifted QR solver;
    ``'lapack'`` defers to numpy's LAPACK binding. ``'auto'`` uses the former
    up to ``QR_AUTO_LIMIT`` and the latter beyond, where a pure-Python sweep
    would take minutes.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DomainError("eigenvalues needs a non-empty square matrix")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix entries must be finite")
    n = a.shape[0]
    if n > 4096:
        raise DomainError(f"dense eigensolver is capped at dimension 4096, got {n}")
    if method == "auto":
        method = "qr" if n <= QR_AUTO_LIMIT else "lapack"
    if method == "lapack":
        vals = np.linalg.eigvals(a)
        return EigenSet(vals, np.ones(n, dtype=bool), 0, "lapack")
    if method != "qr":
        raise ParameterError(f"unknown eigen method {method!r}")
    h = hessenberg(a)
    vals, done, total = _qr_hessenberg(h, tol)
    return EigenSet(vals, done, total, "qr")


# ---------------------------------------------------------------------------
# quadrature

def simpson(samples, h: float):
    """Composite Simpson rule on an odd number of equally spaced samples."""
    y = np.asarray(samples)
    n = y.shape[0]
    if n < 3 or n % 2 == 0:
        raise ParityError(f"Simpson's rule needs an odd sample count >= 3, got {n}")
    total = y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum()
    return total * h / 3.0


def quadrature(samples, grid: Grid1D):
    """Integral of sampled values over ``grid`` by composite Simpson."""
    y = np.asarray(samples)
    if y.shape[0] != grid.count:
        raise DomainError(f"expected {grid.count} samples, got {y.shape[0]}")
    val = simpson(y, grid.spacing)
    return complex(val) if np.iscomplexobj(val) else float(val)


# ---------------------------------------------------------------------------
# ODE residual

def _five_point(u, x, step, direction, scaled, ref_scale):
    offsets = (-2, -1, 0, 1, 2)
    vals = []
    for k in offsets:
        pts = x + k * step * direction
        if scaled:
            mant, ls = u(pts)
            vals.append(np.asarray(mant) * np.exp(np.asarray(ls) - ref_scale))
        else:
            vals.append(np.asarray(u(pts)))
    return (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * step**2) / direction**2, vals[2]


def ode_residual(
    u: Callable,
    potential: Callable,
    energy: float,
    points,
    *,
    h_rel: float = 1e-2,
    richardson: bool = True,
    direction=1.0,
    scaled: bool = False,
    step: Optional[float] = None,
) -> float:
    """max |-u''/2 + V u - E u| / max(|u''/2|, |V u|, |E u|, |u|/2) over ``points``.

    u'' comes from five-point differences on u along ``direction`` (a unit
    complex number, for contours) with Richardson extrapolation. The step
    follows the local length scale 1/sqrt|2(V-E)|. With ``scaled`` the
    evaluator returns (mantissa, log_scale) pairs so values beyond the
    floating-point range can be handled.
    """
    x = np.atleast_1d(np.asarray(points))
    d = np.asarray(direction)
    if np.iscomplexobj(d) and np.all(d.imag == 0) and not np.iscomplexobj(x):
        d = d.real
    d = np.broadcast_to(d, x.shape)
    v = np.asarray(potential(x))
    if step is None:
        scale = 1.0 / np.sqrt(np.maximum(np.abs(2.0 * (v - energy)), 1.0))
        h = h_rel * scale
    else:
        h = np.full(x.shape, float(step))
    if scaled:
        _, ref = u(x)
        ref = np.asarray(ref)
    else:
        ref = None
    d2, u0 = _five_point(u, x, h, d, scaled, ref)
    if richardson:
        d2_half, _ = _five_point(u, x, 0.5 * h, d, scaled, ref)
        d2 = (16.0 * d2_half - d2) / 15.0
    lhs = -0.5 * d2 + (v - energy) * u0
    denom = np.maximum.reduce([np.abs(0.5 * d2), np.abs(v * u0), np.abs(energy * u0), 0.5 * np.abs(u0), np.full(x.shape, 1e-300)])
    return float(np.max(np.abs(lhs) / denom))


def jet_residual(u, d2u, v, energy) -> float:
    """Same normalization as ode_residual for analytically known u''."""
    u, d2u, v = np.asarray(u), np.asarray(d2u), np.asarray(v)
    lhs = -0.5 * d2u + (v - energy) * u
    denom = np.maximum.reduce([np.abs(0.5 * d2u), np.abs(v * u), np.abs(energy * u), 0.5 * np.abs(u), np.full(u.shape, 1e-300)])
    return float(np.max(np.abs(lhs) / denom))


# ---------------------------------------------------------------------------
# spectrum matching

@dataclass
class LevelMatch:
    analytic: float
    numerical: Optional[complex]
    delta: Optional[float]
    imag: Optional[float]

    @property
    def matched(self) -> bool:
        return self.numerical is not None


@dataclass
class SpectrumReport:
    levels: list = field(default_factory=list)

    @property
    def all_matched(self) -> bool:
        return all(lv.matched for lv in self.levels)

    @property
    def unmatched(self) -> list:
        return [lv.analytic for lv in self.levels if not lv.matched]

    @property
    def max_delta(self) -> float:
        ds = [lv.delta for lv in self.levels if lv.matched]
        return max(ds) if ds else float("nan")

    @property
    def max_imag(self) -> float:
        ds = [lv.imag for lv in self.levels if lv.matched]
        return max(ds) if ds else float("nan")


def match_spectrum(numerical, analytic: Sequence[float], window: float) -> SpectrumReport:
    """Greedy nearest matching of analytic levels to numerical eigenvalues.

    A level matches the closest still-unused eigenvalue if that lies strictly
    within ``window``.
    """
    vals = numerical.eigenvalues if isinstance(numerical, EigenSet) else np.asarray(numerical, dtype=complex)
    vals = np.asarray(vals, dtype=complex)
    used = np.zeros(vals.shape, dtype=bool)
    report = SpectrumReport()
    for a in analytic:
        best = None
        if vals.size:
            dist = np.abs(vals - a)
            dist[used] = np.inf
            j = int(np.argmin(dist))
            if dist[j] < window:
                best = j
        if best is None:
            report.levels.append(LevelMatch(float(a), None, None, None))
        else:
            used[best] = True
            e = complex(vals[best])
            report.levels.append(LevelMatch(float(a), e, abs(e.real - a), abs(e.imag)))
    return report
