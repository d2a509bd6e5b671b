"""Bessel sums, frame bounds and perturbation estimates for exponentials on IFS measures.

Frame bounds are computed exactly on the level-``n`` approximant: for atoms ``x_j`` with
weights ``w_j`` the frame operator of ``{e_lambda}`` on ``L^2(mu_n)`` is similar to
``T = W^{1/2} G W^{1/2}`` with ``G[j, k] = sum_lambda exp(2 pi i lambda.(x_j - x_k))``,
and its extreme eigenvalues are the optimal bounds.
"""

from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import LinearOperator, eigsh

from .errors import BudgetExceeded, InvalidBounds, NonHermitianDrift
from .fourier import FtConfig, ft_many
from .ifs_core import as_points, attractor_level, validate_ifs

DENSE_LIMIT = 4096
ITERATIVE_LIMIT = 16384
DRIFT_TOL = 1e-8
CACHE_ENTRIES = 2**24


@dataclass(frozen=True)
class FrameReport:
    lower: float
    upper: float
    level: int
    spectrum_size: int
    method: str


@dataclass(frozen=True)
class PerturbationBound:
    bessel_in: float
    support_radius: float
    displacement: float
    bessel_out_bound: float
    delta: float | None


def _spectrum_points(spectrum, dim):
    if spectrum is None:
        return np.empty((0, dim))
    pts = spectrum.points if hasattr(spectrum, "points") else as_points(spectrum, dim)
    return pts


def bessel_sum(ifs, spectrum, x, cfg=None):
    """``sum_lambda |mu^(x - lambda)|^2`` over a finite spectrum."""
    lam = _spectrum_points(spectrum, ifs.dim)
    if len(lam) == 0:
        return 0.0
    pt = as_points(x, ifs.dim)[0]
    vals, _, _ = ft_many(ifs, pt - lam, cfg)
    return float(np.sum(np.abs(vals) ** 2))


def bessel_grid(ifs, spectrum, xs, cfg=None):
    pts = as_points(xs, ifs.dim)
    return np.array([bessel_sum(ifs, spectrum, p, cfg) for p in pts])


def oversample_check(ifs, spectrum, n, xs, cfg=None):
    """``N^{-n} sum_lambda |mu^(x - (R*)^{-n} lambda)|^2`` at each ``x``.

    For an orthonormal spectrum of the full measure these tend to 1 as the truncation
    grows.
    """
    if n < 0:
        raise ValueError("oversampling power must be nonnegative")
    lam = _spectrum_points(spectrum, ifs.dim)
    shrink = np.linalg.matrix_power(ifs.adjoint_inv, n)
    images = lam @ shrink.T
    return bessel_grid(ifs, images, xs, cfg) / float(ifs.N) ** n


def _extremes_dense(V):
    T = V @ V.conj().T
    drift = float(np.max(np.abs(T - T.conj().T))) if T.size else 0.0
    if drift > DRIFT_TOL:
        raise NonHermitianDrift(f"symmetrization residual {drift:.3g}")
    ev = np.linalg.eigvalsh(0.5 * (T + T.conj().T))
    return float(ev[0]), float(ev[-1])


def _extremes_iterative(atoms, sqrt_w, lam, block=1024):
    m = len(atoms)

    def make(s):
        return np.exp(2j * np.pi * np.mod(atoms @ lam[s:s + block].T, 1.0)) * sqrt_w[:, None]

    starts = range(0, len(lam), block)
    cached = [make(s) for s in starts] if m * len(lam) <= CACHE_ENTRIES else None

    def blocks():
        return cached if cached is not None else (make(s) for s in starts)

    def matvec(v):
        v = np.ravel(v)
        out = np.zeros(m, dtype=complex)
        for Vb in blocks():
            out += Vb @ (Vb.conj().T @ v)
        return out

    op = LinearOperator((m, m), matvec=matvec, dtype=complex)
    hi = eigsh(op, k=1, which="LA", tol=1e-10, maxiter=10_000, return_eigenvectors=False)[0]
    if len(lam) < m:
        return 0.0, float(hi)
    lo = eigsh(op, k=1, which="SA", tol=1e-10, maxiter=10_000, return_eigenvectors=False)[0]
    return float(max(lo, 0.0)), float(hi)


def frame_bounds_measure(mu, spectrum, dense_limit=DENSE_LIMIT):
    """Optimal frame bounds of ``{e_lambda}`` in ``L^2`` of an atomic measure.

    Dense Hermitian eigensolve up to ``dense_limit`` atoms, Lanczos on the extremes above.
    """
    lam = _spectrum_points(spectrum, mu.dim)
    m = len(mu)
    if m > ITERATIVE_LIMIT:
        raise BudgetExceeded(f"{m} atoms exceeds eigensolver budget {ITERATIVE_LIMIT}")
    sqrt_w = np.sqrt(mu.weights)
    if len(lam) == 0:
        return FrameReport(0.0, 0.0, mu.level, 0, "eigen")
    if m <= dense_limit:
        V = np.exp(2j * np.pi * np.mod(mu.atoms @ lam.T, 1.0)) * sqrt_w[:, None]
        lo, hi = _extremes_dense(V)
        method = "eigen"
    else:
        lo, hi = _extremes_iterative(mu.atoms, sqrt_w, lam)
        method = "lanczos"
    return FrameReport(max(lo, 0.0), hi, mu.level, len(lam), method)


def frame_bounds_finite(ifs, level, spectrum):
    """Frame bounds of ``{e_lambda}`` on the level-``n`` approximant of the invariant measure."""
    mu = attractor_level(ifs, level, budget=ITERATIVE_LIMIT)
    return frame_bounds_measure(mu, spectrum)


def perturbation_bound(B, L, M_supp):
    """Bessel bound after moving every frequency by at most ``L``.

    ``(sqrt(B) + sqrt(B (e^{L^2} - 1)(e^{M^2} - 1)))^2`` with ``M`` the support radius.
    """
    if min(B, L, M_supp) < 0:
        raise ValueError("inputs must be nonnegative")
    extra = B * np.expm1(L**2) * np.expm1(M_supp**2)
    return float((np.sqrt(B) + np.sqrt(extra)) ** 2)


def stability_delta(A, B, M_supp):
    """Largest displacement keeping ``sqrt(A) - sqrt(B (e^{L^2}-1)(e^{M^2}-1))`` positive."""
    if not A > 0 or B < A:
        raise InvalidBounds(f"need 0 < A <= B, got A={A}, B={B}")
    denom = B * np.expm1(M_supp**2)
    if denom == 0:
        return np.inf
    return float(np.sqrt(np.log1p(A / denom)))


def perturbation_report(B, L, M_supp, A=None):
    delta = stability_delta(A, B, M_supp) if A is not None else None
    return PerturbationBound(B, M_supp, L, perturbation_bound(B, L, M_supp), delta)


_CANTOR = None


def _cantor():
    global _CANTOR
    if _CANTOR is None:
        _CANTOR = validate_ifs(3, [0, 2])[0]
    return _CANTOR


def bessel_divergence_probe(a, K, cfg=None, ifs=None):
    """Partial sums ``S_K = sum_{n<K} |mu^(3^n a)|^2`` for the middle-third Cantor measure.

    Every term equals ``|mu^(a)|^2`` for integer ``a``, so ``S_K`` grows linearly and
    ``{3^n a}`` is not a Bessel spectrum.  Returns ``(S_K, terms)``.
    """
    if int(a) != a or a == 0:
        raise ValueError("a must be a nonzero integer")
    ifs = ifs or _cantor()
    rho = abs(float(ifs.R[0, 0]))
    xs = np.array([rho**n * a for n in range(K)], dtype=float)
    vals, _, _ = ft_many(ifs, xs, cfg or FtConfig())
    terms = np.abs(vals) ** 2
    return float(np.sum(terms)), terms
