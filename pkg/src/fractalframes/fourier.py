"""Fourier transform of IFS measures through the mask product.

The transform of the invariant measure is ``prod_{k>=1} m_B((R*)^{-k} x)`` with mask
``m_B(x) = (1/N) sum_b exp(2 pi i b.x)``.  For similarities the product is cut off with
a certified bound on what the discarded tail can change.

Zero sets.  For ``B = {0, b}`` in one dimension the mask vanishes exactly at
``(2k+1) / (2b)``, so the transform vanishes at ``rho^n (2k+1) / (2b)``, ``n >= 1``.
For the middle-third Cantor measure (``R = 3``, ``B = {0, 2}``) that is
``3^n (2k+1) / 4``.  Some texts write ``3^n (2k+1) pi / 4``; the extra ``pi`` belongs to
the ``exp(i b x)`` convention and does not apply to the ``exp(2 pi i b x)`` mask used here.
"""

from dataclasses import dataclass

import numpy as np

from .errors import MaxTermsExceeded, NotSimilarity, WrongFamily
from .ifs_core import as_points, similarity_info

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class FtConfig:
    eps: float = 1e-10
    max_terms: int = 200

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


@dataclass(frozen=True)
class FtValue:
    value: complex
    terms_used: int
    tail_bound: float


def _unpack(x, dim):
    pts = as_points(x, dim)
    scalar = np.ndim(x) == 0 or (dim > 1 and np.ndim(x) == 1)
    return pts, scalar


def _phase(theta):
    # reduce mod 1 before exponentiating to keep the argument small
    return np.exp(TWO_PI * 1j * np.mod(theta, 1.0))


def _mask_points(digits, pts):
    return np.mean(_phase(pts @ digits.T), axis=1)


def mask(spec, x):
    """``(1/N) sum_b exp(2 pi i b.x)``; ``x`` may be a single point or a batch."""
    pts, scalar = _unpack(x, spec.dim)
    vals = _mask_points(spec.digits, pts)
    return complex(vals[0]) if scalar else vals


def ft_truncated(spec, x, n):
    """``prod_{k=1..n} mask((R*)^{-k} x)``; the empty product (``n = 0``) is 1."""
    if n < 0:
        raise ValueError("number of terms must be nonnegative")
    pts, scalar = _unpack(x, spec.dim)
    step = spec.adjoint_inv.T  # row-vector form of y -> (R*)^{-1} y
    out = np.ones(len(pts), dtype=complex)
    y = pts
    for _ in range(n):
        y = y @ step
        out *= _mask_points(spec.digits, y)
    return complex(out[0]) if scalar else out


def _require_rho(spec):
    is_sim, rho = similarity_info(spec.R)
    if not is_sim:
        raise NotSimilarity("certified transform needs R to be a similarity")
    return rho


def terms_needed(spec, norms, cfg, rho=None):
    """Smallest ``n`` per point so that the tail after ``n`` factors is below ``cfg.eps``.

    Uses ``|m(y) - 1| <= c |y|`` with ``c = 2 pi max|b|`` and ``|(R*)^{-k} x| = rho^{-k}|x|``,
    giving the tail bound ``exp(c rho^{-n} |x| rho / (rho - 1)) - 1``, applied only once
    ``c rho^{-n} |x| <= 1/2``.  Returns ``(terms, tail_bounds)``.
    """
    if rho is None:
        rho = _require_rho(spec)
    c = TWO_PI * spec.max_digit_norm
    norms = np.asarray(norms, dtype=float)
    terms = np.zeros(norms.shape, dtype=np.int64)
    u = c * norms  # c * rho^{-n} * |x| at n = 0
    if c > 0:
        # exp(u * g) - 1 <= eps  <=>  u <= log1p(eps) / g
        g = rho / (rho - 1.0)
        target = min(np.log1p(cfg.eps) / g, 0.5)
        with np.errstate(divide="ignore"):
            need = np.ceil(np.log(np.maximum(u, 1e-300) / target) / np.log(rho))
        terms = np.where(u > target, need, 0).astype(np.int64)
        # guard against rounding in the closed-form count
        while True:
            ok = u * rho ** (-terms.astype(float)) <= target
            if ok.all():
                break
            terms = np.where(ok, terms, terms + 1)
        tails = np.expm1(u * rho ** (-terms.astype(float)) * g)
    else:
        tails = np.zeros(norms.shape)
    return terms, tails


def ft_many(spec, xs, cfg=None):
    """Certified transform at a batch of points.

    Returns ``(values, terms_used, tail_bounds)`` arrays; every ``|value - true| <= tail``.
    """
    cfg = cfg or FtConfig()
    rho = _require_rho(spec)
    pts = as_points(xs, spec.dim)
    norms = np.linalg.norm(pts, axis=1)
    terms, tails = terms_needed(spec, norms, cfg, rho)
    top = int(terms.max()) if len(terms) else 0
    if top > cfg.max_terms:
        raise MaxTermsExceeded(f"{top} factors needed, cap is {cfg.max_terms}")
    step = spec.adjoint_inv.T
    out = np.ones(len(pts), dtype=complex)
    y = pts
    for k in range(1, top + 1):
        y = y @ step
        active = terms >= k
        out[active] *= _mask_points(spec.digits, y[active])
    return out, terms, tails


def ft(spec, x, cfg=None):
    """Transform of the invariant measure at a single point, with its certified tail bound."""
    values, terms, tails = ft_many(spec, as_points(x, spec.dim)[:1], cfg)
    return FtValue(complex(values[0]), int(terms[0]), float(tails[0]))


def refinement_residual(spec, x, cfg=None):
    """``|ft(x) - mask((R*)^{-1}x) ft((R*)^{-1}x)|``; stays within ``3 eps``."""
    cfg = cfg or FtConfig()
    pt = as_points(x, spec.dim)[:1]
    y = pt @ spec.adjoint_inv.T
    lhs = ft(spec, pt, cfg).value
    rhs = _mask_points(spec.digits, y)[0] * ft(spec, y, cfg).value
    return abs(lhs - rhs)


def predict_zeros_1d(spec, radius):
    """Sorted zeros of the transform in ``[-radius, radius]`` for ``d = 1``, ``B = {0, b}``."""
    if spec.dim != 1 or spec.N != 2 or not spec.contains_zero:
        raise WrongFamily("zero prediction needs d = 1 and a digit set {0, b}")
    b = float(spec.digits[spec.digits[:, 0] != 0.0][0, 0])
    rho = abs(float(spec.R[0, 0]))
    base = 1.0 / (2.0 * abs(b))
    zeros = []
    n = 1
    while rho**n * base <= radius:
        scale = rho**n
        kmax = int(np.floor((radius / (scale * base) - 1.0) / 2.0))
        odd = 2.0 * np.arange(-kmax - 1, kmax + 1) + 1.0
        z = scale * base * odd
        zeros.append(z[np.abs(z) <= radius])
        n += 1
    if not zeros:
        return np.empty(0)
    z = np.sort(np.concatenate(zeros))
    # distinct (n, k) can give the same point, e.g. 3 * 3 = 9 * 1
    keep = np.concatenate([[True], np.diff(z) > 1e-12 * max(1.0, radius)])
    return z[keep]
