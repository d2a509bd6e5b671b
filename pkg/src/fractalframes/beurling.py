"""Upper Beurling densities and dimension of finite point sets.

Normalization: the ``r``-density divides the window count by ``h**r`` where the window
is ``x + h[-1, 1]^d``.  With this convention the integers have 1-density 2, not 1; the
classical ``1/(2h)`` density differs by exactly that factor of two.

A finite truncation has no ``h -> infinity`` limit, so the limsup is replaced by
windows up to a quarter of the set's extent, and the dimension by the log-log slope
of the maximal count over the middle of that range.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma
from scipy.stats import linregress
from scipy.spatial import cKDTree

from .errors import DegenerateFit, EmptySet
from .spectra import as_pointset

WINDOW_RTOL = 1e-12
MIDPOINT_BUDGET = 200_000


def ball_radius(dim):
    """Radius of the ball with Lebesgue measure ``2**dim`` (same volume as ``[-1, 1]^dim``)."""
    unit = np.pi ** (dim / 2) / gamma(dim / 2 + 1)
    return float((2.0**dim / unit) ** (1.0 / dim))


@dataclass(frozen=True)
class DensityConfig:
    window: str = "cube"
    h_min: float | None = None
    h_max: float | None = None
    count: int = 40
    fit_fraction: float = 0.6
    tail_fraction: float = 0.5

    def __post_init__(self):
        if self.window not in ("cube", "ball"):
            raise ValueError(f"unknown window {self.window!r}")
        if self.h_min is not None and not self.h_min > 0:
            raise ValueError("h_min must be positive")
        if self.h_min is not None and self.h_max is not None and self.h_max <= self.h_min:
            raise ValueError("h_max must exceed h_min")
        if self.count < 2:
            raise ValueError("grid needs at least two radii")
        if not 0 < self.fit_fraction <= 1 or not 0 < self.tail_fraction <= 1:
            raise ValueError("fractions must lie in (0, 1]")


@dataclass(eq=False)
class DensityReport:
    r: float
    h: np.ndarray
    max_count: np.ndarray
    center: np.ndarray
    density: np.ndarray
    h_cap: float
    fitted_dim: float | None = None
    fit_stderr: float | None = None
    r_density_at_dim: float | None = None
    meta: dict = field(default_factory=dict)

    @property
    def upper_density(self):
        """Finite-sample stand-in for the limsup: largest ``count / h^r`` over the top of the h-range."""
        return tail_max(self.h, self.density, self.meta.get("tail_fraction", 0.5))

    def rows(self):
        for i in range(len(self.h)):
            yield self.h[i], int(self.max_count[i]), self.center[i], self.density[i]


def tail_max(h, values, tail_fraction):
    logs = np.log(h)
    cut = logs[-1] - tail_fraction * (logs[-1] - logs[0])
    return float(np.max(values[logs >= cut - 1e-12]))


def _count_max_1d(p, h):
    # p sorted; closed window [c - h, c + h] holding p[i..j]
    slack = WINDOW_RTOL * max(1.0, abs(p[0]), abs(p[-1]))
    j = np.searchsorted(p, p + 2.0 * h + slack, side="right") - 1
    counts = j - np.arange(len(p)) + 1
    i = int(np.argmax(counts))
    return int(counts[i]), np.array([p[j[i]] - h])


def _count_max_nd(pts, h, window):
    d = pts.shape[1]
    if window == "cube":
        norm, radius = np.inf, h
    else:
        norm, radius = 2, h * ball_radius(d)
    radius *= 1.0 + WINDOW_RTOL
    tree = cKDTree(pts)
    candidates = [pts]
    corners = np.array(np.meshgrid(*[[-1.0, 1.0]] * d)).reshape(d, -1).T
    candidates += [pts + (radius if window == "cube" else radius / np.sqrt(d)) * s for s in corners]
    pairs = tree.query_pairs(r=2 * radius, p=norm, output_type="ndarray")
    if 0 < len(pairs) <= MIDPOINT_BUDGET:
        candidates.append(0.5 * (pts[pairs[:, 0]] + pts[pairs[:, 1]]))
    cand = np.concatenate(candidates)
    counts = tree.query_ball_point(cand, r=radius, p=norm, return_length=True)
    best = int(np.max(counts))
    hits = cand[counts == best]
    return best, hits[np.lexsort(hits.T[::-1])][0]


def count_max(points, h, window="cube"):
    """Largest number of points in a closed window of radius ``h``, and a center attaining it.

    In one dimension this is exact (sorted two-pointer sweep); the returned center is the
    smallest one.  In higher dimensions the sup is taken over candidate centers (the
    points, close-pair midpoints and corner-anchored shifts), which is a lower bound.
    """
    ps = as_pointset(points)
    if len(ps) == 0:
        raise EmptySet("count_max of an empty set")
    if not h > 0:
        raise ValueError("window radius must be positive")
    if ps.dim == 1:
        # the 1-D ball of volume 2 is [-1, 1]
        return _count_max_1d(np.sort(ps.flat), h)
    return _count_max_nd(ps.points, h, window)


def extent(points):
    """Sup-norm diameter of the set."""
    pts = as_pointset(points).points
    return float(np.max(np.ptp(pts, axis=0))) if len(pts) else 0.0


def _min_gap(pts):
    if len(pts) < 2:
        return None
    if pts.shape[1] == 1:
        gaps = np.diff(np.sort(pts[:, 0]))
        gaps = gaps[gaps > 0]
        return float(gaps.min()) if len(gaps) else None
    dist, _ = cKDTree(pts).query(pts, k=2, p=np.inf)
    pos = dist[:, 1][dist[:, 1] > 0]
    return float(pos.min()) if len(pos) else None


def h_grid(points, cfg):
    """Geometric grid of admissible window radii and the cap ``extent / 4``.

    Defaults: ``h_min`` is the smallest gap between points, ``h_max`` the cap.  A set
    with zero extent has no natural scale and uses ``[1, 1e6]``.
    """
    ps = as_pointset(points)
    ext = extent(ps)
    cap = ext / 4.0 if ext > 0 else np.inf
    h_min = cfg.h_min if cfg.h_min is not None else (_min_gap(ps.points) or 1.0)
    h_max = cfg.h_max if cfg.h_max is not None else (cap if np.isfinite(cap) else 1e6)
    h_max = min(h_max, cap)
    if not h_max > h_min:
        raise DegenerateFit(f"no admissible window radii: h_min={h_min}, cap={cap}")
    grid = np.geomspace(h_min, h_max, cfg.count)
    return grid, cap


def density_profile(points, r, cfg=None):
    """Per-radius maximal counts and ``count / h^r`` over the admissible grid."""
    cfg = cfg or DensityConfig()
    ps = as_pointset(points)
    if len(ps) == 0:
        raise EmptySet("density of an empty set")
    grid, cap = h_grid(ps, cfg)
    counts = np.empty(len(grid), dtype=np.int64)
    centers = []
    if ps.dim == 1:
        p = np.sort(ps.flat)
        for i, h in enumerate(grid):
            counts[i], c = _count_max_1d(p, h)
            centers.append(c)
    else:
        for i, h in enumerate(grid):
            counts[i], c = _count_max_nd(ps.points, h, cfg.window)
            centers.append(c)
    centers = np.array(centers)
    if ps.dim == 1:
        centers = centers[:, 0]
    return DensityReport(r=float(r), h=grid, max_count=counts, center=centers,
                         density=counts / grid**r, h_cap=cap,
                         meta={"window": cfg.window, "tail_fraction": cfg.tail_fraction,
                               "fit_fraction": cfg.fit_fraction, "size": len(ps)})


def fit_window(h, fit_fraction):
    """Mask of radii whose log lies in the middle ``fit_fraction`` of the log-range."""
    logs = np.log(h)
    lo, hi = logs[0], logs[-1]
    margin = 0.5 * (1.0 - fit_fraction) * (hi - lo)
    tol = 1e-12 * max(1.0, abs(lo), abs(hi))
    return (logs >= lo + margin - tol) & (logs <= hi - margin + tol)


def fit_dimension(h, counts, fit_fraction=0.6):
    sel = fit_window(h, fit_fraction)
    if sel.sum() < 5:
        raise DegenerateFit(f"only {int(sel.sum())} radii in the fit range, need 5")
    x, y = np.log(h[sel]), np.log(counts[sel])
    if np.ptp(x) == 0:
        raise DegenerateFit("zero variance in log h")
    fit = linregress(x, y)
    return max(float(fit.slope), 0.0), float(fit.stderr)


def estimate_dimension(points, cfg=None):
    """Least-squares slope of ``log max_count`` against ``log h``; returns ``(dim, stderr)``."""
    cfg = cfg or DensityConfig()
    prof = density_profile(points, 0.0, cfg)
    return fit_dimension(prof.h, prof.max_count, cfg.fit_fraction)


def beurling_report(points, r=None, cfg=None):
    """Profile at ``r`` (defaults to the fitted dimension) plus the fitted dimension.

    ``r_density_at_dim`` is the tail-max density at ``r = fitted_dim``.
    """
    cfg = cfg or DensityConfig()
    base = density_profile(points, 0.0, cfg)
    dim, err = fit_dimension(base.h, base.max_count, cfg.fit_fraction)
    r_used = dim if r is None else float(r)
    at_dim = tail_max(base.h, base.max_count / base.h**dim, cfg.tail_fraction)
    return DensityReport(r=r_used, h=base.h, max_count=base.max_count, center=base.center,
                         density=base.max_count / base.h**r_used, h_cap=base.h_cap,
                         fitted_dim=dim, fit_stderr=err, r_density_at_dim=at_dim,
                         meta=base.meta)
