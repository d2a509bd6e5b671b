"""Candidate spectra: digit-expansion sets, their images and perturbations."""

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .errors import BudgetExceeded, EmptyAfterExclusion, SingularMatrix, SizeMismatch
from .ifs_core import as_matrix, as_points, similarity_info

DEDUP_TOL = 1e-12
DEFAULT_POINT_BUDGET = 2**22


@dataclass(frozen=True, eq=False)
class SpectrumSpec:
    """Either a digit set ``{c * sum_k S^k l_k}`` (``kind='digits'``) or explicit points."""

    kind: str
    base: np.ndarray | None = None
    digits: np.ndarray | None = None
    scale: float = 1.0
    points: np.ndarray | None = None

    @classmethod
    def digit_lambda(cls, base, digits, scale=1.0):
        S = as_matrix(base)
        L = as_points(digits, S.shape[0])
        if len(np.unique(L, axis=0)) != len(L):
            raise ValueError("spectrum digits must be distinct")
        if abs(np.linalg.det(S)) == 0.0:
            raise SingularMatrix("spectrum base must be invertible")
        return cls("digits", base=S, digits=L, scale=float(scale))

    @classmethod
    def explicit(cls, points, dim=1):
        return cls("explicit", points=as_points(points, dim))

    @property
    def dim(self):
        return self.base.shape[0] if self.kind == "digits" else self.points.shape[1]


@dataclass(eq=False)
class PointSet:
    points: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def dim(self):
        return self.points.shape[1]

    @property
    def flat(self):
        """The points as a 1-D array (one-dimensional sets only)."""
        if self.dim != 1:
            raise ValueError("flat view needs a one-dimensional point set")
        return self.points[:, 0]

    @property
    def sorted(self):
        return self.dim == 1 and bool(np.all(np.diff(self.points[:, 0]) >= 0))

    def __len__(self):
        return self.points.shape[0]

    @classmethod
    def from_array(cls, points, dim=None, **meta):
        arr = np.asarray(points, dtype=float)
        if dim is None:
            dim = 1 if arr.ndim <= 1 else arr.shape[1]
        return cls(as_points(arr, dim), dict(meta))


def as_pointset(obj, dim=None):
    return obj if isinstance(obj, PointSet) else PointSet.from_array(obj, dim)


def _canonical(points, tol=DEDUP_TOL):
    """Lexicographically sort and drop points within ``tol`` (sup-norm, relative) of a predecessor."""
    if len(points) == 0:
        return points
    order = np.lexsort(points.T[::-1])
    pts = points[order]
    scale = max(1.0, float(np.max(np.abs(pts))))
    if len(pts) > 1:
        if pts.shape[1] == 1:
            keep = np.concatenate([[True], np.diff(pts[:, 0]) > tol * scale])
        else:
            pairs = cKDTree(pts).query_pairs(r=tol * scale, p=np.inf, output_type="ndarray")
            keep = np.ones(len(pts), dtype=bool)
            if len(pairs):
                keep[pairs.max(axis=1)] = False
        pts = pts[keep]
    return pts


def enumerate_truncation(spec, level, budget=DEFAULT_POINT_BUDGET):
    """All ``c * sum_{k<level} S^k l_k``, deduplicated and lexicographically sorted."""
    if spec.kind != "digits":
        pts = _canonical(spec.points)
        return PointSet(pts, {"kind": "explicit", "level": None})
    count = len(spec.digits) ** level
    if count > budget:
        raise BudgetExceeded(f"{count} words exceeds point budget {budget}")
    S_T = spec.base.T
    pts = np.zeros((1, spec.dim))
    # sum_{k<n} S^k l_k = l_0 + S (sum_{k<n-1} S^k l_{k+1})
    for _ in range(level):
        shifted = pts @ S_T
        pts = np.concatenate([shifted + l for l in spec.digits])
    pts = _canonical(spec.scale * pts)
    return PointSet(pts, {"kind": "digits", "level": level, "scale": spec.scale})


def transform(ps, scale=None, matrix=None, translate=None):
    """Image of a point set under exactly one of ``scale``, ``matrix`` or ``translate``."""
    given = [a is not None for a in (scale, matrix, translate)]
    if sum(given) != 1:
        raise ValueError("pass exactly one of scale, matrix, translate")
    pts = ps.points
    if scale is not None:
        out, op = float(scale) * pts, ("scale", float(scale))
    elif matrix is not None:
        M = as_matrix(matrix)
        if M.shape[0] != ps.dim:
            raise SizeMismatch("matrix dimension does not match point set")
        if abs(np.linalg.det(M)) == 0.0:
            raise SingularMatrix("transform matrix is singular")
        out, op = pts @ M.T, ("matrix", M.tolist())
    else:
        t = as_points(translate, ps.dim)[0]
        out, op = pts + t, ("translate", t.tolist())
    meta = dict(ps.meta)
    meta["ops"] = list(meta.get("ops", [])) + [op]
    return PointSet(out, meta)


def oversample(ps, R, n=1):
    """``(R*)^{-n} Lambda``."""
    R = as_matrix(R)
    return transform(ps, matrix=np.linalg.matrix_power(np.linalg.inv(R.T), n))


def jitter(ps, bound, seed=0):
    """Displace each point by an independent uniform vector of sup-norm at most ``bound``.

    Draws come from a Philox (counter-based) generator so the output depends only on
    ``seed``.
    """
    if bound < 0:
        raise ValueError("jitter bound must be nonnegative")
    rng = np.random.Generator(np.random.Philox(seed))
    disp = rng.uniform(-bound, bound, size=ps.points.shape) if bound > 0 else np.zeros_like(ps.points)
    meta = dict(ps.meta)
    meta.update(jitter_bound=float(bound), jitter_seed=seed,
                max_displacement=float(np.max(np.abs(disp))) if disp.size else 0.0)
    return PointSet(ps.points + disp, meta)


def hadamard_defect(R, B, L):
    """``max |H* H - I|`` for ``H[b, l] = N^{-1/2} exp(2 pi i (R^{-1} b) . l)``.

    Zero means ``(R, B, L)`` is a Hadamard triple, the usual witness that the
    exponentials indexed by the digit expansions over ``L`` are mutually orthogonal.
    """
    R = as_matrix(R)
    d = R.shape[0]
    B = as_points(B, d)
    L = as_points(L, d)
    if len(B) != len(L):
        raise SizeMismatch(f"#B = {len(B)} but #L = {len(L)}")
    N = len(B)
    theta = (B @ np.linalg.inv(R).T) @ L.T
    H = np.exp(2j * np.pi * np.mod(theta, 1.0)) / np.sqrt(N)
    return float(np.max(np.abs(H.conj().T @ H - np.eye(N))))


def _nearest_distance(pts, queries):
    if pts.shape[1] == 1:
        p = np.sort(pts[:, 0])
        q = queries[:, 0]
        idx = np.searchsorted(p, q)
        left = p[np.clip(idx - 1, 0, len(p) - 1)]
        right = p[np.clip(idx, 0, len(p) - 1)]
        return np.minimum(np.abs(q - left), np.abs(q - right))
    dist, _ = cKDTree(pts).query(queries)
    return dist


def lattice_compat(ps, R, p=1):
    """Finite-sample ``sup_lambda dist((R*)^{-p} lambda, Lambda)``.

    Only images that land inside the set's bounding box and inside that box contracted
    toward the origin by ``rho^{-p}`` count; the others probe territory the truncation
    does not represent.  Returns ``(sup_distance, excluded_count)``.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    R = as_matrix(R)
    pts = ps.points
    if len(pts) == 0:
        raise EmptyAfterExclusion("empty point set")
    is_sim, rho = similarity_info(R)
    if not is_sim:
        rho = float(np.min(np.abs(np.linalg.eigvals(R))))
    images = pts @ np.linalg.matrix_power(np.linalg.inv(R.T), p).T
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    slack = 1e-12 * max(1.0, float(np.max(np.abs(pts))))
    box_lo = np.maximum(lo, lo / rho**p) - slack
    box_hi = np.minimum(hi, hi / rho**p) + slack
    inside = np.all((images >= box_lo) & (images <= box_hi), axis=1)
    if not inside.any():
        raise EmptyAfterExclusion("every image fell outside the admissible region")
    dist = _nearest_distance(pts, images[inside])
    return float(dist.max()), int((~inside).sum())


def lattice_compat_sweep(ps, R, max_p=3):
    """``{p: (sup_distance, excluded)}`` for ``p = 1..max_p``; no claim about the limit."""
    return {p: lattice_compat(ps, R, p) for p in range(1, max_p + 1)}


def points_to_csv(ps, fh):
    cols = [f"x{i}" for i in range(ps.dim)]
    fh.write(",".join(cols) + "\n")
    for row in ps.points:
        fh.write(",".join(repr(float(v)) for v in row) + "\n")


def points_from_csv(fh):
    """Read a CSV written by :func:`points_to_csv` (header row of ``x*`` columns) as an explicit set."""
    import csv

    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None:
        raise ValueError("empty point file")
    try:
        first = [float(v) for v in header]
        rows = [first]
    except ValueError:
        rows = []
    rows += [[float(v) for v in r] for r in reader if r]
    arr = np.array(rows, dtype=float).reshape(len(rows), -1)
    return PointSet(arr, {"kind": "explicit", "level": None})
