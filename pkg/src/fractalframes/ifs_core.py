"""Affine iterated function systems and finite-level approximations of their invariant measures.

An IFS is given by an expanding real matrix ``R`` and a digit set ``B``; the maps are
``tau_b(x) = R^{-1}(x + b)``.  The invariant measure is approximated at level ``n`` by the
uniform measure on the ``N**n`` word sums ``sum_{k=1..n} R^{-k} b_k``.  That approximant
satisfies the invariance recursion exactly, so it is the object everything else is
computed against.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .errors import BudgetExceeded, DuplicateDigit, LevelZero, NotExpanding, ZeroNotInDigits

EXPANSION_TOL = 1e-10
SIMILARITY_RTOL = 1e-12
MERGE_RTOL = 1e-12
DEFAULT_ATOM_BUDGET = 2**20

OSC_NOTE = "formula value, OSC assumed"


def as_matrix(R):
    R = np.atleast_2d(np.asarray(R, dtype=float))
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValueError(f"expansion matrix must be square, got shape {R.shape}")
    return R


def as_points(x, dim):
    """Coerce ``x`` into an ``(m, dim)`` float array.

    In one dimension a flat sequence is read as ``m`` scalar points; otherwise a flat
    sequence of length ``dim`` is a single point.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1) if dim == 1 else arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise ValueError(f"expected points of dimension {dim}, got array of shape {np.shape(x)}")
    return arr


@dataclass(frozen=True, eq=False)
class IfsSpec:
    R: np.ndarray
    digits: np.ndarray
    contains_zero: bool

    @property
    def dim(self):
        return self.R.shape[0]

    @property
    def N(self):
        return self.digits.shape[0]

    @property
    def R_inv(self):
        return np.linalg.inv(self.R)

    @property
    def adjoint(self):
        """``R*``, the transpose of ``R``."""
        return self.R.T

    @property
    def adjoint_inv(self):
        return np.linalg.inv(self.R.T)

    @property
    def max_digit_norm(self):
        return float(np.max(np.linalg.norm(self.digits, axis=1)))

    def __repr__(self):
        return f"IfsSpec(R={self.R.tolist()}, digits={self.digits.tolist()})"


@dataclass(frozen=True)
class SimilarityInfo:
    is_similarity: bool
    rho: float | None = None
    hausdorff_dim: float | None = None
    note: str = OSC_NOTE


def similarity_info(R):
    """Detect whether ``R = rho * O`` with ``O`` orthogonal.

    ``hausdorff_dim = ln N / ln rho`` is only the formula value; the open set condition
    is assumed, not checked.  Returns ``(is_similarity, rho)``.
    """
    R = as_matrix(R)
    d = R.shape[0]
    gram = R.T @ R
    rho2 = np.trace(gram) / d
    resid = np.max(np.abs(gram - rho2 * np.eye(d)))
    if rho2 > 0 and resid <= SIMILARITY_RTOL * rho2:
        return True, float(np.sqrt(rho2))
    return False, None


def validate_ifs(R, digits):
    """Validate raw ``(R, B)`` and return ``(IfsSpec, SimilarityInfo)``.

    Raises ``NotExpanding`` if some eigenvalue of ``R`` has modulus ``<= 1`` and
    ``DuplicateDigit`` for repeated digits.  A digit set without ``0`` only warns.
    """
    R = as_matrix(R)
    d = R.shape[0]
    B = as_points(digits, d)
    if B.shape[0] == 0:
        raise ValueError("digit set is empty")
    moduli = np.abs(np.linalg.eigvals(R))
    if np.min(moduli) <= 1.0 + EXPANSION_TOL:
        raise NotExpanding(f"R is not expanding: eigenvalue moduli {moduli.tolist()}")
    # exact comparison: digits are user data, not computed values
    if len(np.unique(B, axis=0)) != len(B):
        raise DuplicateDigit(f"digit set has repeated entries: {B.tolist()}")
    contains_zero = bool(np.any(np.all(B == 0.0, axis=1)))
    if not contains_zero:
        warnings.warn("0 is not in the digit set", ZeroNotInDigits, stacklevel=2)
    spec = IfsSpec(R=R, digits=B, contains_zero=contains_zero)

    is_sim, rho = similarity_info(R)
    if is_sim:
        sim = SimilarityInfo(True, rho, float(np.log(spec.N) / np.log(rho)))
    else:
        sim = SimilarityInfo(False)
    return spec, sim


def apply_map(spec, b_index, x):
    """``tau_b(x) = R^{-1}(x + b)`` for the digit at ``b_index``; ``x`` may be a batch."""
    if not 0 <= b_index < spec.N:
        raise IndexError(f"digit index {b_index} out of range for N={spec.N}")
    pts = as_points(x, spec.dim)
    out = (pts + spec.digits[b_index]) @ spec.R_inv.T
    if np.ndim(x) == 0 or (spec.dim > 1 and np.ndim(x) == 1):
        return out[0, 0] if spec.dim == 1 else out[0]
    return out[:, 0] if spec.dim == 1 and np.ndim(x) == 1 else out


def support_radius(spec):
    """Radius of a ball around 0 containing the attractor.

    Sums ``max_b |b| * sum_k ||R^{-k}||``; for similarities this equals
    ``max_b |b| / (rho - 1)``.
    """
    Rinv = spec.R_inv
    P = np.eye(spec.dim)
    total = 0.0
    for _ in range(100000):
        P = P @ Rinv
        term = np.linalg.norm(P, 2)
        total += term
        if term <= 1e-17 * total:
            break
    return spec.max_digit_norm * total


@dataclass(eq=False)
class AtomicMeasure:
    """Weighted atoms ``x_j`` with the first digit of the word that generated each one."""

    level: int
    atoms: np.ndarray
    weights: np.ndarray
    first_digit: np.ndarray
    collisions: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def collision_detected(self):
        return self.collisions > 0

    @property
    def dim(self):
        return self.atoms.shape[1]

    def __len__(self):
        return self.atoms.shape[0]


def _word_sums(spec, n):
    # Lexicographic word order with b_1 most significant.
    pts = np.zeros((1, spec.dim))
    first = np.zeros(1, dtype=np.int64)
    Rinv_T = spec.R_inv.T
    for _ in range(n):
        pts = np.concatenate([(b + pts) @ Rinv_T for b in spec.digits])
        first = np.repeat(np.arange(spec.N), len(first))
    return pts, first


def _duplicate_groups(pts, tol):
    """Label points so that chains of points closer than ``tol`` share a label."""
    m = len(pts)
    if m < 2:
        return np.arange(m)
    if pts.shape[1] == 1:
        order = np.argsort(pts[:, 0], kind="stable")
        gaps = np.diff(pts[order, 0])
        group_sorted = np.concatenate([[0], np.cumsum(gaps > tol)])
        labels = np.empty(m, dtype=np.int64)
        labels[order] = group_sorted
        return labels
    pairs = cKDTree(pts).query_pairs(r=tol, output_type="ndarray")
    if len(pairs) == 0:
        return np.arange(m)
    adj = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(m, m))
    _, labels = connected_components(adj, directed=False)
    return labels


def attractor_level(spec, n, budget=DEFAULT_ATOM_BUDGET, merge=True):
    """Level-``n`` approximant of the invariant measure.

    Atoms are the ``N**n`` sums ``sum_{k=1..n} R^{-k} b_k`` in lexicographic word order,
    each with weight ``N**-n``.  Atoms closer than ``1e-12 * diameter`` are merged
    (weights summed, first occurrence kept) and counted in ``collisions``; a nonzero
    count is the computational symptom of overlap.
    """
    if n < 0:
        raise ValueError("level must be nonnegative")
    count = spec.N**n
    if count > budget:
        raise BudgetExceeded(f"N**n = {count} atoms exceeds budget {budget}")
    pts, first = _word_sums(spec, n)
    weights = np.full(count, 1.0 / count)
    collisions = 0
    if merge and count > 1:
        span = np.ptp(pts, axis=0)
        diameter = float(np.linalg.norm(span))
        labels = _duplicate_groups(pts, MERGE_RTOL * diameter)
        uniq, first_idx, inverse = np.unique(labels, return_index=True, return_inverse=True)
        if len(uniq) < count:
            collisions = count - len(uniq)
            keep = np.sort(first_idx)
            # relabel groups in order of first appearance to keep word order
            rank = np.empty(len(uniq), dtype=np.int64)
            rank[np.argsort(first_idx)] = np.arange(len(uniq))
            merged_w = np.bincount(rank[inverse.ravel()], weights=weights)
            pts, first, weights = pts[keep], first[keep], merged_w
    return AtomicMeasure(level=n, atoms=pts, weights=weights, first_digit=first,
                         collisions=collisions)


def first_collision_level(spec, max_level=12, budget=DEFAULT_ATOM_BUDGET):
    """Smallest level at which two distinct digit words give the same atom, or ``None``.

    This is a heuristic overlap scan: no collision up to ``max_level`` does not certify
    the absence of measure-theoretic overlap.
    """
    for n in range(1, max_level + 1):
        if spec.N**n > budget:
            break
        if attractor_level(spec, n, budget=budget).collision_detected:
            return n
    return None


def integrate(mu, f):
    """``sum_j w_j f(x_j)``.

    ``f`` is called once on the whole atom array: shape ``(m,)`` in one dimension,
    ``(m, d)`` otherwise.
    """
    pts = mu.atoms[:, 0] if mu.dim == 1 else mu.atoms
    vals = np.asarray(f(pts))
    if vals.ndim == 0:
        vals = np.full(len(mu), vals)
    return np.sum(mu.weights * vals)


def cell_restrict(mu, b_index):
    """Atoms whose generating word starts with digit ``b_index``; weights are not renormalized."""
    if mu.level == 0:
        raise LevelZero("level-0 measure has no first digit")
    mask = mu.first_digit == b_index
    return AtomicMeasure(level=mu.level, atoms=mu.atoms[mask], weights=mu.weights[mask],
                         first_digit=mu.first_digit[mask], collisions=mu.collisions,
                         meta={"restricted_to": int(b_index)})


def atoms_to_csv(mu, fh):
    """Write ``index, x0..x{d-1}, weight, first_digit`` rows."""
    cols = ["index"] + [f"x{i}" for i in range(mu.dim)] + ["weight", "first_digit"]
    fh.write(",".join(cols) + "\n")
    for j in range(len(mu)):
        coords = ",".join(repr(float(c)) for c in mu.atoms[j])
        fh.write(f"{j},{coords},{float(mu.weights[j])!r},{int(mu.first_digit[j])}\n")
