"""One test per acceptance criterion; each logs a PASS/FAIL line with its pinned band."""

from functools import reduce

import numpy as np
import pytest

from fractalframes import (attractor_level, estimate_dimension, ft, ft_truncated, hadamard_defect,
                           integrate, jitter, lattice_compat, predict_zeros_1d, support_radius)
from fractalframes.beurling import density_profile
from fractalframes.frames import (bessel_divergence_probe, bessel_grid, frame_bounds_finite,
                                  oversample_check, perturbation_bound, stability_delta)
from fractalframes.verification import JP16_HALF_DENSITY

# pinned tolerances
HADAMARD_TOL = 1e-14
FRAME_TOL = 1e-9
PARSEVAL_TOL = 1e-10
OVERSAMPLE_BAND = (0.9, 1 + 1e-6)
DIM_BAND = (0.45, 0.55)
LATTICE_MAX = 0.25
DENSITY_RTOL = 1e-9
RATIO_BAND = (0.8 * 5**-0.5, 1.2 * 5**-0.5)
PROBE_SPREAD = 3e-10
POWERS_DIM_MAX = 0.1
ZERO_TOL = 1e-10
QUAD_TOL = 1e-13


@pytest.fixture
def check(acceptance_log):
    def record(name, value, lo, hi):
        value, lo, hi = float(value), float(lo), float(hi)
        ok = bool(lo <= value <= hi)
        line = f"{'PASS' if ok else 'FAIL'} {name}: {value!r} in [{lo!r}, {hi!r}]"
        acceptance_log(line)
        print(line)
        assert ok, line

    return record


def test_01_hadamard_witness(jp, jp_lambda, check):
    H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    H8 = reduce(np.kron, [H] * 8)
    check("01 hadamard defect", hadamard_defect(4, [0, 2], [0, 1]), 0.0, HADAMARD_TOL)
    check("01 tensor power unitarity", float(np.max(np.abs(H8.T @ H8 - np.eye(256)))), 0.0, 1e-12)
    rep = frame_bounds_finite(jp, 8, jp_lambda(8))
    check("01 frame bound deviation", max(abs(rep.lower - 1), abs(rep.upper - 1)), 0.0, FRAME_TOL)


def test_02_parseval(jp, jp_lambda, rng, check):
    xs = rng.uniform(0, 1, 20)
    worst = 0.0
    for n in (4, 6, 8):
        mu = attractor_level(jp, n)
        for x in xs:
            coeffs = [integrate(mu, lambda t: np.exp(2j * np.pi * (x - l) * t)) for l in jp_lambda(n).flat]
            worst = max(worst, abs(np.sum(np.abs(coeffs) ** 2) - 1.0))
    check("02 finite parseval deviation", worst, 0.0, PARSEVAL_TOL)


def test_03_oversampling(jp, jp_lambda, check):
    xs = [0.0, 0.3, 0.7]
    for n in (1, 2):
        v14 = oversample_check(jp, jp_lambda(14), n, xs)
        v16 = oversample_check(jp, jp_lambda(16), n, xs)
        check(f"03 oversample n={n} min", float(v14.min()), *OVERSAMPLE_BAND)
        check(f"03 oversample n={n} max", float(v14.max()), *OVERSAMPLE_BAND)
        gap = float(np.min(np.abs(v14 - 1)))
        check(f"03 oversample n={n} level 16 gap", float(np.max(np.abs(v16 - 1))), 0.0, gap)


def test_04_dimension_coincidence(jp_lambda, check):
    dim, _ = estimate_dimension(jp_lambda(16))
    check("04 fitted dimension vs log_4 2", dim, *DIM_BAND)
    check("04 lattice compatibility p=1", lattice_compat(jp_lambda(16), 4, 1)[0], 0.0, LATTICE_MAX)


def test_05_critical_density(jp_lambda, check):
    v = float(density_profile(jp_lambda(16), 0.5).density.max())
    tol = DENSITY_RTOL * JP16_HALF_DENSITY
    check("05 half-density max", v, JP16_HALF_DENSITY - tol, JP16_HALF_DENSITY + tol)
    check("05 half-density positive", v, np.nextafter(0, 1), np.inf)


def test_06_scaled_spectra(jp_lambda, check):
    dens = [density_profile(jp_lambda(12, 5.0**k), 0.5).upper_density for k in range(3)]
    check("06 strictly decreasing", float(dens[0] > dens[1] > dens[2]), 1.0, 1.0)
    for k in range(2):
        check(f"06 ratio k={k}", dens[k + 1] / dens[k], *RATIO_BAND)


def test_07_cantor_non_bessel(check):
    S, terms = bessel_divergence_probe(1, 16)
    check("07 probe term spread", float(np.ptp(terms)), 0.0, PROBE_SPREAD)
    K = np.arange(1, 17)
    partial = np.cumsum(terms)
    resid = np.max(np.abs(partial - K * terms[0]))
    check("07 partial sums linear in K", float(resid), 0.0, 1e-6)
    dim, _ = estimate_dimension(np.array([3.0**n for n in range(33)]))
    check("07 dimension of powers of 3", dim, 0.0, POWERS_DIM_MAX)


def test_08_zero_set(cantor, check):
    zeros = predict_zeros_1d(cantor, 30.0)
    worst = max(abs(ft(cantor, z).value) for z in zeros)
    check("08 max |ft| at predicted zeros", worst, 0.0, ZERO_TOL)
    check("08 |ft(1/4)| off the zero set", abs(ft(cantor, 0.25).value), 1e-3, np.inf)


def test_09_perturbation(jp, jp_lambda, check):
    lam = jp_lambda(10)
    xs = np.linspace(0.0, 1.0, 50)
    M = support_radius(jp)
    B = float(bessel_grid(jp, lam, xs).max())
    J = float(bessel_grid(jp, jitter(lam, 0.1, 0), xs).max())
    check("09 jittered bessel max under bound", J, 0.0, perturbation_bound(B, 0.1, M))
    check("09 stability delta positive", stability_delta(1.0, 1.0, M), np.nextafter(0, 1), np.inf)


def test_10_cross_oracle(jp, cantor, rng, check):
    xs = rng.uniform(-10, 10, 50)
    worst = 0.0
    for spec in (jp, cantor):
        for n in range(13):
            mu = attractor_level(spec, n)
            quad = np.array([integrate(mu, lambda t: np.exp(2j * np.pi * x * t)) for x in xs])
            worst = max(worst, float(np.max(np.abs(ft_truncated(spec, xs, n) - quad))))
    check("10 product vs quadrature", worst, 0.0, QUAD_TOL)
