import dataclasses
from functools import reduce

import numpy as np
import pytest

from fractalframes import (BudgetExceeded, InvalidBounds, attractor_level, ft, jitter,
                           support_radius, transform)
from fractalframes.frames import (bessel_divergence_probe, bessel_grid, bessel_sum,
                                  frame_bounds_finite, frame_bounds_measure, oversample_check,
                                  perturbation_bound, perturbation_report, stability_delta)

PERTURB_1_01 = 1.1556151047750707
DELTA_111 = 1.012390977593065


def test_bessel_sum_examples(jp):
    assert bessel_sum(jp, [0.0], 0.0) == 1.0
    assert bessel_sum(jp, np.empty(0), 0.3) == 0.0
    # |mu^(1/2)|^2 + |mu^(-1/2)|^2 = 2 |mu^(1/2)|^2
    v = abs(ft(jp, 0.5).value) ** 2
    assert bessel_sum(jp, [0.0, 1.0], 0.5) == pytest.approx(2 * v, rel=1e-14)


def test_bessel_additive(jp, jp_lambda):
    lam = jp_lambda(8).flat
    xs = [0.1, 0.4, 2.5]
    a = bessel_grid(jp, lam[::2], xs)
    b = bessel_grid(jp, lam[1::2], xs)
    np.testing.assert_allclose(bessel_grid(jp, lam, xs), a + b, rtol=1e-13)


@pytest.mark.parametrize("n", [1, 2])
def test_oversample_band(jp, jp_lambda, n):
    xs = [0.0, 0.3, 0.7]
    v14 = oversample_check(jp, jp_lambda(14), n, xs)
    v18 = oversample_check(jp, jp_lambda(18), n, xs)
    assert np.all((v14 > 0.9) & (v14 <= 1 + 1e-6))
    assert np.all(np.abs(v18 - 1) < np.abs(v14 - 1))


def test_oversample_zero_is_bessel(jp, jp_lambda):
    xs = [0.2, 0.9]
    np.testing.assert_array_equal(oversample_check(jp, jp_lambda(6), 0, xs),
                                  bessel_grid(jp, jp_lambda(6), xs))
    with pytest.raises(ValueError):
        oversample_check(jp, jp_lambda(6), -1, xs)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_oversample_consistency(jp, jp_lambda, n):
    # shrinking the spectrum once moves one power of N out of the normalization
    lam = jp_lambda(10)
    xs = [0.3, 1.7]
    lhs = oversample_check(jp, transform(lam, matrix=jp.adjoint_inv), n - 1, xs)
    rhs = jp.N * oversample_check(jp, lam, n, xs)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12)


def test_frame_bounds_level8_tensor_oracle(jp, jp_lambda):
    rep = frame_bounds_finite(jp, 8, jp_lambda(8))
    assert abs(rep.lower - 1) <= 1e-9 and abs(rep.upper - 1) <= 1e-9
    assert rep.method == "eigen" and rep.spectrum_size == 256
    # the synthesis matrix is a permuted 8-fold tensor power of the 2x2 Hadamard block
    H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    H8 = reduce(np.kron, [H] * 8)
    assert np.max(np.abs(H8.T @ H8 - np.eye(256))) <= 1e-12


@pytest.mark.parametrize("n", range(1, 11))
def test_finite_parseval(jp, jp_lambda, n):
    rep = frame_bounds_finite(jp, n, jp_lambda(n))
    assert abs(rep.lower - 1) <= 1e-9 and abs(rep.upper - 1) <= 1e-9


def test_rank_deficient(jp, jp_lambda):
    rep = frame_bounds_finite(jp, 2, jp_lambda(1))
    assert rep.lower == pytest.approx(0, abs=1e-12) and rep.upper == pytest.approx(1, abs=1e-12)
    rep = frame_bounds_finite(jp, 4, jp_lambda(4).flat[:-1])
    assert rep.lower == pytest.approx(0, abs=1e-12) and rep.upper == pytest.approx(1, abs=1e-12)


def test_duplicate_spectrum_doubles(jp, jp_lambda):
    lam = jp_lambda(5).flat
    rep = frame_bounds_finite(jp, 5, np.concatenate([lam, lam]))
    assert rep.lower == pytest.approx(2, abs=1e-10) and rep.upper == pytest.approx(2, abs=1e-10)


def test_weight_scaling(jp, jp_lambda):
    mu = attractor_level(jp, 5)
    heavy = dataclasses.replace(mu, weights=3.0 * mu.weights)
    rep = frame_bounds_measure(heavy, jp_lambda(5))
    assert rep.lower == pytest.approx(3, abs=1e-10) and rep.upper == pytest.approx(3, abs=1e-10)


def test_lanczos_path(jp, jp_lambda):
    mu = attractor_level(jp, 10)
    rep = frame_bounds_measure(mu, jp_lambda(10), dense_limit=512)
    assert rep.method == "lanczos"
    assert abs(rep.lower - 1) <= 1e-8 and abs(rep.upper - 1) <= 1e-8


def test_eigensolver_budget(jp, jp_lambda):
    with pytest.raises(BudgetExceeded):
        frame_bounds_finite(jp, 15, jp_lambda(2))


def test_perturbation_frozen():
    assert perturbation_bound(1.0, 0.1, 2 / 3) == pytest.approx(PERTURB_1_01, rel=1e-14)
    assert stability_delta(1.0, 1.0, 2 / 3) == pytest.approx(DELTA_111, rel=1e-14)
    assert perturbation_bound(2.0, 0.0, 5.0) == pytest.approx(2.0, rel=1e-15)
    assert stability_delta(1.0, 1.0, 0.0) == np.inf


def test_perturbation_monotone():
    Ls = np.linspace(0, 1, 11)
    vals = [perturbation_bound(1.0, L, 2 / 3) for L in Ls]
    assert np.all(np.diff(vals) > 0)
    Ms = np.linspace(0.1, 2, 11)
    vals = [perturbation_bound(1.0, 0.2, M) for M in Ms]
    assert np.all(np.diff(vals) > 0)
    # the lower-bound term vanishes exactly at delta
    d = stability_delta(0.5, 2.0, 1.0)
    gap = np.sqrt(0.5) - np.sqrt(2.0 * np.expm1(d**2) * np.expm1(1.0))
    assert abs(gap) <= 1e-12


def test_perturbation_errors():
    with pytest.raises(InvalidBounds):
        stability_delta(2.0, 1.0, 1.0)
    with pytest.raises(InvalidBounds):
        stability_delta(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        perturbation_bound(-1.0, 0.1, 1.0)
    rep = perturbation_report(1.0, 0.1, 2 / 3, A=1.0)
    assert rep.delta == pytest.approx(DELTA_111) and rep.bessel_out_bound == pytest.approx(PERTURB_1_01)


def test_jittered_control(jp, jp_lambda):
    lam = jp_lambda(10)
    xs = np.linspace(0, 1, 50)
    M = support_radius(jp)
    assert M == pytest.approx(2 / 3)
    B = bessel_grid(jp, lam, xs).max()
    for seed in range(3):
        J = bessel_grid(jp, jitter(lam, 0.1, seed), xs).max()
        assert J <= perturbation_bound(B, 0.1, M)


def test_probe_examples():
    S8, t8 = bessel_divergence_probe(1, 8)
    S4, _ = bessel_divergence_probe(1, 4)
    assert S8 / S4 == pytest.approx(2, rel=1e-12)
    assert np.ptp(t8) <= 3e-10
    S1, _ = bessel_divergence_probe(1, 1)
    assert S1 > 1e-4
    _, t = bessel_divergence_probe(2, 10)
    assert np.ptp(t) <= 3e-10 and t[0] > 0
    with pytest.raises(ValueError):
        bessel_divergence_probe(0.5, 4)
