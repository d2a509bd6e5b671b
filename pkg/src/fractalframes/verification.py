"""The desk-scale verification suite behind ``fractalframes verify all``.

Each criterion returns one or more :class:`~fractalframes.report.Check` rows with the
measured value and the band it must fall in.
"""

from functools import reduce

import numpy as np

from .beurling import density_profile, estimate_dimension
from .fourier import ft, ft_truncated, predict_zeros_1d
from .frames import (bessel_divergence_probe, bessel_grid, frame_bounds_finite,
                     oversample_check, perturbation_bound, stability_delta)
from .ifs_core import attractor_level, integrate, support_radius, validate_ifs
from .report import Check
from .spectra import SpectrumSpec, enumerate_truncation, hadamard_defect, jitter, lattice_compat

# regression constant: max over admissible h of max_count / h^(1/2), JP level 16,
# default grid (40 radii from the smallest gap to extent/4); reproduced by a bisect oracle
JP16_HALF_DENSITY = 2.413972590203212


def jp():
    return validate_ifs(4, [0, 2])[0]


def cantor():
    return validate_ifs(3, [0, 2])[0]


def jp_lambda(level, scale=1.0):
    return enumerate_truncation(SpectrumSpec.digit_lambda(4, [0, 1], scale), level)


def _within(name, value, lo, hi, detail=""):
    value = float(value)
    return Check(name, value, (lo, hi), bool(lo <= value <= hi), detail)


def hadamard_witness():
    defect = hadamard_defect(4, [0, 2], [0, 1])
    H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    H8 = reduce(np.kron, [H] * 8)
    tensor_defect = np.max(np.abs(H8.conj().T @ H8 - np.eye(256)))
    rep = frame_bounds_finite(jp(), 8, jp_lambda(8))
    worst = max(abs(rep.lower - 1), abs(rep.upper - 1))
    return [
        _within("1.hadamard_defect", defect, 0.0, 1e-14),
        _within("1.tensor_power_unitarity", tensor_defect, 0.0, 1e-12),
        _within("1.frame_bounds_level8_dev", worst, 0.0, 1e-9,
                f"lower={rep.lower!r} upper={rep.upper!r}"),
    ]


def parseval(seed=0):
    spec = jp()
    xs = np.random.default_rng(seed).uniform(0, 1, 20)
    worst = 0.0
    for n in (4, 6, 8):
        mu = attractor_level(spec, n)
        lam = jp_lambda(n).flat
        for x in xs:
            coeffs = np.array([integrate(mu, lambda t: np.exp(2j * np.pi * (x - l) * t)) for l in lam])
            worst = max(worst, abs(np.sum(np.abs(coeffs) ** 2) - 1.0))
    return [_within("2.parseval_dev", worst, 0.0, 1e-10)]


def oversampling():
    spec = jp()
    xs = [0.0, 0.3, 0.7]
    lam14, lam16 = jp_lambda(14), jp_lambda(16)
    out = []
    for n in (1, 2):
        v14 = oversample_check(spec, lam14, n, xs)
        v16 = oversample_check(spec, lam16, n, xs)
        closer = bool(np.all(np.abs(v16 - 1) < np.abs(v14 - 1)))
        out.append(_within(f"3.oversample_n{n}_min", v14.min(), 0.9, 1 + 1e-6))
        out.append(_within(f"3.oversample_n{n}_max", v14.max(), 0.9, 1 + 1e-6))
        out.append(Check(f"3.oversample_n{n}_level16_closer", float(np.max(np.abs(v16 - 1))),
                         (0.0, float(np.min(np.abs(v14 - 1)))), closer))
    return out


def dimension_coincidence():
    lam = jp_lambda(16)
    dim, err = estimate_dimension(lam)
    sup, _ = lattice_compat(lam, 4, 1)
    return [
        _within("4.beurling_dim_jp16", dim, 0.45, 0.55, f"stderr={err:.3g}, log_4 2 = 0.5"),
        _within("4.lattice_compat_p1", sup, 0.0, 0.25),
    ]


def critical_density():
    prof = density_profile(jp_lambda(16), 0.5)
    v = float(prof.density.max())
    tol = 1e-9 * JP16_HALF_DENSITY
    return [_within("5.half_density_max", v, JP16_HALF_DENSITY - tol, JP16_HALF_DENSITY + tol)]


def scaled_spectra():
    dens = [density_profile(jp_lambda(12, 5.0**k), 0.5).upper_density for k in range(3)]
    target = 5 ** -0.5
    out = [Check("6.decreasing", dens[2], (0.0, dens[0]), bool(dens[0] > dens[1] > dens[2]))]
    for k in range(2):
        out.append(_within(f"6.ratio_k{k}", dens[k + 1] / dens[k], 0.8 * target, 1.2 * target))
    return out


def cantor_non_bessel():
    S, terms = bessel_divergence_probe(1, 16)
    spread = float(terms.max() - terms.min())
    K = np.arange(1, 17)
    partial = np.cumsum(terms)
    slope, icpt = np.polyfit(K, partial, 1)
    resid = float(np.max(np.abs(partial - (slope * K + icpt))))
    dim, _ = estimate_dimension(np.array([3.0**n for n in range(33)]))
    return [
        _within("7.probe_term_spread", spread, 0.0, 3e-10),
        _within("7.probe_linear_residual", resid, 0.0, 1e-6, f"S_16={S!r}"),
        _within("7.dim_powers_of_3", dim, 0.0, 0.1),
    ]


def zero_set():
    spec = cantor()
    zeros = predict_zeros_1d(spec, 30.0)
    worst = max(abs(ft(spec, z).value) for z in zeros)
    return [
        _within("8.max_abs_ft_at_zeros", worst, 0.0, 1e-10, f"{len(zeros)} zeros"),
        _within("8.abs_ft_quarter", abs(ft(spec, 0.25).value), 1e-3, np.inf),
    ]


def perturbation(seed=0):
    spec = jp()
    lam = jp_lambda(10)
    xs = np.linspace(0.0, 1.0, 50)
    M = support_radius(spec)
    B_emp = float(bessel_grid(spec, lam, xs).max())
    jittered = float(bessel_grid(spec, jitter(lam, 0.1, seed), xs).max())
    bound = perturbation_bound(B_emp, 0.1, M)
    return [
        _within("9.jittered_bessel_max", jittered, 0.0, bound, f"B_emp={B_emp!r}"),
        _within("9.stability_delta", stability_delta(1.0, 1.0, M), np.nextafter(0, 1), np.inf),
    ]


def cross_oracle(seed=0):
    xs = np.random.default_rng(seed).uniform(-10, 10, 50)
    worst = 0.0
    for spec in (jp(), cantor()):
        for n in range(13):
            mu = attractor_level(spec, n)
            prod = ft_truncated(spec, xs, n)
            quad = np.array([integrate(mu, lambda t: np.exp(2j * np.pi * x * t)) for x in xs])
            worst = max(worst, float(np.max(np.abs(prod - quad))))
    return [_within("10.product_vs_quadrature", worst, 0.0, 1e-13)]


CRITERIA = [hadamard_witness, parseval, oversampling, dimension_coincidence, critical_density,
            scaled_spectra, cantor_non_bessel, zero_set, perturbation, cross_oracle]


def run_all(budget="desk"):
    if budget != "desk":
        raise ValueError(f"unknown budget {budget!r}; only 'desk' is defined")
    checks = []
    for crit in CRITERIA:
        checks.extend(crit())
    return checks
