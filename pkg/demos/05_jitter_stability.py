# coding: utf-8

# # Moving frequencies
#
# Displace every point of the spectrum by at most L. The Bessel bound after the move is
# controlled by L and the support radius M of the measure.

import numpy as np

from fractalframes import SpectrumSpec, enumerate_truncation, jitter, support_radius, validate_ifs
from fractalframes.frames import bessel_grid, perturbation_bound, stability_delta

spec, _ = validate_ifs(4, [0, 2])
M = support_radius(spec)
print("support radius", M)

lam = enumerate_truncation(SpectrumSpec.digit_lambda(4, [0, 1]), 10)
xs = np.linspace(0, 1, 50)
B = bessel_grid(spec, lam, xs).max()
print("empirical Bessel max", B)

for L in (0.01, 0.1, 0.5):
    moved = jitter(lam, L, seed=0)
    J = bessel_grid(spec, moved, xs).max()
    print(f"L={L:<5} max shift={moved.meta['max_displacement']:.4f}  "
          f"observed={J:.4f}  bound={perturbation_bound(B, L, M):.4f}")

# Largest L for which the lower frame bound is guaranteed to survive, given A = B = 1.

print("delta", stability_delta(1.0, 1.0, M))
