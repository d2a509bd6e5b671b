# coding: utf-8

# # A spectrum for the quarter Cantor measure
#
# R = 4 with digits {0, 2} pairs with L = {0, 1}: the 2x2 matrix exp(2 pi i b l / 4) / sqrt 2
# is unitary, and the digit expansions sum_k 4^k l_k form an orthonormal basis.

import numpy as np

from fractalframes import SpectrumSpec, enumerate_truncation, hadamard_defect, validate_ifs
from fractalframes.frames import frame_bounds_finite, oversample_check

spec, _ = validate_ifs(4, [0, 2])
print("hadamard defect", hadamard_defect(4, [0, 2], [0, 1]))

lam_spec = SpectrumSpec.digit_lambda(4, [0, 1])
print(enumerate_truncation(lam_spec, 3).flat)

# Frame bounds on the level-n approximant. Both should be 1 when the truncated spectrum
# has as many points as the measure has atoms.

for n in (2, 4, 6, 8):
    rep = frame_bounds_finite(spec, n, enumerate_truncation(lam_spec, n))
    print(n, rep.lower, rep.upper, rep.method)

# Dropping one frequency loses completeness; the upper bound survives.

lam = enumerate_truncation(lam_spec, 4).flat[:-1]
print(frame_bounds_finite(spec, 4, lam))

# Oversampled sums: shrink the spectrum by 4^n and renormalize by 2^n.

xs = np.linspace(0, 1, 5)
for level in (10, 14, 16):
    vals = oversample_check(spec, enumerate_truncation(lam_spec, level), 1, xs)
    print(level, np.max(np.abs(vals - 1)))

# The same check in the plane: R = 3I, B = {0, e1, e2}, L = {0, (1,2), (2,1)}.

R2 = 3 * np.eye(2)
B2 = [[0, 0], [1, 0], [0, 1]]
L2 = [[0, 0], [1, 2], [2, 1]]
spec2, _ = validate_ifs(R2, B2)
print("defect", hadamard_defect(R2, B2, L2))
print(frame_bounds_finite(spec2, 4, enumerate_truncation(SpectrumSpec.digit_lambda(R2, L2), 4)))
