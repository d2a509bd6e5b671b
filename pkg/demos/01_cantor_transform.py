# coding: utf-8

# # Fourier transform of the middle-third Cantor measure
#
# The measure lives on the attractor of x -> x/3 and x -> (x+2)/3. Its transform is an
# infinite product of masks, so every value comes with a certified truncation error.

import numpy as np

from fractalframes import (FtConfig, attractor_level, ft, ft_many, ft_truncated, integrate,
                           predict_zeros_1d, validate_ifs)

spec, sim = validate_ifs(3, [0, 2])
print("rho", sim.rho, "dimension", sim.hausdorff_dim, "(" + sim.note + ")")

# A single value, with the number of mask factors used and the tail bound.

v = ft(spec, 1.0)
print(v.value, v.terms_used, v.tail_bound)

# Tightening eps costs only a few factors, because the tail shrinks geometrically.

for eps in (1e-6, 1e-10, 1e-14):
    v = ft(spec, 10.0, FtConfig(eps=eps))
    print(f"eps={eps:g}  terms={v.terms_used}  tail={v.tail_bound:.2e}")

# Cross-check against the level-12 atomic approximant, where the product truncated at 12
# factors is exactly the integral of the exponential.

mu = attractor_level(spec, 12)
print(len(mu), "atoms")
quad = integrate(mu, lambda t: np.exp(2j * np.pi * 1.0 * t))
print("quadrature", quad, "difference", abs(quad - ft_truncated(spec, 1.0, 12)))
print("distance to the full transform", abs(quad - ft(spec, 1.0).value))

# Zeros sit at 3^n (2k+1)/4 for n >= 1.

zeros = predict_zeros_1d(spec, 10.0)
print(zeros)
print("max |ft| on zeros", max(abs(ft(spec, z).value) for z in zeros))

# |ft| along a line does not decay: along x = 3^n it is constant.

xs = 3.0 ** np.arange(8)
vals, _, _ = ft_many(spec, xs)
print(np.abs(vals))
