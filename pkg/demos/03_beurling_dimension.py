# coding: utf-8

# # Counting points in windows
#
# The r-density divides the largest count in x + h[-1, 1]^d by h^r. With that window the
# integers have 1-density 2.

import numpy as np

from fractalframes import SpectrumSpec, enumerate_truncation, estimate_dimension, lattice_compat
from fractalframes.beurling import beurling_report, count_max, density_profile

print(count_max(np.arange(11.0), 5.0))

prof = density_profile(np.arange(10001.0), 1.0)
print("integers, largest h:", prof.h[-1], prof.density[-1])

# The digit spectrum of the quarter Cantor measure grows like h^(1/2).

lam = enumerate_truncation(SpectrumSpec.digit_lambda(4, [0, 1]), 16)
dim, err = estimate_dimension(lam)
print(f"{len(lam)} points  fitted {dim:.4f} +- {err:.4f}  log_4 2 = 0.5")

rep = beurling_report(lam, r=0.5)
for h, c, center, d in list(rep.rows())[::8]:
    print(f"h={h:10.2f}  count={c:6d}  D={d:.4f}")
print("upper density at r = 1/2:", rep.upper_density)

# Other digit sets follow log #L / log S.

for S, L in [(3, [0, 1]), (5, [0, 1, 2]), (10, [0, 3, 7])]:
    pts = enumerate_truncation(SpectrumSpec.digit_lambda(S, L), 9)
    print(S, L, round(estimate_dimension(pts)[0], 4), round(np.log(len(L)) / np.log(S), 4))

# Scaling the set by 5 scales every window count with it, so the density drops by 5^(-1/2).

dens = [density_profile(enumerate_truncation(SpectrumSpec.digit_lambda(4, [0, 1], 5.0**k), 12), 0.5)
        .upper_density for k in range(3)]
print(dens, dens[1] / dens[0], 5**-0.5)

# How far lambda / 4 can be from the set.

print(lattice_compat(lam, 4, 1))
