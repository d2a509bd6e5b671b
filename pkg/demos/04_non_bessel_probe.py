# coding: utf-8

# # Powers of three against the Cantor measure
#
# For integer a the transform at 3^n a does not depend on n, so the Bessel sum over
# {3^n a} grows linearly and no finite bound holds.

import numpy as np

from fractalframes import estimate_dimension
from fractalframes.frames import bessel_divergence_probe

for a in (1, 2, 5):
    S, terms = bessel_divergence_probe(a, 16)
    print(f"a={a}  term={terms[0]:.12f}  spread={np.ptp(terms):.1e}  S_16={S:.4f}")

S8, _ = bessel_divergence_probe(1, 8)
S16, _ = bessel_divergence_probe(1, 16)
print("S_16 / S_8 =", S16 / S8)

# The set itself is extremely sparse: a log-log fit of window counts gives a slope near 0.

powers = 3.0 ** np.arange(33)
print(estimate_dimension(powers))
