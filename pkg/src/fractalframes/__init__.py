"""Fourier analysis of affine IFS measures: transforms, exponential frames, Beurling dimension."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .ifs_core import (AtomicMeasure, IfsSpec, SimilarityInfo, apply_map, attractor_level,
                       cell_restrict, first_collision_level, integrate, support_radius,
                       validate_ifs)
from .fourier import (FtConfig, FtValue, ft, ft_many, ft_truncated, mask, predict_zeros_1d,
                      refinement_residual)
from .spectra import (PointSet, SpectrumSpec, enumerate_truncation, hadamard_defect, jitter,
                      lattice_compat, lattice_compat_sweep, oversample, transform)
from .beurling import (DensityConfig, DensityReport, beurling_report, count_max,
                       density_profile, estimate_dimension)
from .frames import (FrameReport, PerturbationBound, bessel_divergence_probe, bessel_grid,
                     bessel_sum, frame_bounds_finite, frame_bounds_measure, oversample_check,
                     perturbation_bound, perturbation_report, stability_delta)
from .config import RunConfig, load_config, parse_config
