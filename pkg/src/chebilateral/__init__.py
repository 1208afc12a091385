"""Exact and fast (Gauss-Taylor / Gauss-Chebyshev) Gaussian bilateral filtering."""

from .approximation import (
    MAX_DEGREE,
    ChebyshevFit,
    ChebyshevTable,
    MonomialExpansion,
    cheb_eval,
    cheb_monomial_table,
    cheb_zeros,
    fit_exp_chebyshev,
    monomial_from_chebyshev,
    taylor_coeffs,
)
from .direct import BilateralParams, bilateral_direct
from .fast import (
    FastFilterConfig,
    FastFilterResult,
    MomentStack,
    RangeClampWarning,
    build_moment_stack,
    compute_mu,
    fast_bilateral,
    fast_bilateral_apply,
    shift_intensity,
)
from .gaussian import (
    SpatialKernel,
    build_spatial_kernel,
    gaussian_filter_fir,
    gaussian_filter_recursive,
)
from .image import IDENTICAL, IntensityRange, generate_test_image, mirror_index, mse_db
from .pgm import PGMError, read_pgm, write_pgm

__version__ = "0.1.0"
