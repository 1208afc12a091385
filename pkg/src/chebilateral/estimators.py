"""scikit-learn compatible wrappers around the filters.

Each estimator transforms a single 2-D image or a stack of images with shape
``(n_images, height, width)``. ``fit`` only validates parameters and
precomputes what does not depend on the pixels, so the estimators compose
with :class:`sklearn.pipeline.Pipeline` and parameter search.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_image, check_positive
from .approximation import exp_coefficients
from .direct import BilateralParams, bilateral_direct
from .fast import FastFilterConfig, compute_mu, fast_bilateral_apply, smooth
from .image import IntensityRange


def _each_image(X, func):
    X = check_image(X, allow_stack=True)
    if X.ndim == 2:
        return func(X)
    if X.ndim != 3:
        raise ValueError(f"expected an image or a stack of images, got shape {X.shape}")
    return np.stack([func(x) for x in X])


class GaussianSmoother(TransformerMixin, BaseEstimator):
    """Spatial Gaussian smoothing with the ``"fir"`` or ``"recursive"`` backend."""

    def __init__(self, sigma_s=3.0, backend="fir"):
        self.sigma_s = sigma_s
        self.backend = backend

    def fit(self, X=None, y=None):
        self.sigma_s_ = check_positive(self.sigma_s, "sigma_s")
        if self.backend not in ("fir", "recursive"):
            raise ValueError(f"unknown backend {self.backend!r}")
        return self

    def transform(self, X):
        check_is_fitted(self, "sigma_s_")
        return _each_image(X, lambda x: smooth(x, self.sigma_s_, self.backend))


class BilateralFilter(TransformerMixin, BaseEstimator):
    """Exact (brute-force) Gaussian bilateral filter.

    Parameters
    ----------
    sigma_s : float
        Spatial standard deviation in pixels; the window is ``ceil(3 sigma_s)``.
    sigma_r : float
        Range standard deviation in intensity units.
    """

    def __init__(self, sigma_s=3.0, sigma_r=30.0):
        self.sigma_s = sigma_s
        self.sigma_r = sigma_r

    def fit(self, X=None, y=None):
        self.params_ = BilateralParams(self.sigma_s, self.sigma_r)
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        return _each_image(X, lambda x: bilateral_direct(x, self.params_))


class FastBilateralFilter(TransformerMixin, BaseEstimator):
    """Constant-time bilateral filter with a polynomial range-kernel expansion.

    ``scheme="taylor"`` gives the Gauss-polynomial filter (GPF) and
    ``scheme="chebyshev"`` the Gauss-Chebyshev filter (GCF).

    Parameters
    ----------
    sigma_s, sigma_r : float
        Spatial and range standard deviations.
    degree : int
        Polynomial degree ``N`` (0 to 40). Cost grows linearly with it.
    scheme : {"chebyshev", "taylor"}
    intensity_range : (float, float)
        Declared intensity interval ``(L, U)``; inputs outside it are clamped.
    backend : {"fir", "recursive"}
        Spatial Gaussian implementation.
    q_floor : float
        Pixels whose approximate denominator is smaller in magnitude pass
        the input through.

    Attributes
    ----------
    coef_ : ndarray of shape (degree + 1,)
        Monomial coefficients approximating ``exp`` on ``[-mu_, mu_]``.
    mu_ : float
        Half-width of the approximation interval.
    n_fallbacks_ : int
        Denominator fallbacks during the last :meth:`transform`.
    n_clamped_ : int
        Samples clamped into ``intensity_range`` during the last :meth:`transform`.
    """

    def __init__(self, sigma_s=3.0, sigma_r=30.0, degree=20, scheme="chebyshev",
                 intensity_range=(0.0, 255.0), backend="fir", q_floor=1e-12):
        self.sigma_s = sigma_s
        self.sigma_r = sigma_r
        self.degree = degree
        self.scheme = scheme
        self.intensity_range = intensity_range
        self.backend = backend
        self.q_floor = q_floor

    def fit(self, X=None, y=None):
        self.config_ = FastFilterConfig(
            BilateralParams(self.sigma_s, self.sigma_r),
            self.degree,
            IntensityRange(*self.intensity_range),
            self.scheme,
            self.backend,
            self.q_floor,
        )
        self.mu_ = compute_mu(self.config_.range, self.config_.params.sigma_r)
        self.expansion_ = exp_coefficients(self.scheme, self.config_.degree, self.mu_)
        self.coef_ = self.expansion_.c
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        self.n_fallbacks_ = 0
        self.n_clamped_ = 0

        def run(x):
            result = fast_bilateral_apply(x, self.config_, self.expansion_)
            self.n_fallbacks_ += result.q_fallbacks
            self.n_clamped_ += result.clamped
            return result.image

        return _each_image(X, run)
