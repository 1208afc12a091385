"""Fast bilateral filtering through a polynomial range-kernel expansion.

With the image centered to ``g = f - t_c``, the range kernel factors as
``exp(-tau^2/2s^2) exp(-t^2/2s^2) exp(tau t / s^2)`` and the last factor is
replaced by a degree-N polynomial ``sum c_n x^n``. The filter then needs only
pointwise powers of the image and ``N + 2`` spatial Gaussian filterings, so
its cost per pixel does not grow with ``sigma_s`` (recursive backend).
"""

from dataclasses import dataclass, field
import warnings

import numpy as np

from ._validation import check_degree, check_image, check_positive
from .approximation import MAX_DEGREE, exp_coefficients
from .direct import BilateralParams
from .gaussian import build_spatial_kernel, gaussian_filter_fir, gaussian_filter_recursive
from .image import IntensityRange

SCHEMES = ("taylor", "chebyshev")
BACKENDS = ("fir", "recursive")


class RangeClampWarning(UserWarning):
    """Input samples fell outside the declared intensity range and were clamped."""


@dataclass(frozen=True)
class FastFilterConfig:
    params: BilateralParams
    degree: int = 20
    range: IntensityRange = field(default_factory=IntensityRange)
    scheme: str = "chebyshev"
    gaussian_backend: str = "fir"
    q_floor: float = 1e-12

    def __post_init__(self):
        object.__setattr__(self, "degree", check_degree(self.degree, MAX_DEGREE))
        object.__setattr__(self, "q_floor", check_positive(self.q_floor, "q_floor"))
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.gaussian_backend not in BACKENDS:
            raise ValueError(
                f"gaussian_backend must be one of {BACKENDS}, got {self.gaussian_backend!r}"
            )


@dataclass(frozen=True, eq=False)
class MomentStack:
    """Moment images ``G_n`` and their smoothed Gaussian-weighted versions ``Fbar_n``.

    Both arrays have shape ``(N + 2, height, width)``.
    """

    G: np.ndarray
    Fbar: np.ndarray


@dataclass(frozen=True, eq=False)
class FastFilterResult:
    image: np.ndarray
    q_fallbacks: int
    clamped: int
    coefficients: np.ndarray


def compute_mu(intensity_range, sigma_r):
    """Half-width ``(U - L)^2 / (4 sigma_r^2)`` of the interval the polynomial must cover."""
    sigma_r = check_positive(sigma_r, "sigma_r")
    return intensity_range.width**2 / (4.0 * sigma_r * sigma_r)


def shift_intensity(img, delta):
    return check_image(img, allow_stack=True) + float(delta)


def smooth(stack, sigma_s, backend):
    if backend == "fir":
        return gaussian_filter_fir(stack, build_spatial_kernel(sigma_s))
    if backend == "recursive":
        return gaussian_filter_recursive(stack, sigma_s)
    raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")


def build_moment_stack(g, sigma_r, n, backend="fir", sigma_s=1.0):
    """Compute ``G_n = (g/sigma_r)^n`` and ``Fbar_n = smooth(exp(-g^2/2 sigma_r^2) G_n)``.

    ``n + 2`` members (indices ``0..n+1``) are produced because the numerator
    uses ``Fbar_{n+1}``.
    """
    g = check_image(g)
    sigma_r = check_positive(sigma_r, "sigma_r")
    n = check_degree(n, MAX_DEGREE)
    base = g / sigma_r
    G = np.empty((n + 2,) + g.shape)
    G[0] = 1.0
    for k in range(1, n + 2):
        np.multiply(G[k - 1], base, out=G[k])
    F = G * np.exp(-(g * g) / (2.0 * sigma_r * sigma_r))
    return MomentStack(G, smooth(F, sigma_s, backend))


def _accumulate(coef, G, Fbar, sigma_r, q_floor, centered):
    """Assemble ``P = sigma_r sum c_n G_n Fbar_{n+1}`` and ``Q = sum c_n G_n Fbar_n``."""
    P = np.zeros_like(centered)
    Q = np.zeros_like(centered)
    for k, c in enumerate(coef):
        weight = c * G[k]
        P += weight * Fbar[k + 1]
        Q += weight * Fbar[k]
    return _ratio(P, Q, sigma_r, q_floor, centered)


def _ratio(P, Q, sigma_r, q_floor, centered):
    P = P * sigma_r
    small = np.abs(Q) < q_floor
    out = np.where(small, centered, P / np.where(small, 1.0, Q))
    return out, int(np.count_nonzero(small))


def _streamed(coef, centered, sigma_r, sigma_s, backend, q_floor):
    """Same result as :func:`build_moment_stack` + :func:`_accumulate`, one moment at a time.

    Only a few images are alive at once, which keeps the working set small.
    """
    base = centered / sigma_r
    envelope = np.exp(-(centered * centered) / (2.0 * sigma_r * sigma_r))
    P = np.zeros_like(centered)
    Q = np.zeros_like(centered)
    G_prev = None
    G_cur = np.ones_like(centered)
    for m in range(len(coef) + 1):
        Fbar = smooth(G_cur * envelope, sigma_s, backend)
        if m >= 1:
            P += (coef[m - 1] * G_prev) * Fbar
        if m < len(coef):
            Q += (coef[m] * G_cur) * Fbar
        G_prev, G_cur = G_cur, G_cur * base
    return _ratio(P, Q, sigma_r, q_floor, centered)


def fast_bilateral_apply(img, cfg, coefficients=None):
    """Run the fast bilateral filter described by ``cfg``.

    Parameters
    ----------
    img : array_like, shape (height, width)
    cfg : FastFilterConfig
    coefficients : MonomialExpansion, optional
        Precomputed polynomial coefficients; derived from ``cfg`` if omitted.

    Returns
    -------
    FastFilterResult
        The filtered image plus the number of pixels whose denominator fell
        below ``cfg.q_floor`` (those pass the input through) and the number
        of samples clamped into ``cfg.range``.
    """
    img = check_image(img)
    rng = cfg.range
    outside = (img < rng.lo) | (img > rng.hi)
    clamped = int(np.count_nonzero(outside))
    if clamped:
        warnings.warn(
            f"{clamped} samples outside [{rng.lo:g}, {rng.hi:g}] were clamped",
            RangeClampWarning,
            stacklevel=2,
        )
        img = np.clip(img, rng.lo, rng.hi)

    sigma_s, sigma_r = cfg.params.sigma_s, cfg.params.sigma_r
    if coefficients is None:
        coefficients = exp_coefficients(cfg.scheme, cfg.degree, compute_mu(rng, sigma_r))
    if coefficients.degree != cfg.degree:
        raise ValueError(
            f"coefficients have degree {coefficients.degree}, config expects {cfg.degree}"
        )

    centered = shift_intensity(img, -rng.center)
    out, fallbacks = _streamed(
        coefficients.c, centered, sigma_r, sigma_s, cfg.gaussian_backend, cfg.q_floor
    )
    return FastFilterResult(shift_intensity(out, rng.center), fallbacks, clamped, coefficients.c)


def fast_bilateral(img, sigma_s, sigma_r, degree=20, *, scheme="chebyshev",
                   intensity_range=(0.0, 255.0), backend="fir", q_floor=1e-12):
    """Convenience wrapper returning only the filtered image."""
    cfg = FastFilterConfig(
        BilateralParams(sigma_s, sigma_r),
        degree,
        IntensityRange(*intensity_range),
        scheme,
        backend,
        q_floor,
    )
    return fast_bilateral_apply(img, cfg).image
