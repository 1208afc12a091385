"""Spatial Gaussian smoothing with mirrored borders.

Two backends act on the last two axes of an image (or a stack of images):

* :func:`gaussian_filter_fir` -- separable convolution with the truncated,
  normalized kernel on ``[-W, W]``, ``W = ceil(3 sigma)``. It matches the
  spatial weights of the direct bilateral filter exactly.
* :func:`gaussian_filter_recursive` -- a fixed-order recursive (IIR)
  approximation whose cost per pixel does not depend on ``sigma``.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numba
import numpy as np
from scipy.optimize import least_squares

from ._validation import check_image, check_positive
from .image import mirror_indices


@dataclass(frozen=True, eq=False)
class SpatialKernel:
    """Normalized 1-D Gaussian taps on ``[-radius, radius]``."""

    sigma_s: float
    radius: int
    taps: np.ndarray


def kernel_radius(sigma_s):
    return int(math.ceil(3.0 * sigma_s))


def build_spatial_kernel(sigma_s):
    sigma_s = check_positive(sigma_s, "sigma_s")
    radius = kernel_radius(sigma_s)
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    taps = np.exp(-(offsets * offsets) / (2.0 * sigma_s * sigma_s))
    taps /= taps.sum()
    # pin exact symmetry against rounding in the division
    taps = 0.5 * (taps + taps[::-1])
    taps.setflags(write=False)
    return SpatialKernel(sigma_s, radius, taps)


def _mirror_pad(x, before, after):
    """Extend the last axis of ``x`` by whole-sample reflection."""
    n = x.shape[-1]
    return x[..., mirror_indices(-before, n + after, n)]


def _fir_last_axis(x, taps):
    radius = (len(taps) - 1) // 2
    n = x.shape[-1]
    padded = _mirror_pad(x, radius, radius)
    out = taps[radius] * padded[..., radius : radius + n]
    # pairs of mirrored taps are added first, so flipping the input flips the
    # output bit for bit
    for k in range(1, radius + 1):
        out += taps[radius + k] * (
            padded[..., radius + k : radius + k + n] + padded[..., radius - k : radius - k + n]
        )
    return out


def gaussian_filter_fir(img, kernel):
    """Separable truncated-Gaussian convolution: rows first, then columns."""
    x = check_image(img, allow_stack=True)
    taps = kernel.taps
    rows = _fir_last_axis(x, taps)
    cols = _fir_last_axis(np.swapaxes(rows, -1, -2), taps)
    return np.ascontiguousarray(np.swapaxes(cols, -1, -2))


# Deriche's fourth-order fit of the unit Gaussian: two damped cosines
# (amplitude_cos, amplitude_sin, decay, frequency) in units of x / sigma.
DERICHE_PARAMETERS = (1.680, 3.735, 1.783, 0.6318, -0.6803, -0.2598, 1.723, 1.997)

# Variance (in units of sigma**2) the fitted response is pinned to. The FIR
# kernel truncated at 3 sigma has about 0.973; a true Gaussian has 1.
FITTED_VARIANCE = 0.982


def _impulse_response(params, sigma, n):
    x = n / sigma
    h = np.zeros_like(x, dtype=np.float64)
    for k in range(0, len(params), 4):
        a, c, b, w = params[k : k + 4]
        h += np.exp(-b * x) * (a * np.cos(w * x) + c * np.sin(w * x))
    return h


@dataclass(frozen=True, eq=False)
class RecursiveCoefficients:
    """Difference-equation coefficients of the causal and anti-causal passes."""

    sigma_s: float
    causal: np.ndarray
    anticausal: np.ndarray
    denominator: np.ndarray
    params: tuple

    @property
    def order(self):
        return len(self.denominator) - 1


def _coefficients_from_params(params, sigma):
    """Convert a damped-cosine impulse response into two recursive filters.

    The symmetric response ``h(|n|)`` is split into a causal part (``n >= 0``)
    and an anti-causal part (``n < 0``) that runs on the reversed signal.
    Both share the denominator given by the poles; the DC gain is normalized
    to exactly one.
    """
    poles, residues = [], []
    for k in range(0, len(params), 4):
        a, c, b, w = params[k : k + 4]
        z = np.exp(complex(-b, w) / sigma)
        amp = complex(a, -c) / 2
        poles += [z, z.conjugate()]
        residues += [amp, amp.conjugate()]
    m = len(poles)
    den = np.poly(poles).real
    num = np.zeros(m, dtype=complex)
    for k in range(m):
        others = np.poly([poles[j] for j in range(m) if j != k])
        num[: len(others)] += residues[k] * others
    num = num.real
    h0 = sum(residues).real
    # anti-causal response excludes the centre sample: h(n) - h(0) delta(n)
    anti = np.r_[num, 0.0] - h0 * den
    gain = (num.sum() + anti.sum()) / den.sum()
    return num / gain, anti / gain, den


def _fit_truncated_params(sigma, variance_target):
    """Refit the damped-cosine parameters to the truncated FIR kernel at ``sigma``.

    Least squares on the one-sided taps with the impulse-response variance
    pinned near ``variance_target * sigma**2``.
    """
    kernel = build_spatial_kernel(sigma)
    radius = kernel.radius
    length = int(math.ceil(12 * sigma))
    n = np.arange(length + 1, dtype=np.float64)
    target = np.zeros(length + 1)
    target[: radius + 1] = kernel.taps[radius:]
    weights = np.sqrt(np.r_[1.0, np.full(length, 2.0)])

    def residual(p):
        h = _impulse_response(p, sigma, n)
        h = h / (h[0] + 2 * h[1:].sum())
        var = 2 * (h[1:] * n[1:] ** 2).sum() / sigma**2
        return np.r_[(h - target) * weights, 500.0 * (var - variance_target) * target[0]]

    start = np.r_[DERICHE_PARAMETERS, 0.01, 0.0, 2.5, 3.0]
    lower = np.tile([-np.inf, -np.inf, 0.05, 0.0], 3)
    fit = least_squares(residual, start, bounds=(lower, np.inf), method="trf", max_nfev=2000)
    return tuple(float(v) for v in fit.x)


@lru_cache(maxsize=64)
def recursive_coefficients(sigma_s, scheme="fitted"):
    sigma_s = check_positive(sigma_s, "sigma_s")
    if scheme == "deriche":
        params = DERICHE_PARAMETERS
    elif scheme == "fitted":
        params = _fit_truncated_params(sigma_s, FITTED_VARIANCE)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    causal, anti, den = _coefficients_from_params(params, sigma_s)
    for arr in (causal, anti, den):
        arr.setflags(write=False)
    return RecursiveCoefficients(sigma_s, causal, anti, den, params)


@numba.njit(cache=True)
def _causal_pass(xp, y, b, a):
    """``y[i] = sum_k b[k] xp[i-k] - sum_k a[k] y[i-k]`` along axis 0.

    History before the first row is the steady state of a constant signal
    equal to ``xp[0]``.
    """
    length, width = xp.shape
    nb = b.shape[0]
    m = a.shape[0] - 1
    gain = b.sum() / a.sum()
    warm = min(max(nb - 1, m), length)
    for i in range(warm):
        for j in range(width):
            acc = 0.0
            for k in range(nb):
                acc += b[k] * (xp[i - k, j] if i >= k else xp[0, j])
            for k in range(1, m + 1):
                acc -= a[k] * (y[i - k, j] if i >= k else gain * xp[0, j])
            y[i, j] = acc
    for i in range(warm, length):
        yi = y[i]
        b0 = b[0]
        xi = xp[i]
        for j in range(width):
            yi[j] = b0 * xi[j]
        for k in range(1, nb):
            bk = b[k]
            xr = xp[i - k]
            for j in range(width):
                yi[j] += bk * xr[j]
        for k in range(1, m + 1):
            ak = a[k]
            yr = y[i - k]
            for j in range(width):
                yi[j] -= ak * yr[j]


@numba.njit(cache=True)
def _recursive_axis0(x, rows, causal, anticausal, den, pad):
    height, width = x.shape
    length = height + 2 * pad
    fwd = np.empty((length, width))
    rev = np.empty((length, width))
    for i in range(length):
        src = x[rows[i]]
        dst = fwd[i]
        tgt = rev[length - 1 - i]
        for j in range(width):
            dst[j] = src[j]
            tgt[j] = src[j]
    yc = np.empty((length, width))
    ya = np.empty((length, width))
    _causal_pass(fwd, yc, causal, den)
    _causal_pass(rev, ya, anticausal, den)
    out = np.empty((height, width))
    for i in range(height):
        a = yc[i + pad]
        b = ya[length - 1 - i - pad]
        o = out[i]
        for j in range(width):
            o[j] = a[j] + b[j]
    return out


def _recursive_2d(x, coef, pad):
    height, width = x.shape
    rows = _recursive_axis0(
        np.ascontiguousarray(x.T), mirror_indices(-pad, width + pad, width),
        coef.causal, coef.anticausal, coef.denominator, pad,
    )
    cols = _recursive_axis0(
        np.ascontiguousarray(rows.T), mirror_indices(-pad, height + pad, height),
        coef.causal, coef.anticausal, coef.denominator, pad,
    )
    return cols


def gaussian_filter_recursive(img, sigma_s, *, scheme="fitted"):
    """Recursive Gaussian smoothing along rows, then columns.

    Borders are handled by mirroring ``ceil(6 sigma)`` samples on each side
    and starting each pass from the steady state of its first sample.
    The default ``"fitted"`` coefficients track the truncated FIR kernel;
    ``"deriche"`` uses the classic fit of the untruncated Gaussian.
    """
    sigma_s = check_positive(sigma_s, "sigma_s")
    x = check_image(img, allow_stack=True)
    if min(x.shape[-2:]) < 2:
        raise ValueError(f"recursive filtering needs at least 2x2 pixels, got shape {x.shape}")
    coef = recursive_coefficients(sigma_s, scheme)
    pad = int(math.ceil(6.0 * sigma_s))
    flat = x.reshape((-1,) + x.shape[-2:])
    out = np.empty_like(flat)
    for k in range(flat.shape[0]):
        out[k] = _recursive_2d(flat[k], coef, pad)
    return out.reshape(x.shape)
