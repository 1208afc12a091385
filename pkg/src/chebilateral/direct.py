"""Brute-force Gaussian bilateral filter.

Every output pixel is a ratio of two sums over the ``(2W + 1)**2`` window
``W = ceil(3 sigma_s)`` with mirrored borders, evaluating the range kernel
with an exact ``exp`` per term. This is the accuracy reference for the
fast filters; it is deliberately unoptimized beyond vectorizing over pixels.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_image, check_positive
from .gaussian import kernel_radius
from .image import mirror_indices


@dataclass(frozen=True)
class BilateralParams:
    sigma_s: float
    sigma_r: float

    def __post_init__(self):
        object.__setattr__(self, "sigma_s", check_positive(self.sigma_s, "sigma_s"))
        object.__setattr__(self, "sigma_r", check_positive(self.sigma_r, "sigma_r"))


def _mirror_pad_2d(img, radius):
    height, width = img.shape
    rows = mirror_indices(-radius, height + radius, height)
    cols = mirror_indices(-radius, width + radius, width)
    return img[np.ix_(rows, cols)]


def bilateral_direct(img, params):
    """Exact bilateral filter of a 2-D image.

    Parameters
    ----------
    img : array_like, shape (height, width)
    params : BilateralParams

    Returns
    -------
    ndarray
        Filtered image, same shape as ``img``.
    """
    img = check_image(img)
    sigma_s, sigma_r = params.sigma_s, params.sigma_r
    radius = kernel_radius(sigma_s)
    height, width = img.shape
    padded = _mirror_pad_2d(img, radius)
    range_scale = -1.0 / (2.0 * sigma_r * sigma_r)

    def window(dy, dx):
        return padded[radius + dy : radius + dy + height, radius + dx : radius + dx + width]

    def terms(dy, dx):
        neighbor = window(dy, dx)
        diff = neighbor - img
        weight = np.exp(diff * diff * range_scale)
        return weight * diff, weight

    # Sums run over differences from the centre pixel, so a flat window gives
    # back its value exactly. The centre term itself has weight 1 and diff 0.
    num = np.zeros_like(img)
    den = np.ones_like(img)
    # Offsets are visited by (|dy|, |dx|) in row-major order; the up to four
    # mirror-image offsets are summed pairwise first so the result is
    # equivariant under horizontal and vertical flips bit for bit.
    for ay in range(radius + 1):
        for ax in range(radius + 1):
            if ay == 0 and ax == 0:
                continue
            spatial = np.exp(-(ay * ay + ax * ax) / (2.0 * sigma_s * sigma_s))
            ys = (ay, -ay) if ay else (0,)
            xs = (ax, -ax) if ax else (0,)
            quad_num, quad_den = None, None
            for dy in ys:
                row_num, row_den = None, None
                for dx in xs:
                    tn, td = terms(dy, dx)
                    row_num = tn if row_num is None else row_num + tn
                    row_den = td if row_den is None else row_den + td
                quad_num = row_num if quad_num is None else quad_num + row_num
                quad_den = row_den if quad_den is None else quad_den + row_den
            num += spatial * quad_num
            den += spatial * quad_den
    return img + num / den
