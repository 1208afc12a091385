"""Image helpers: intensity ranges, symmetric boundary extension, test images and MSE.

An image is a 2-D ``float64`` array indexed ``[row, column]`` (row-major,
``height x width``).
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_image, check_same_shape


class _Identical:
    """Marker returned by :func:`mse_db` when two images are equal.

    Orders like ``-inf`` so threshold checks such as ``mse_db(a, b) <= -40`` work.
    """

    def __lt__(self, other):
        return float("-inf") < other

    def __le__(self, other):
        return float("-inf") <= other

    def __gt__(self, other):
        return float("-inf") > other

    def __ge__(self, other):
        return float("-inf") >= other

    def __repr__(self):
        return "IDENTICAL"

    def __str__(self):
        return "identical"

    def __float__(self):
        return float("-inf")

    def __reduce__(self):
        return "IDENTICAL"


IDENTICAL = _Identical()


@dataclass(frozen=True)
class IntensityRange:
    """Closed intensity interval ``[lo, hi]`` with midpoint ``center``."""

    lo: float = 0.0
    hi: float = 255.0

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
            raise ValueError(f"intensity range needs finite lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def center(self):
        return (self.lo + self.hi) / 2

    @property
    def width(self):
        return self.hi - self.lo

    @classmethod
    def parse(cls, text):
        """Parse ``"L:U"`` (e.g. ``"0:255"``)."""
        parts = text.split(":")
        if len(parts) != 2:
            raise ValueError(f"expected range as L:U, got {text!r}")
        return cls(float(parts[0]), float(parts[1]))


def mirror_index(p, n):
    """Map any integer index onto ``[0, n-1]`` by whole-sample symmetric reflection.

    The extension satisfies ``x(-p) = x(p)`` and ``x(n-1+p) = x(n-1-p)``, so the
    border sample is not repeated. The pattern has period ``2n - 2``.

    >>> mirror_index(-1, 5), mirror_index(5, 5), mirror_index(2, 5)
    (1, 3, 2)
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return 0
    period = 2 * n - 2
    r = p % period
    return period - r if r > n - 1 else r


def mirror_indices(start, stop, n):
    """Vectorised :func:`mirror_index` for the index range ``start..stop-1``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    p = np.arange(start, stop)
    if n == 1:
        return np.zeros_like(p)
    period = 2 * n - 2
    r = p % period
    return np.where(r > n - 1, period - r, r)


def generate_test_image(kind, width, height, *, tile=8, levels=(0.0, 255.0), value=None):
    """Build a deterministic synthetic test image.

    Parameters
    ----------
    kind : {"checkerboard", "gradient", "constant"}
    width, height : int
        Image size in pixels.
    tile : int
        Checkerboard block size; the top-left block holds the low level.
    levels : (float, float)
        ``(low, high)`` levels of the checkerboard, or the endpoints of the
        left-to-right gradient ramp.
    value : float, optional
        Fill value for ``constant``; defaults to ``levels[0]``.
    """
    if int(width) != width or int(height) != height or width < 1 or height < 1:
        raise ValueError(f"image size must be positive integers, got {width}x{height}")
    width, height = int(width), int(height)
    lo, hi = (float(v) for v in levels)
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise ValueError(f"levels must be finite, got {levels!r}")

    if kind == "checkerboard":
        if int(tile) != tile or tile < 1:
            raise ValueError(f"checkerboard tile must be a positive integer, got {tile!r}")
        tile = int(tile)
        rows = np.arange(height)[:, None] // tile
        cols = np.arange(width)[None, :] // tile
        return np.where((rows + cols) % 2 == 0, lo, hi).astype(np.float64)
    if kind == "gradient":
        if width == 1:
            ramp = np.array([lo])
        else:
            ramp = lo + (hi - lo) * (np.arange(width) / (width - 1))
        return np.tile(ramp, (height, 1))
    if kind == "constant":
        fill = lo if value is None else float(value)
        if not np.isfinite(fill):
            raise ValueError(f"constant value must be finite, got {value!r}")
        return np.full((height, width), fill)
    raise ValueError(f"unknown test image kind {kind!r}")


def mse_db(a, b):
    """Mean squared error between two images in decibels, ``10 log10(MSE)``.

    Returns :data:`IDENTICAL` when the images are equal, since the logarithm
    of zero error is not finite.
    """
    a = check_image(a, name="a")
    b = check_image(b, name="b")
    check_same_shape(a, b)
    diff = a - b
    mse = np.mean(diff * diff)
    if mse == 0.0:
        return IDENTICAL
    return float(10.0 * np.log10(mse))


def format_db(value, digits=6):
    """Render an :func:`mse_db` result for CSV or log output."""
    if value is IDENTICAL:
        return "identical"
    return f"{value:.{digits}f}"
