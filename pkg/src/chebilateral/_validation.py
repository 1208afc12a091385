"""Input validation helpers shared by the filters and estimators."""

import math

import numpy as np


def check_image(img, *, name="image", min_size=1, allow_stack=False):
    """Return ``img`` as a C-contiguous float64 array, validating shape and values.

    Images are 2-D arrays indexed ``[row, column]``. With ``allow_stack`` the
    array may carry leading axes (a stack of equally sized images); filtering
    always acts on the last two axes.
    """
    arr = np.asarray(img)
    if arr.dtype.kind not in "biuf":
        raise TypeError(f"{name} must be a real numeric array, got dtype {arr.dtype}")
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    if allow_stack:
        if arr.ndim < 2:
            raise ValueError(f"{name} must have at least 2 dimensions, got {arr.ndim}")
    elif arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array, got shape {arr.shape}")
    height, width = arr.shape[-2:]
    if height < min_size or width < min_size:
        raise ValueError(
            f"{name} must be at least {min_size}x{min_size} pixels, got {width}x{height}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite samples")
    return arr


def check_positive(value, name):
    """Validate a strictly positive, finite scalar and return it as float."""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise TypeError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return value


def check_degree(degree, max_degree, name="degree"):
    if isinstance(degree, bool) or int(degree) != degree:
        raise TypeError(f"{name} must be an integer, got {degree!r}")
    degree = int(degree)
    if not 0 <= degree <= max_degree:
        raise ValueError(f"{name} must be in [0, {max_degree}], got {degree}")
    return degree


def check_same_shape(a, b):
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.shape} vs {b.shape}")
