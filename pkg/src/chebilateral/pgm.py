"""Reading and writing grayscale Netpbm (PGM) images, plain (P2) and raw (P5)."""

from pathlib import Path

import numpy as np

from ._validation import check_image

MAX_MAXVAL = 65535
_WHITESPACE = b" \t\n\r\v\f"


class PGMError(ValueError):
    """Malformed PGM data. ``offset`` is the byte position of the problem, if known."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class PGMHeaderError(PGMError):
    pass


class PGMMaxvalError(PGMError):
    pass


class PGMSampleCountError(PGMError):
    pass


class PGMSampleRangeError(PGMError):
    pass


def _header_tokens(data, count, pos):
    """Yield ``count`` whitespace-separated header tokens, skipping ``#`` comments.

    Returns ``(tokens, offsets, end)`` where ``end`` points at the byte
    immediately after the last token.
    """
    tokens, offsets = [], []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WHITESPACE:
            pos += 1
        if pos < n and data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        if pos >= n:
            raise PGMHeaderError("unexpected end of data in header", pos)
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        tokens.append(data[start:pos])
        offsets.append(start)
    return tokens, offsets, pos


def _header_int(token, offset, what):
    if not token.isdigit():
        raise PGMHeaderError(f"invalid {what} {token!r}", offset)
    return int(token)


def read_pgm(data):
    """Decode PGM bytes into a float64 image holding the stored integer samples.

    No rescaling by ``maxval`` is applied.
    """
    data = bytes(data)
    if len(data) < 2 or data[:2] not in (b"P2", b"P5"):
        raise PGMHeaderError(f"bad magic number {data[:2]!r}, expected P2 or P5", 0)
    binary = data[:2] == b"P5"
    if len(data) > 2 and data[2] not in _WHITESPACE and data[2] != ord("#"):
        raise PGMHeaderError("magic number must be followed by whitespace", 2)

    (w_tok, h_tok, m_tok), offs, pos = _header_tokens(data, 3, 2)
    width = _header_int(w_tok, offs[0], "width")
    height = _header_int(h_tok, offs[1], "height")
    maxval = _header_int(m_tok, offs[2], "maxval")
    if width < 1 or height < 1:
        raise PGMHeaderError(f"image size must be positive, got {width}x{height}", offs[0])
    if not 1 <= maxval <= MAX_MAXVAL:
        raise PGMMaxvalError(f"maxval {maxval} outside [1, {MAX_MAXVAL}]", offs[2])
    count = width * height

    if binary:
        if pos >= len(data) or data[pos] not in _WHITESPACE:
            raise PGMHeaderError("expected a single whitespace byte after maxval", pos)
        body_start = pos + 1
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        body = data[body_start:]
        expected = count * dtype.itemsize
        if len(body) != expected:
            raise PGMSampleCountError(
                f"expected {count} samples ({expected} bytes), found {len(body)} bytes",
                body_start,
            )
        samples = np.frombuffer(body, dtype=dtype).astype(np.int64)
        bad = np.flatnonzero(samples > maxval)
        if bad.size:
            k = int(bad[0])
            raise PGMSampleRangeError(
                f"sample {k} has value {samples[k]} exceeding maxval {maxval}",
                body_start + k * dtype.itemsize,
            )
    else:
        fields = data[pos:].split()
        if len(fields) != count:
            raise PGMSampleCountError(
                f"expected {count} samples, found {len(fields)}", pos
            )
        values = []
        for k, field in enumerate(fields):
            if not field.isdigit():
                raise PGMHeaderError(f"sample {k} is not a non-negative integer: {field!r}")
            v = int(field)
            if v > maxval:
                raise PGMSampleRangeError(
                    f"sample {k} has value {v} exceeding maxval {maxval}",
                    data.find(field, pos),
                )
            values.append(v)
        samples = np.array(values, dtype=np.int64)

    return samples.astype(np.float64).reshape(height, width)


def quantize(img, maxval=255):
    """Clamp to ``[0, maxval]`` and round half away from zero, as written to disk."""
    img = check_image(img)
    if int(maxval) != maxval or not 1 <= maxval <= MAX_MAXVAL:
        raise ValueError(f"maxval must be an integer in [1, {MAX_MAXVAL}], got {maxval!r}")
    # values are non-negative after the clamp, so floor(x + 0.5) rounds half away from zero
    return np.floor(np.clip(img, 0, maxval) + 0.5)


def write_pgm(img, maxval=255, binary=True):
    """Encode an image as PGM bytes (P5 when ``binary`` else P2)."""
    q = quantize(img, maxval).astype(np.int64)
    maxval = int(maxval)
    height, width = q.shape
    header = f"{'P5' if binary else 'P2'}\n{width} {height}\n{maxval}\n".encode("ascii")
    if binary:
        dtype = ">u2" if maxval > 255 else "u1"
        return header + q.astype(dtype).tobytes()
    lines = [" ".join(str(v) for v in row) for row in q.tolist()]
    return header + ("\n".join(lines) + "\n").encode("ascii")


def load_pgm(path):
    return read_pgm(Path(path).read_bytes())


def save_pgm(path, img, maxval=255, binary=True):
    Path(path).write_bytes(write_pgm(img, maxval=maxval, binary=binary))
