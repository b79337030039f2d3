"""Color images as pure quaternion matrices.

An m-by-n RGB image maps to an m-by-n quaternion matrix with zero scalar
part and the red, green, blue channels in the three imaginary parts, kept
as reals in [0, 255].  Low-rank approximations of such matrices pick up a
small scalar part; saving drops it and clamps the channels back to the
displayable range.
"""

from __future__ import annotations

import math
import os

import numpy as np
from PIL import Image, UnidentifiedImageError

from .core import QMatrix

PSNR_CAP = 200.0

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def from_rgb_array(arr: np.ndarray) -> QMatrix:
    """(m, n, 3) channel array -> pure quaternion matrix."""
    arr = np.asarray(arr, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError("expected an (m, n, 3) RGB array")
    m, n, _ = arr.shape
    parts = np.empty((4, m, n))
    parts[0] = 0.0
    parts[1] = arr[:, :, 0]
    parts[2] = arr[:, :, 1]
    parts[3] = arr[:, :, 2]
    return QMatrix(parts, copy=False)


def to_rgb_array(mat: QMatrix) -> np.ndarray:
    """Imaginary parts as a uint8 (m, n, 3) array, clamped and rounded.

    The scalar part is discarded: it is zero for true images and only a
    small approximation artifact otherwise.
    """
    rgb = np.stack([mat.part(1), mat.part(2), mat.part(3)], axis=-1)
    return np.clip(np.rint(rgb), 0.0, 255.0).astype(np.uint8)


def _sniff_format(path: str) -> str:
    with open(path, "rb") as fh:
        head = fh.read(8)
    if head.startswith(_PNG_MAGIC):
        return "PNG"
    if head.startswith(b"P6"):
        return "PPM"
    raise ValueError(
        f"{path}: unsupported image format (need PNG or binary PPM)")


def load_image(path: str) -> QMatrix:
    """Read a PNG or binary PPM (P6) file as a pure quaternion matrix."""
    _sniff_format(path)
    try:
        with Image.open(path) as im:
            rgb = im.convert("RGB")
            arr = np.asarray(rgb, dtype=np.float64)
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise ValueError(f"{path}: cannot decode image ({exc})") from exc
    return from_rgb_array(arr)


def save_image(mat: QMatrix, path: str) -> None:
    """Write the channel content of mat to a PNG or PPM file.

    Channels are clamped to [0, 255] and rounded to nearest, so a
    load/save round trip is lossless for integer-valued images.
    """
    ext = os.path.splitext(path)[1].lower()
    if ext not in (".png", ".ppm"):
        raise ValueError(f"{path}: unsupported output format (use .png or .ppm)")
    Image.fromarray(to_rgb_array(mat), mode="RGB").save(path)


def psnr(approx: QMatrix, truth: QMatrix) -> float:
    """Peak signal-to-noise ratio 10 log10(255^2 m n / ||approx - truth||_F^2)
    in dB, capped at 200 for (near-)exact reconstructions."""
    if approx.shape != truth.shape:
        raise ValueError(f"shape mismatch: {approx.shape} vs {truth.shape}")
    m, n = truth.shape
    err2 = (approx - truth).norm() ** 2
    if err2 == 0.0:
        return PSNR_CAP
    return min(10.0 * math.log10(255.0 ** 2 * m * n / err2), PSNR_CAP)
