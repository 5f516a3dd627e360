"""Separable bicubic resampling with the Keys kernel (a = -0.5).

Shared by the cheap upscaling path and by low-resolution image synthesis, so
the whole toolkit agrees on a single fully specified kernel. The resampler is
deterministic: the four kernel taps are accumulated in a fixed order, making
results bitwise reproducible regardless of threading.
"""

from __future__ import annotations

import numpy as np

from .image import Image

__all__ = ["keys_weight", "resample_plane", "bicubic_upscale"]

_A = -0.5


def keys_weight(d):
    """Keys piecewise-cubic kernel value at (possibly array) distance d."""
    d = np.abs(np.asarray(d, dtype=np.float64))
    w = np.zeros_like(d)
    near = d <= 1.0
    far = (d > 1.0) & (d < 2.0)
    dn = d[near]
    w[near] = (_A + 2.0) * dn**3 - (_A + 3.0) * dn**2 + 1.0
    df = d[far]
    w[far] = _A * df**3 - 5.0 * _A * df**2 + 8.0 * _A * df - 4.0 * _A
    return w if w.ndim else float(w)


def _taps(n_in: int, n_out: int):
    """Tap indices (4, n_out) and weights (4, n_out) for one axis.

    Destination sample i reads the source at src = (i + 0.5) * n_in/n_out - 0.5
    from the four nearest integer positions; out-of-range taps are clamped to
    the border (replicate).
    """
    src = (np.arange(n_out, dtype=np.float64) + 0.5) * (n_in / n_out) - 0.5
    base = np.floor(src)
    frac = src - base
    idx = base.astype(np.int64)[np.newaxis, :] + np.arange(-1, 3)[:, np.newaxis]
    weights = np.stack(
        [
            keys_weight(frac + 1.0),
            keys_weight(frac),
            keys_weight(1.0 - frac),
            keys_weight(2.0 - frac),
        ]
    )
    return np.clip(idx, 0, n_in - 1), weights


def _resample_axis1(plane: np.ndarray, n_out: int) -> np.ndarray:
    idx, w = _taps(plane.shape[1], n_out)
    # fixed left-to-right accumulation over the 4 taps
    return (
        w[0] * plane[:, idx[0]]
        + w[1] * plane[:, idx[1]]
        + w[2] * plane[:, idx[2]]
        + w[3] * plane[:, idx[3]]
    )


def resample_plane(plane: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Resample a 2-D float plane to (out_h, out_w): horizontal pass, then vertical.

    No clamping; callers clamp at their operation boundary.
    """
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2:
        raise ValueError(f"resample_plane expects a 2-D array, got ndim={plane.ndim}")
    out = _resample_axis1(plane, out_w)
    out = _resample_axis1(out.T, out_h).T
    return out


def bicubic_upscale(patch: Image, factor: int) -> Image:
    """Upscale every channel by an integer factor >= 2, clamped to [0, 255]."""
    if factor < 2 or int(factor) != factor:
        raise ValueError(f"upscale factor must be an integer >= 2, got {factor}")
    factor = int(factor)
    out_h, out_w = patch.height * factor, patch.width * factor
    planes = [resample_plane(patch.plane(c), out_h, out_w) for c in range(patch.channels)]
    return Image(np.clip(np.stack(planes, axis=-1), 0.0, 255.0))
