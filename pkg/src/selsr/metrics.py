"""Full-reference quality metrics: MSE, PSNR, and SSIM.

All accumulation is double precision (MSE uses exactly-rounded summation, so
even multi-megapixel sums carry no accumulation error). Metrics operate on
single-channel planes; ``compare`` handles the channel policy for RGB inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image import Image, luminance

__all__ = ["MetricsReport", "mse", "psnr", "ssim", "compare", "format_metric"]

_PEAK_SQ = 255.0**2

_SSIM_WINDOW = 11
_SSIM_SIGMA = 1.5
_SSIM_C1 = (0.01 * 255.0) ** 2
_SSIM_C2 = (0.03 * 255.0) ** 2


@dataclass(frozen=True)
class MetricsReport:
    """MSE, PSNR (dB, +inf for identical inputs), and mean SSIM."""

    mse: float
    psnr_db: float
    ssim: float

    def to_json_dict(self) -> dict:
        """JSON form: metrics rounded to 4 decimals, infinite PSNR as "inf"."""
        return {
            "mse": format_metric(self.mse),
            "psnr_db": format_metric(self.psnr_db),
            "ssim": format_metric(self.ssim),
        }


def format_metric(value: float):
    return "inf" if math.isinf(value) else round(value, 4)


def _check_pair(ref: Image, test: Image) -> None:
    if (ref.height, ref.width) != (test.height, test.width):
        raise ValueError(
            f"dimension mismatch: reference {ref.width}x{ref.height} vs test {test.width}x{test.height}"
        )
    if ref.channels != test.channels:
        raise ValueError(f"channel mismatch: {ref.channels} vs {test.channels}")


def _single_plane(img: Image) -> np.ndarray:
    if img.channels != 1:
        raise ValueError(f"expected a single-channel image, got {img.channels} channels")
    return img.plane()


def mse(ref: Image, test: Image) -> float:
    """Mean squared sample difference, exactly rounded."""
    _check_pair(ref, test)
    d = (_single_plane(ref) - _single_plane(test)).ravel()
    return math.fsum(d * d) / d.size


def psnr(ref: Image, test: Image) -> float:
    """Peak signal-to-noise ratio in dB; +inf for identical images."""
    return psnr_from_mse(mse(ref, test))


def psnr_from_mse(mse_value: float) -> float:
    if mse_value < 0:
        raise ValueError(f"mse must be non-negative, got {mse_value}")
    if mse_value == 0.0:
        return math.inf
    return 10.0 * math.log10(_PEAK_SQ / mse_value)


def _gaussian_1d(size: int, sigma: float) -> np.ndarray:
    r = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    g = np.exp(-(r * r) / (2.0 * sigma * sigma))
    return g / g.sum()


def _window_mean(plane: np.ndarray, g: np.ndarray) -> np.ndarray:
    # separable valid-mode correlation: horizontal tap contraction, then vertical
    t = np.lib.stride_tricks.sliding_window_view(plane, g.size, axis=1) @ g
    return np.lib.stride_tricks.sliding_window_view(t, g.size, axis=0) @ g


def ssim(ref: Image, test: Image) -> float:
    """Mean structural similarity over sliding 11x11 Gaussian windows.

    Gaussian weighting (sigma 1.5, kernel normalized to sum 1), stride 1,
    valid positions only; per window the usual product of the luminance and
    contrast/structure terms with C1 = (0.01*255)^2, C2 = (0.03*255)^2.
    """
    _check_pair(ref, test)
    x = _single_plane(ref)
    y = _single_plane(test)
    if min(x.shape) < _SSIM_WINDOW:
        raise ValueError(
            f"image {x.shape[1]}x{x.shape[0]} is smaller than the {_SSIM_WINDOW}x{_SSIM_WINDOW} SSIM window"
        )
    g = _gaussian_1d(_SSIM_WINDOW, _SSIM_SIGMA)
    mu_x = _window_mean(x, g)
    mu_y = _window_mean(y, g)
    var_x = _window_mean(x * x, g) - mu_x * mu_x
    var_y = _window_mean(y * y, g) - mu_y * mu_y
    cov_xy = _window_mean(x * y, g) - mu_x * mu_y
    ssim_map = ((2.0 * mu_x * mu_y + _SSIM_C1) * (2.0 * cov_xy + _SSIM_C2)) / (
        (mu_x * mu_x + mu_y * mu_y + _SSIM_C1) * (var_x + var_y + _SSIM_C2)
    )
    return float(ssim_map.mean())


def compare(ref: Image, test: Image, space: str = "luma") -> MetricsReport:
    """Score a test image against a reference.

    ``space``: "luma" scores the luminance channel (the pipeline's working
    space); "rgb-mean" averages per-channel MSE and SSIM over the channels,
    with PSNR derived from the averaged MSE so the PSNR/MSE relation holds
    either way. Grayscale inputs are identical under both.
    """
    _check_pair(ref, test)
    if space == "luma":
        ref_p, test_p = luminance(ref), luminance(test)
        m = mse(ref_p, test_p)
        return MetricsReport(mse=m, psnr_db=psnr_from_mse(m), ssim=ssim(ref_p, test_p))
    if space == "rgb-mean":
        channels = range(ref.channels)
        mses = [mse(Image(ref.plane(c)), Image(test.plane(c))) for c in channels]
        ssims = [ssim(Image(ref.plane(c)), Image(test.plane(c))) for c in channels]
        m = math.fsum(mses) / len(mses)
        return MetricsReport(mse=m, psnr_db=psnr_from_mse(m), ssim=math.fsum(ssims) / len(ssims))
    raise ValueError(f"unknown metric space {space!r}; expected 'luma' or 'rgb-mean'")
