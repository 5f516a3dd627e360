"""Core image type, 8-bit PNG I/O, luma/chroma decomposition and downscaling.

Images are immutable float64 rasters in display range [0, 255]. All public
operations clamp their outputs to that range; intermediate values (e.g. chroma
planes, which naturally reach 255.5 for saturated colors) may exceed it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image as PILImage
from PIL import UnidentifiedImageError

__all__ = [
    "Image",
    "LumaChroma",
    "ImageFormatError",
    "load_image",
    "save_image",
    "rgb_to_ycbcr",
    "ycbcr_to_rgb",
    "luminance",
    "degrade",
]


class ImageFormatError(ValueError):
    """Raised for files that are not plain 8-bit grayscale/RGB PNGs."""


@dataclass(frozen=True)
class Image:
    """Planar float64 raster with 1 (grayscale) or 3 (RGB) channels.

    ``data`` has shape (height, width, channels); a 2-D array is accepted and
    treated as single-channel. The array is copied and marked read-only, so
    Image values are safe to share across threads.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim == 2:
            arr = arr[:, :, np.newaxis]
        if arr.ndim != 3 or arr.shape[2] not in (1, 3):
            raise ValueError(f"image data must be (h, w) or (h, w, 1|3), got shape {np.shape(self.data)}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image dimensions must be >= 1, got {arr.shape[1]}x{arr.shape[0]}")
        if not np.isfinite(arr).all():
            raise ValueError("image data contains non-finite samples")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    def plane(self, index: int = 0) -> np.ndarray:
        """Read-only 2-D view of one channel."""
        return self.data[:, :, index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))


@dataclass(frozen=True)
class LumaChroma:
    """Luminance plane plus optional blue/red chroma difference planes.

    Chroma planes are kept at full float precision (range ~[0.5, 255.5]) so
    that ``ycbcr_to_rgb(rgb_to_ycbcr(img))`` round-trips losslessly.
    """

    luma: Image
    cb: Image | None = None
    cr: Image | None = None

    def __post_init__(self):
        if self.luma.channels != 1:
            raise ValueError("luma plane must be single-channel")
        if (self.cb is None) != (self.cr is None):
            raise ValueError("cb and cr must both be present or both absent")
        if self.cb is not None:
            for name, plane in (("cb", self.cb), ("cr", self.cr)):
                if plane.channels != 1:
                    raise ValueError(f"{name} plane must be single-channel")
                if (plane.height, plane.width) != (self.luma.height, self.luma.width):
                    raise ValueError(
                        f"{name} plane is {plane.width}x{plane.height}, "
                        f"luma is {self.luma.width}x{self.luma.height}"
                    )


# ITU-R BT.601 full-range RGB -> YCbCr matrix and offsets. The inverse is
# derived numerically from the forward matrix so the pair is consistent to
# machine precision.
_BT601_FWD = np.array(
    [
        [0.299, 0.587, 0.114],
        [-0.168736, -0.331264, 0.5],
        [0.5, -0.418688, -0.081312],
    ]
)
_BT601_OFFSET = np.array([0.0, 128.0, 128.0])
_BT601_INV = np.linalg.inv(_BT601_FWD)

_SUPPORTED_PIL_MODES = {"L": 1, "RGB": 3}


def load_image(path: str | Path) -> Image:
    """Decode an 8-bit grayscale or RGB PNG into an Image, without rescaling.

    Anything else (16-bit, palette, alpha, non-PNG) is rejected rather than
    silently converted.
    """
    path = Path(path)
    try:
        with PILImage.open(path) as pil:
            if pil.format != "PNG":
                raise ImageFormatError(f"{path}: expected a PNG file, got {pil.format or 'unknown format'}")
            if pil.mode not in _SUPPORTED_PIL_MODES:
                raise ImageFormatError(
                    f"{path}: unsupported PNG color type/bit depth (mode {pil.mode!r}); "
                    "only 8-bit grayscale (L) and RGB without alpha are accepted"
                )
            arr = np.asarray(pil, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise ImageFormatError(f"{path}: decode failure (not a recognizable image)") from exc
    except OSError as exc:
        if isinstance(exc, FileNotFoundError):
            raise
        raise ImageFormatError(f"{path}: decode failure ({exc})") from exc
    return Image(arr.astype(np.float64))


def save_image(img: Image, path: str | Path) -> None:
    """Write an Image as an 8-bit PNG.

    Samples are clamped to [0, 255] and rounded half-away-from-zero, so a
    save/load round trip reproduces the input within 0.5 per sample.
    """
    clamped = np.clip(img.data, 0.0, 255.0)
    quantized = np.floor(clamped + 0.5).astype(np.uint8)  # half-up == half-away for non-negative values
    if img.channels == 1:
        pil = PILImage.fromarray(quantized[:, :, 0], mode="L")
    else:
        pil = PILImage.fromarray(quantized, mode="RGB")
    pil.save(Path(path), format="PNG")


def rgb_to_ycbcr(img: Image) -> LumaChroma:
    """Split a 3-channel image into BT.601 full-range luma and chroma planes.

    Chroma outputs are not clamped (see LumaChroma); luma is a convex
    combination of R, G, B and stays within [0, 255] by construction.
    """
    if img.channels != 3:
        raise ValueError(f"rgb_to_ycbcr expects a 3-channel image, got {img.channels} channel(s)")
    ycc = img.data @ _BT601_FWD.T + _BT601_OFFSET
    return LumaChroma(
        luma=Image(ycc[:, :, 0]),
        cb=Image(ycc[:, :, 1]),
        cr=Image(ycc[:, :, 2]),
    )


def ycbcr_to_rgb(ycc: LumaChroma) -> Image:
    """Recombine luma/chroma planes into an RGB image, clamped to [0, 255]."""
    if ycc.cb is None or ycc.cr is None:
        raise ValueError("ycbcr_to_rgb requires chroma planes")
    stacked = np.stack([ycc.luma.plane(), ycc.cb.plane(), ycc.cr.plane()], axis=-1)
    rgb = (stacked - _BT601_OFFSET) @ _BT601_INV.T
    return Image(np.clip(rgb, 0.0, 255.0))


def luminance(img: Image) -> Image:
    """Single-channel luminance: the image itself if grayscale, else BT.601 Y."""
    if img.channels == 1:
        return img
    return rgb_to_ycbcr(img).luma


def degrade(hr: Image, scale: int) -> Image:
    """Synthesize a low-resolution image by bicubic downsampling.

    Uses the same Keys (a = -0.5) kernel as upscaling so that the degradation
    and restoration paths are mutually consistent. Dimensions must divide
    exactly by ``scale``.
    """
    from .bicubic import resample_plane  # local import to avoid a cycle

    if scale < 2 or int(scale) != scale:
        raise ValueError(f"scale must be an integer >= 2, got {scale}")
    scale = int(scale)
    if hr.width % scale or hr.height % scale:
        raise ValueError(
            f"image dimensions {hr.width}x{hr.height} are not divisible by scale {scale}"
        )
    out_h, out_w = hr.height // scale, hr.width // scale
    planes = [resample_plane(hr.plane(c), out_h, out_w) for c in range(hr.channels)]
    return Image(np.clip(np.stack(planes, axis=-1), 0.0, 255.0))
