"""Pluggable patch upscalers sharing one interface.

Every backend maps a single-channel patch to exactly (w * factor, h * factor)
samples in [0, 255], deterministically. ``BicubicUpscaler`` is the fast path,
``SrcnnUpscaler`` the expensive one, and ``OracleUpscaler`` a test-only
backend that returns the ground-truth patch to make quality-ordering checks
deterministic.
"""

from __future__ import annotations

from typing import Protocol, runtime_checkable

from .bicubic import bicubic_upscale
from .image import Image
from .srcnn import SrcnnWeights, srcnn_upscale
from .tiles import PatchGrid

__all__ = ["Upscaler", "BicubicUpscaler", "SrcnnUpscaler", "OracleUpscaler"]


@runtime_checkable
class Upscaler(Protocol):
    """Behavioral contract for patch upscalers."""

    name: str

    def upscale(self, index: int, patch: Image, factor: int) -> Image:
        """Upscale patch ``index`` of the grid; must be pure per patch."""
        ...


class BicubicUpscaler:
    name = "bicubic"

    def upscale(self, index: int, patch: Image, factor: int) -> Image:
        return bicubic_upscale(patch, factor)


class SrcnnUpscaler:
    name = "srcnn"

    def __init__(self, weights: SrcnnWeights):
        self.weights = weights

    def upscale(self, index: int, patch: Image, factor: int) -> Image:
        return srcnn_upscale(patch, factor, self.weights)


class OracleUpscaler:
    """Returns the true high-resolution patch, ignoring the input patch.

    ``ground_truth`` must be the high-resolution image tiled at
    patch_size * factor so its indices align with the low-resolution grid.
    """

    name = "oracle"

    def __init__(self, ground_truth: PatchGrid):
        self.ground_truth = ground_truth

    def upscale(self, index: int, patch: Image, factor: int) -> Image:
        if not 0 <= index < len(self.ground_truth):
            raise IndexError(
                f"patch index {index} out of range for {len(self.ground_truth)} ground-truth patches"
            )
        hr_patch = self.ground_truth.patches[index]
        expected = patch.width * factor
        if hr_patch.width != expected or hr_patch.height != expected:
            raise ValueError(
                f"ground-truth patch {index} is {hr_patch.width}x{hr_patch.height}, "
                f"expected {expected}x{expected}"
            )
        return hr_patch
