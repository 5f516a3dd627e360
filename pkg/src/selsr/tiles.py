"""Non-overlapping square tiling and its exact inverse (jigsaw reassembly)."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .image import Image

__all__ = ["PatchGrid", "tile", "fuse", "valid_patch_sizes"]


@dataclass(frozen=True)
class PatchGrid:
    """Row-major grid of patch_size x patch_size copies of a source image.

    Patch i covers source column i % cols, row i // cols. Patches are copies,
    not views, so they can be processed independently.
    """

    patch_size: int
    rows: int
    cols: int
    source_width: int
    source_height: int
    patches: tuple[Image, ...]

    def __len__(self) -> int:
        return self.rows * self.cols

    def position(self, index: int) -> tuple[int, int]:
        """(row, col) of patch ``index``."""
        if not 0 <= index < len(self):
            raise IndexError(f"patch index {index} out of range for {len(self)} patches")
        return index // self.cols, index % self.cols

    def with_patches(self, patches) -> "PatchGrid":
        """Same geometry, different patch contents (e.g. after upscaling)."""
        patches = tuple(patches)
        if len(patches) != len(self):
            raise ValueError(f"expected {len(self)} patches, got {len(patches)}")
        return replace(self, patches=patches)


def valid_patch_sizes(width: int, height: int) -> list[int]:
    """All patch sizes that tile a width x height image exactly."""
    g = np.gcd(width, height)
    return [s for s in range(1, int(g) + 1) if g % s == 0]


def tile(img: Image, patch_size: int) -> PatchGrid:
    """Cut an image into non-overlapping patch_size x patch_size patches."""
    s = int(patch_size)
    if s < 1:
        raise ValueError(f"patch size must be >= 1, got {patch_size}")
    if img.width % s or img.height % s:
        raise ValueError(
            f"image dimensions {img.width}x{img.height} are not divisible by patch size {s}; "
            f"compatible sizes: {valid_patch_sizes(img.width, img.height)}"
        )
    rows, cols = img.height // s, img.width // s
    patches = []
    for r in range(rows):
        for c in range(cols):
            patches.append(Image(img.data[r * s : (r + 1) * s, c * s : (c + 1) * s]))
    return PatchGrid(
        patch_size=s,
        rows=rows,
        cols=cols,
        source_width=img.width,
        source_height=img.height,
        patches=tuple(patches),
    )


def fuse(grid: PatchGrid, upscale: int = 1) -> Image:
    """Reassemble patches into one image, each placed at its scaled rectangle.

    Every patch must measure (patch_size * upscale) per side; there is no
    blending and no overlap, so ``fuse(tile(img, s), 1) == img`` bit-exactly.
    """
    u = int(upscale)
    if u < 1:
        raise ValueError(f"upscale must be an integer >= 1, got {upscale}")
    if len(grid.patches) != len(grid):
        raise ValueError(f"expected {len(grid)} patches, got {len(grid.patches)}")
    side = grid.patch_size * u
    channels = grid.patches[0].channels
    out = np.empty((grid.source_height * u, grid.source_width * u, channels))
    for i, patch in enumerate(grid.patches):
        if patch.height != side or patch.width != side:
            raise ValueError(
                f"patch {i} is {patch.width}x{patch.height}, expected {side}x{side} for upscale {u}"
            )
        if patch.channels != channels:
            raise ValueError(f"patch {i} has {patch.channels} channel(s), expected {channels}")
        r, c = grid.position(i)
        out[r * side : (r + 1) * side, c * side : (c + 1) * side] = patch.data
    return Image(out)
