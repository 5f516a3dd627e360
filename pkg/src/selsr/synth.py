"""Deterministic synthetic test scenes.

No real imagery ships with the package; demos and the test suite build
scenes here instead. Scenes mix flat gradients (nothing for the edge ranker
to find) with textured and structured regions (plenty), so selective
allocation has something meaningful to choose between.
"""

from __future__ import annotations

import numpy as np

from .image import Image

__all__ = ["gradient_and_checker", "textured_scene"]


def gradient_and_checker(width: int, height: int, cell: int = 2) -> Image:
    """Left half: smooth diagonal gradient; right half: high-frequency checker."""
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    img = 40.0 + 120.0 * (xx / max(width - 1, 1) + yy / max(height - 1, 1)) / 2.0
    checker = (((xx // cell) + (yy // cell)) % 2) * 200.0 + 25.0
    half = width // 2
    img[:, half:] = checker[:, half:]
    return Image(np.clip(img, 0.0, 255.0))


def textured_scene(width: int, height: int, seed: int = 7) -> Image:
    """Mixed-content grayscale scene: gradients, oriented sinusoids, blocks, blobs.

    Texture frequencies stay in the mid band so a factor-2 downsample keeps
    them recoverable; sharp block borders supply genuine step edges.
    """
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    img = 90.0 + 60.0 * xx / max(width - 1, 1) - 25.0 * yy / max(height - 1, 1)

    # oriented sinusoid bands; upper frequencies approach what a factor-2
    # downsample can still represent, so the degrade/upscale chain visibly
    # attenuates them
    for _ in range(10):
        fx, fy = rng.uniform(0.04, 0.2, size=2)
        phase = rng.uniform(0, 2 * np.pi)
        amp = rng.uniform(12.0, 30.0)
        cx = rng.integers(0, width)
        cy = rng.integers(0, height)
        sigma = rng.uniform(0.12, 0.3) * min(width, height)
        envelope = np.exp(-(((xx - cx) ** 2 + (yy - cy) ** 2) / (2 * sigma**2)))
        img += amp * envelope * np.sin(2 * np.pi * (fx * xx + fy * yy) + phase)

    # rectangular structures with hard borders
    for _ in range(10):
        w = int(rng.integers(width // 16, width // 6))
        h = int(rng.integers(height // 16, height // 6))
        x0 = int(rng.integers(0, max(width - w, 1)))
        y0 = int(rng.integers(0, max(height - h, 1)))
        img[y0 : y0 + h, x0 : x0 + w] += rng.uniform(-45.0, 45.0)

    return Image(np.clip(img, 0.0, 255.0))
