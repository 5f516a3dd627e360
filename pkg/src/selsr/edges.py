"""Gradient-magnitude edge maps, edge-pixel counts, and patch ranking.

The saliency signal that decides which patches are worth the expensive
upscaler: a patch with more above-threshold gradient pixels ranks higher.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import Image

__all__ = ["EdgeRanking", "edge_map", "edge_count", "rank_patches"]


@dataclass(frozen=True)
class EdgeRanking:
    """Per-patch edge-pixel counts and a deterministic descending order.

    ``order`` sorts counts non-increasingly, breaking ties by ascending patch
    index, so the ranking is identical across runs and thread counts.
    """

    counts: np.ndarray
    order: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        order = np.asarray(self.order, dtype=np.int64)
        if counts.ndim != 1 or order.shape != counts.shape:
            raise ValueError("counts and order must be 1-D arrays of equal length")
        counts.setflags(write=False)
        order.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "order", order)

    def __len__(self) -> int:
        return self.counts.size


def edge_map(patch: Image, threshold: float) -> np.ndarray:
    """Boolean edge map of a single-channel patch.

    Gradients are half-scaled central differences with replicate borders:
    gx = (I(x+1, y) - I(x-1, y)) / 2 and likewise for gy. A pixel is an edge
    point iff sqrt(gx^2 + gy^2) strictly exceeds ``threshold``. A step of
    height 255 therefore peaks at magnitude 127.5.
    """
    if patch.channels != 1:
        raise ValueError(f"edge_map expects a single-channel patch, got {patch.channels} channels")
    if not np.isfinite(threshold) or threshold < 0:
        raise ValueError(f"threshold must be a finite non-negative magnitude, got {threshold}")
    padded = np.pad(patch.plane(), 1, mode="edge")
    gx = (padded[1:-1, 2:] - padded[1:-1, :-2]) / 2.0
    gy = (padded[2:, 1:-1] - padded[:-2, 1:-1]) / 2.0
    return np.hypot(gx, gy) > threshold


def edge_count(edge_bits: np.ndarray) -> int:
    """Number of edge points in a boolean map."""
    return int(np.count_nonzero(edge_bits))


def rank_patches(counts) -> EdgeRanking:
    """Rank patch indices by descending edge count, index-ascending on ties."""
    counts = np.asarray(counts, dtype=np.int64)
    if counts.ndim != 1 or counts.size == 0:
        raise ValueError("rank_patches requires at least one patch count")
    if (counts < 0).any():
        raise ValueError("edge counts must be non-negative")
    # stable sort on negated counts keeps equal-count patches in index order
    order = np.argsort(-counts, kind="stable")
    return EdgeRanking(counts=counts, order=order)
