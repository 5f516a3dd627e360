"""Selective super-resolution for large grayscale/RGB rasters.

Edge-rich patches of a low-resolution image are routed to an expensive
convolutional upscaler; the rest go through fast bicubic interpolation. The
package provides the image/tiling/saliency building blocks, the two upscaler
backends, PSNR/SSIM/MSE metrics, the orchestrating pipeline, and a benchmark
CLI for exploring the latency/quality trade-off.
"""

from .bicubic import bicubic_upscale, keys_weight, resample_plane
from .edges import EdgeRanking, edge_count, edge_map, rank_patches
from .image import (
    Image,
    ImageFormatError,
    LumaChroma,
    degrade,
    load_image,
    luminance,
    rgb_to_ycbcr,
    save_image,
    ycbcr_to_rgb,
)
from .metrics import MetricsReport, compare, mse, psnr, ssim
from .pipeline import AllocationPlan, RunReport, plan_allocation, predicted_time_advantage, run
from .srcnn import (
    ARCHITECTURE,
    SrcnnWeights,
    WeightFormatError,
    identity_weights,
    load_srcnn_weights,
    save_srcnn_weights,
    sharpen_weights,
    srcnn_upscale,
)
from .tiles import PatchGrid, fuse, tile, valid_patch_sizes
from .upscalers import BicubicUpscaler, OracleUpscaler, SrcnnUpscaler, Upscaler

__version__ = "0.1.0"

__all__ = [
    "ARCHITECTURE",
    "AllocationPlan",
    "BicubicUpscaler",
    "EdgeRanking",
    "Image",
    "ImageFormatError",
    "LumaChroma",
    "MetricsReport",
    "OracleUpscaler",
    "PatchGrid",
    "RunReport",
    "SrcnnUpscaler",
    "SrcnnWeights",
    "Upscaler",
    "WeightFormatError",
    "bicubic_upscale",
    "compare",
    "degrade",
    "edge_count",
    "edge_map",
    "fuse",
    "identity_weights",
    "keys_weight",
    "load_image",
    "load_srcnn_weights",
    "luminance",
    "mse",
    "plan_allocation",
    "predicted_time_advantage",
    "psnr",
    "rank_patches",
    "resample_plane",
    "rgb_to_ycbcr",
    "run",
    "save_image",
    "save_srcnn_weights",
    "sharpen_weights",
    "srcnn_upscale",
    "ssim",
    "tile",
    "valid_patch_sizes",
    "ycbcr_to_rgb",
]
