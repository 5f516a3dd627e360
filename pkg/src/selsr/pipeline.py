"""End-to-end selective super-resolution: tile, rank, allocate, upscale, fuse.

The top-K% of patches by edge content go through the supplied deep backend
(luminance only); everything else, including all chroma, is bicubic. Outputs
are bitwise independent of the thread count: every patch is computed by the
same pure function no matter where it is scheduled, and only timing fields
vary between runs.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .edges import EdgeRanking, edge_count, edge_map, rank_patches
from .image import Image, LumaChroma, rgb_to_ycbcr, ycbcr_to_rgb
from .metrics import MetricsReport, compare
from .tiles import tile, fuse
from .upscalers import BicubicUpscaler, Upscaler

__all__ = ["AllocationPlan", "RunReport", "plan_allocation", "run", "predicted_time_advantage"]

STAGE_NAMES = ("edge_analysis", "cheap_upscale_total", "deep_upscale_total", "fusion", "wall_total")


@dataclass(frozen=True)
class AllocationPlan:
    """Partition of patch indices into deep and cheap sets for one top-K%.

    ``deep_indices`` are exactly the first k entries of the edge ranking,
    with k = round-half-up(percent * total / 100).
    """

    deep_indices: frozenset[int]
    cheap_indices: frozenset[int]
    topk_percent: float
    k: int


def plan_allocation(ranking: EdgeRanking, topk_percent: float) -> AllocationPlan:
    """Allocate the top-K% ranked patches to the deep backend."""
    if not 0.0 <= topk_percent <= 100.0:
        raise ValueError(f"top-K percentage must be within [0, 100], got {topk_percent}")
    n = len(ranking)
    k = int(math.floor(topk_percent * n / 100.0 + 0.5))
    order = ranking.order
    return AllocationPlan(
        deep_indices=frozenset(int(i) for i in order[:k]),
        cheap_indices=frozenset(int(i) for i in order[k:]),
        topk_percent=float(topk_percent),
        k=k,
    )


def predicted_time_advantage(t_deep_full: float, t_cheap_full: float, topk_percent: float) -> float:
    """Expected seconds saved versus running the deep backend on every patch.

    t_deep_full and t_cheap_full are the measured times of the all-deep and
    all-cheap runs; the selective run is modeled as their p/100-weighted mix.
    """
    if t_deep_full < 0 or t_cheap_full < 0:
        raise ValueError("times must be non-negative")
    if not 0.0 <= topk_percent <= 100.0:
        raise ValueError(f"top-K percentage must be within [0, 100], got {topk_percent}")
    f = topk_percent / 100.0
    return t_deep_full - (f * t_deep_full + (1.0 - f) * t_cheap_full)


@dataclass(frozen=True)
class RunReport:
    """Configuration echo, patch counts, per-stage timings, optional metrics.

    The deep/cheap totals are summed per-patch busy times (comparable across
    thread counts); wall_total is elapsed real time of the pipeline, so under
    parallel execution the busy sums may exceed it.
    """

    patch_size: int
    topk_percent: float
    threshold: float
    factor: int
    backend: str
    patches_total: int
    patches_deep: int
    patches_cheap: int
    timings_s: dict[str, float]
    metrics: MetricsReport | None = None

    def to_json_dict(self) -> dict:
        """JSON document; metrics rounded to 4 decimals, timings to 3."""
        doc = {
            "config": {
                "patch_size": self.patch_size,
                "p": self.topk_percent,
                "threshold": self.threshold,
                "factor": self.factor,
                "backend": self.backend,
            },
            "counts": {
                "patches_total": self.patches_total,
                "patches_deep": self.patches_deep,
                "patches_cheap": self.patches_cheap,
            },
            "timings_s": {name: round(self.timings_s[name], 3) for name in STAGE_NAMES},
        }
        if self.metrics is not None:
            doc["metrics"] = self.metrics.to_json_dict()
        return doc


def run(
    lr: Image,
    factor: int,
    patch_size: int,
    topk_percent: float,
    threshold: float,
    deep: Upscaler,
    hr_reference: Image | None = None,
    threads: int = 1,
) -> tuple[Image, RunReport]:
    """Super-resolve ``lr`` by ``factor`` and report metrics and timings.

    With topk_percent = 0 the output is bitwise identical to tiling and
    bicubic-upscaling every patch; with 100 every patch takes the deep path.
    Metrics are computed on luminance against ``hr_reference`` when given
    (outside the timed region) and omitted from the report otherwise.
    """
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    if hr_reference is not None:
        expected = (lr.width * factor, lr.height * factor)
        if (hr_reference.width, hr_reference.height) != expected:
            raise ValueError(
                f"reference is {hr_reference.width}x{hr_reference.height}, "
                f"expected {expected[0]}x{expected[1]} for a x{factor} run"
            )

    wall_start = time.perf_counter()

    if lr.channels == 3:
        ycc = rgb_to_ycbcr(lr)
        luma_grid = tile(ycc.luma, patch_size)
        chroma_grids = {"cb": tile(ycc.cb, patch_size), "cr": tile(ycc.cr, patch_size)}
    else:
        luma_grid = tile(lr, patch_size)
        chroma_grids = {}

    t0 = time.perf_counter()
    counts = [edge_count(edge_map(p, threshold)) for p in luma_grid.patches]
    ranking = rank_patches(counts)
    edge_s = time.perf_counter() - t0

    plan = plan_allocation(ranking, topk_percent)

    cheap = _bicubic_backend
    jobs = [
        ("deep" if i in plan.deep_indices else "cheap", "luma", i, patch)
        for i, patch in enumerate(luma_grid.patches)
    ]
    for plane_name, grid in chroma_grids.items():
        jobs.extend(("cheap", plane_name, i, patch) for i, patch in enumerate(grid.patches))

    def work(job):
        kind, plane_name, index, patch = job
        t = time.perf_counter()
        backend = deep if kind == "deep" else cheap
        result = backend.upscale(index, patch, factor)
        return kind, plane_name, index, result, time.perf_counter() - t

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, jobs))
    else:
        results = [work(job) for job in jobs]

    busy = {"deep": 0.0, "cheap": 0.0}
    upscaled = {"luma": {}, "cb": {}, "cr": {}}
    for kind, plane_name, index, result, seconds in results:
        busy[kind] += seconds
        upscaled[plane_name][index] = result

    t0 = time.perf_counter()
    fused_luma = fuse(
        luma_grid.with_patches(upscaled["luma"][i] for i in range(len(luma_grid))),
        upscale=factor,
    )
    if chroma_grids:
        fused_cb = fuse(
            chroma_grids["cb"].with_patches(upscaled["cb"][i] for i in range(len(luma_grid))),
            upscale=factor,
        )
        fused_cr = fuse(
            chroma_grids["cr"].with_patches(upscaled["cr"][i] for i in range(len(luma_grid))),
            upscale=factor,
        )
        output = ycbcr_to_rgb(LumaChroma(luma=fused_luma, cb=fused_cb, cr=fused_cr))
    else:
        output = fused_luma
    fusion_s = time.perf_counter() - t0

    wall_s = time.perf_counter() - wall_start

    metrics = None
    if hr_reference is not None:
        metrics = compare(hr_reference, output, space="luma")

    report = RunReport(
        patch_size=luma_grid.patch_size,
        topk_percent=float(topk_percent),
        threshold=float(threshold),
        factor=int(factor),
        backend=deep.name,
        patches_total=len(luma_grid),
        patches_deep=plan.k,
        patches_cheap=len(luma_grid) - plan.k,
        timings_s={
            "edge_analysis": edge_s,
            "cheap_upscale_total": busy["cheap"],
            "deep_upscale_total": busy["deep"],
            "fusion": fusion_s,
            "wall_total": wall_s,
        },
        metrics=metrics,
    )
    return output, report


_bicubic_backend = BicubicUpscaler()
