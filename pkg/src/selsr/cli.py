"""Command-line surface: degrade, sr, eval, and the bench sweep.

Machine-readable results (JSON reports, CSV sweep tables) go to files or
stdout; human-readable progress and summaries go to stderr so the outputs
stay parseable.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np
from PIL import Image as PILImage

from .image import Image, ImageFormatError, degrade, load_image, luminance, save_image
from .metrics import compare, format_metric
from .pipeline import RunReport, predicted_time_advantage, run
from .srcnn import WeightFormatError, load_srcnn_weights
from .tiles import tile, valid_patch_sizes
from .upscalers import SrcnnUpscaler

__all__ = ["main"]

CSV_HEADER = [
    "patch_size",
    "topk_percent",
    "psnr_db",
    "ssim",
    "mse",
    "wall_total_s",
    "deep_busy_s",
    "cheap_busy_s",
    "patches_deep",
    "patches_total",
]


def _info(msg: str) -> None:
    print(msg, file=sys.stderr)


def _parse_threads(value: str) -> int:
    if value == "max":
        return os.cpu_count() or 1
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--threads expects an integer or 'max', got {value!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"--threads must be >= 1, got {n}")
    return n


def _resolve_threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("SELSR_THREADS")
    if env:
        try:
            return _parse_threads(env)
        except argparse.ArgumentTypeError as exc:
            raise ValueError(f"SELSR_THREADS: {exc}") from exc
    return os.cpu_count() or 1


def _parse_int_list(value: str) -> list[int]:
    return [int(part) for part in value.split(",") if part.strip()]


def _parse_float_list(value: str) -> list[float]:
    return [float(part) for part in value.split(",") if part.strip()]


def _fmt(value: float) -> str:
    return f"{value:g}"


def cmd_degrade(args) -> int:
    hr = load_image(args.input)
    lr = degrade(hr, args.scale)
    save_image(lr, args.output)
    _info(f"{args.input}: {hr.width}x{hr.height} -> {args.output}: {lr.width}x{lr.height}")
    return 0


def _dump_edge_maps(lr: Image, patch_size: int, threshold: float, out_dir: Path) -> None:
    from .edges import edge_map

    out_dir.mkdir(parents=True, exist_ok=True)
    grid = tile(luminance(lr), patch_size)
    for i, patch in enumerate(grid.patches):
        bits = edge_map(patch, threshold)
        pil = PILImage.fromarray((bits * np.uint8(255)), mode="L").convert("1")
        pil.save(out_dir / f"edge_{i:04d}.png", format="PNG")
    _info(f"wrote {len(grid)} edge maps to {out_dir}")


def cmd_sr(args) -> int:
    lr = load_image(args.input)
    weights = load_srcnn_weights(args.weights)
    threads = _resolve_threads(args.threads)
    reference = load_image(args.reference) if args.reference else None

    output, report = run(
        lr,
        factor=args.scale,
        patch_size=args.patch_size,
        topk_percent=args.topk,
        threshold=args.threshold,
        deep=SrcnnUpscaler(weights),
        hr_reference=reference,
        threads=threads,
    )
    save_image(output, args.output)
    if args.dump_edge_maps:
        _dump_edge_maps(lr, args.patch_size, args.threshold, Path(args.dump_edge_maps))

    doc = json.dumps(report.to_json_dict(), indent=2)
    if args.report:
        Path(args.report).write_text(doc + "\n")
    else:
        print(doc)
    _info(
        f"{args.output}: {output.width}x{output.height}, "
        f"{report.patches_deep}/{report.patches_total} patches deep, "
        f"wall {report.timings_s['wall_total']:.3f}s"
    )
    return 0


def cmd_eval(args) -> int:
    reference = load_image(args.reference)
    test = load_image(args.test)
    metrics = compare(reference, test, space=args.metric_space)
    print(json.dumps(metrics.to_json_dict()))
    return 0


def _bench_rows(args, hr: Image, lr: Image, weights, threads: int):
    """Yield one CSV row dict per (patch_size, topk) combination, in sweep order."""
    backend = SrcnnUpscaler(weights)
    warmed_up = False
    for patch_size in args.patch_sizes:
        if lr.width % patch_size or lr.height % patch_size:
            for topk in args.topk:
                _info(
                    f"warning: skipping patch_size={patch_size} topk={_fmt(topk)}: "
                    f"{lr.width}x{lr.height} not divisible by {patch_size} "
                    f"(compatible sizes: {valid_patch_sizes(lr.width, lr.height)})"
                )
            continue
        for topk in args.topk:
            if not warmed_up:
                # one warm-up run per bench invocation, excluded from all means
                run(lr, 2, patch_size, topk, args.threshold, backend, threads=threads)
                warmed_up = True
            reports: list[RunReport] = []
            for repeat in range(args.repeats):
                _, report = run(
                    lr,
                    2,
                    patch_size,
                    topk,
                    args.threshold,
                    backend,
                    hr_reference=hr if repeat == 0 else None,
                    threads=threads,
                )
                reports.append(report)
            metrics = reports[0].metrics
            mean = {
                key: sum(r.timings_s[key] for r in reports) / len(reports)
                for key in ("wall_total", "deep_upscale_total", "cheap_upscale_total")
            }
            row = {
                "patch_size": patch_size,
                "topk_percent": _fmt(topk),
                "psnr_db": format_metric(metrics.psnr_db),
                "ssim": format_metric(metrics.ssim),
                "mse": format_metric(metrics.mse),
                "wall_total_s": round(mean["wall_total"], 3),
                "deep_busy_s": round(mean["deep_upscale_total"], 3),
                "cheap_busy_s": round(mean["cheap_upscale_total"], 3),
                "patches_deep": reports[0].patches_deep,
                "patches_total": reports[0].patches_total,
            }
            _info(
                f"patch_size={patch_size} topk={_fmt(topk)}: "
                f"psnr={row['psnr_db']} wall={row['wall_total_s']}s "
                f"deep={row['patches_deep']}/{row['patches_total']}"
            )
            yield row


def _advantage_summary(rows: list[dict]) -> None:
    """Predicted vs measured time advantage, when 0% and 100% rows exist."""
    by_size: dict[int, dict[float, dict]] = {}
    for row in rows:
        by_size.setdefault(row["patch_size"], {})[float(row["topk_percent"])] = row
    for patch_size, group in by_size.items():
        if 0.0 not in group or 100.0 not in group:
            continue
        t_cheap = group[0.0]["wall_total_s"]
        t_deep = group[100.0]["wall_total_s"]
        for topk in sorted(group):
            if topk in (0.0, 100.0):
                continue
            predicted = predicted_time_advantage(t_deep, t_cheap, topk)
            measured = t_deep - group[topk]["wall_total_s"]
            _info(
                f"patch_size={patch_size} topk={_fmt(topk)}: "
                f"time advantage predicted={predicted:.3f}s measured={measured:.3f}s"
            )


def cmd_bench(args) -> int:
    process_start = time.perf_counter()
    hr = load_image(args.input_hr)
    weights = load_srcnn_weights(args.weights)
    threads = _resolve_threads(args.threads)
    if hr.width % 2 or hr.height % 2:
        raise ValueError(f"HR image {hr.width}x{hr.height} is not divisible by 2")
    lr = degrade(hr, 2)
    _info(f"bench: HR {hr.width}x{hr.height} -> LR {lr.width}x{lr.height}, repeats={args.repeats}")

    rows = list(_bench_rows(args, hr, lr, weights, threads))
    with open(args.output, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        writer.writeheader()
        writer.writerows(rows)
    _advantage_summary(rows)
    pipeline_s = sum(row["wall_total_s"] * args.repeats for row in rows)
    _info(
        f"wrote {len(rows)} rows to {args.output} "
        f"(pipeline time ~{pipeline_s:.1f}s, process time {time.perf_counter() - process_start:.1f}s)"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selsr",
        description="Selective super-resolution: deep upscaling for edge-rich patches, bicubic for the rest.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degrade", help="bicubic-downsample an HR PNG to a synthetic LR PNG")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--scale", type=int, default=2, help="integer downsampling factor (default 2)")
    p.set_defaults(func=cmd_degrade)

    p = sub.add_parser("sr", help="super-resolve an LR PNG")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--weights", required=True, help="SRW1 weight file for the deep backend")
    p.add_argument("--patch-size", type=int, default=200, help="tile side in pixels (default 200)")
    p.add_argument("--topk", type=float, default=60.0, help="percent of patches sent to the deep backend (default 60)")
    p.add_argument("--threshold", type=float, default=100.0, help="edge gradient-magnitude threshold (default 100)")
    p.add_argument("--scale", type=int, default=2, help="integer upscaling factor (default 2)")
    p.add_argument("--report", help="write the JSON run report here instead of stdout")
    p.add_argument("--reference", help="HR reference PNG; adds PSNR/SSIM/MSE to the report")
    p.add_argument("--dump-edge-maps", metavar="DIR", help="write per-patch 1-bit edge maps to DIR")
    p.add_argument("--threads", type=_parse_threads, default=None,
                   help="worker threads or 'max' (default: SELSR_THREADS or all cores)")
    p.add_argument("--seed", type=int, default=None, help="reserved; the pipeline has no randomness")
    p.set_defaults(func=cmd_sr)

    p = sub.add_parser("eval", help="print PSNR/SSIM/MSE of a test PNG against a reference PNG")
    p.add_argument("reference")
    p.add_argument("test")
    p.add_argument("--metric-space", choices=["luma", "rgb-mean"], default="luma")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="sweep patch sizes and top-K percentages, write a CSV table")
    p.add_argument("input_hr")
    p.add_argument("--weights", required=True, help="SRW1 weight file for the deep backend")
    p.add_argument("--patch-sizes", type=_parse_int_list, default=[100, 200, 300],
                   help="comma-separated tile sides (default 100,200,300)")
    p.add_argument("--topk", type=_parse_float_list, default=[20.0, 40.0, 60.0, 80.0],
                   help="comma-separated deep percentages (default 20,40,60,80)")
    p.add_argument("--threshold", type=float, default=100.0, help="edge gradient-magnitude threshold (default 100)")
    p.add_argument("--repeats", type=int, default=1,
                   help="timed pipeline runs per combination; timings are means (default 1)")
    p.add_argument("--output", required=True, help="CSV output path")
    p.add_argument("--threads", type=_parse_threads, default=None,
                   help="worker threads or 'max' (default: SELSR_THREADS or all cores)")
    p.add_argument("--seed", type=int, default=None, help="reserved; the pipeline has no randomness")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        _info(f"error: {exc}")
        return 1
    except (ImageFormatError, WeightFormatError, ValueError) as exc:
        _info(f"error: {exc}")
        return 1
    except OSError as exc:
        _info(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
