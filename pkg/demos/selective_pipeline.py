"""Sweep the deep-patch percentage through the full selective pipeline.

The interesting trade-off in one table: at 0% every patch is bicubic (fast,
lowest quality), at 100% every patch goes through the convolutional network
(slow, best quality), and in between the edge ranking decides which patches
deserve the expensive treatment.
"""

import time

from selsr import SrcnnUpscaler, degrade, run, sharpen_weights
from selsr.synth import textured_scene

hr = textured_scene(800, 400, seed=13)
lr = degrade(hr, 2)
deep = SrcnnUpscaler(sharpen_weights())

print(f"LR {lr.width}x{lr.height}, 100x100 patches, x2, threshold 100")
print(f"{'top-K %':>8} {'deep':>6} {'psnr dB':>9} {'ssim':>8} {'wall s':>8}")

for percent in (0, 25, 50, 75, 100):
    start = time.perf_counter()
    _, report = run(
        lr,
        factor=2,
        patch_size=100,
        topk_percent=float(percent),
        threshold=100.0,
        deep=deep,
        hr_reference=hr,
    )
    wall = time.perf_counter() - start
    m = report.metrics
    print(
        f"{percent:>8} {report.patches_deep:>3}/{report.patches_total:<2} "
        f"{m.psnr_db:>9.3f} {m.ssim:>8.4f} {wall:>8.2f}"
    )
