"""Run the bench subcommand on a small synthetic scene and show its CSV.

Same machinery as `selsr bench` from the shell, driven in-process. Kept small
(480x480, two patch sizes) so it finishes in well under a minute; scale the
scene up for measurements you intend to quote.
"""

from pathlib import Path

from selsr import save_image, save_srcnn_weights, sharpen_weights
from selsr.cli import main
from selsr.synth import textured_scene

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

hr_path = out_dir / "bench_hr.png"
weights_path = out_dir / "bench_weights.srw"
csv_path = out_dir / "bench.csv"

save_image(textured_scene(480, 480, seed=7), hr_path)
save_srcnn_weights(sharpen_weights(), weights_path)

code = main([
    "bench", str(hr_path),
    "--weights", str(weights_path),
    "--patch-sizes", "60,120",
    "--topk", "0,25,50,75,100",
    "--threads", "1",
    "--output", str(csv_path),
])
assert code == 0, "bench failed"

print()
print(csv_path.read_text().strip())
