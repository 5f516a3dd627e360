"""Round trip a synthetic scene through degrade and bicubic upscaling.

Builds a textured grayscale scene, bicubic-downsamples it by 2 (the standard
way to fake a low-resolution capture when you only have the high-resolution
image), upscales it back, and prints how much quality the round trip cost.
Writes the three PNGs next to this script under out/.
"""

from pathlib import Path

from selsr import bicubic_upscale, compare, degrade, save_image
from selsr.synth import textured_scene

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

hr = textured_scene(640, 480, seed=21)
save_image(hr, out_dir / "roundtrip_hr.png")

lr = degrade(hr, 2)
save_image(lr, out_dir / "roundtrip_lr.png")
print(f"degraded {hr.width}x{hr.height} -> {lr.width}x{lr.height}")

restored = bicubic_upscale(lr, 2)
save_image(restored, out_dir / "roundtrip_restored.png")

# the downsample threw away the upper half of the spectrum, so the restored
# image cannot match the original; this is the quality floor the deep
# backend tries to raise
report = compare(hr, restored)
print(f"bicubic round trip: psnr={report.psnr_db:.2f} dB  ssim={report.ssim:.4f}  mse={report.mse:.2f}")
print(f"wrote PNGs to {out_dir}/")
