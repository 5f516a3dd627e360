"""Exercise the three-layer convolutional upscaler and its weight files.

Writes the two built-in weight sets (pass-through and unsharp-mask) in the
binary SRW1 format, reloads them, and compares both against plain bicubic on
a degraded test scene. The pass-through network should match bicubic almost
exactly; the unsharp-mask network should beat it.
"""

from pathlib import Path

import numpy as np

from selsr import (
    bicubic_upscale,
    compare,
    degrade,
    identity_weights,
    load_srcnn_weights,
    save_srcnn_weights,
    sharpen_weights,
    srcnn_upscale,
)
from selsr.synth import textured_scene

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

for name, weights in [("identity", identity_weights()), ("sharpen", sharpen_weights())]:
    path = out_dir / f"{name}.srw"
    save_srcnn_weights(weights, path)
    reloaded = load_srcnn_weights(path)  # parses and validates the header chain
    shapes = " + ".join("x".join(map(str, k.shape)) for k in reloaded.kernels)
    print(f"{path.name}: {path.stat().st_size} bytes, layers {shapes}")

hr = textured_scene(320, 320, seed=5)
lr = degrade(hr, 2)

cheap = bicubic_upscale(lr, 2)
print(f"\nupscaling {lr.width}x{lr.height} -> {hr.width}x{hr.height}")
print(f"bicubic        : psnr={compare(hr, cheap).psnr_db:.3f} dB")

ident = srcnn_upscale(lr, 2, identity_weights())
drift = np.abs(ident.data - cheap.data).max()
print(f"identity net   : psnr={compare(hr, ident).psnr_db:.3f} dB "
      f"(max deviation from bicubic {drift:.2e})")

sharp = srcnn_upscale(lr, 2, sharpen_weights())
print(f"unsharp net    : psnr={compare(hr, sharp).psnr_db:.3f} dB")
