# %% [markdown]
# # Current streamlines through the focus
#
# Trace the direction of the probability current of an l = 1 vortex.  The
# lines close into circles at t = 0 and open into spirals on either side,
# while the sense of rotation never changes.  Frames are written as SVG and
# the densities as PGM images.

# %%
import math
import sys
from pathlib import Path

from wavepacket import LaguerreGauss, PhysicalParams, current, default_grid, handedness, sample, trace
from wavepacket.export import atomic_write, pgm_bytes, svg_text
from wavepacket.observables import density, ring_radius
from wavepacket.streamlines import closure_error, default_seeds

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

params = PhysicalParams()
t0 = params.time_scale
times = [-2 * t0, -0.1 * t0, 0.0, 0.1 * t0, 2 * t0]
grid = default_grid(params, times)

# %%
for i, t in enumerate(times):
    field = sample(LaguerreGauss(1), params, grid, t)
    j = current(field)
    ring = params.waist * math.sqrt((1 + (t / t0) ** 2) / 2)
    step = 0.02 * params.waist * math.sqrt(1 + (t / t0) ** 2)
    lines = [trace(j, seed, step, int(math.ceil(3 * math.pi * math.hypot(*seed) / step)) + 1)
             for seed in default_seeds(params, t)]
    closed = [k for k, line in enumerate(lines) if closure_error(line) < 2 * step]
    print(f"t={t / t0:+.1f}t0  ring={ring_radius(field):.3f}  handedness={handedness(j, ring):+d}"
          f"  closed {len(closed)}/{len(lines)}")
    atomic_write(out / f"streamlines_{i}.svg", svg_text(lines, grid, closed=closed))
    atomic_write(out / f"density_{i}.pgm", pgm_bytes(density(field).values))

print("frames written to", out.resolve())
