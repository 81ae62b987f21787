# %% [markdown]
# # Free Hermite-Gauss and Laguerre-Gauss wave packets
#
# Evaluate the closed-form packets, check that they are normalized, and watch
# the width and Gouy phase evolve through the focus at t = 0.

# %%
import math

import numpy as np

from wavepacket import (
    Grid2D,
    HermiteGauss,
    LaguerreGauss,
    PhysicalParams,
    closed_form_moments,
    eval_hg,
    eval_lg,
    parse_mode,
)
from wavepacket.core_math import trapezoid_2d
from wavepacket.grids import RealGridFunction

params = PhysicalParams(mass=1.0, hbar=1.0, waist=1.0)
t0 = params.time_scale
print(f"t0 = m w0^2 / (2 hbar) = {t0}")

# %% [markdown]
# The packet amplitude at a single point.  The vortex vanishes on axis, the
# Gaussian peaks there.

# %%
print("LG(1) at the origin:", eval_lg(1, params, 0.0, 0.0, 0.0))
print("HG(0,0) at the origin:", eval_hg(HermiteGauss(0, 0), params, 0.0, 0.0, 0.0))
print("sqrt(2/pi) =", math.sqrt(2 / math.pi))

# %% [markdown]
# Normalization on a window of six packet widths, at the focus and one
# spreading time later.

# %%
grid = Grid2D(half_width=8.0, nx=256, ny=256)
X, Y = grid.mesh()
for text in ("hg:0,0", "hg:2,1", "lg:1", "lg:-2"):
    mode = parse_mode(text)
    for t in (0.0, t0):
        psi = eval_lg(mode, params, X, Y, t) if isinstance(mode, LaguerreGauss) \
            else eval_hg(mode, params, X, Y, t)
        n = trapezoid_2d(RealGridFunction(np.abs(psi) ** 2, grid))
        print(f"{text:7s} t={t / t0:g}t0  norm={n:.12f}")

# %% [markdown]
# Closed-form moments: the mean squared radius grows as 1 + (t/t0)^2 while
# the momentum spread and angular momentum stay put.

# %%
for t in (0.0, t0, 2 * t0):
    m = closed_form_moments(LaguerreGauss(1), params, t)
    print(f"t={t / t0:g}t0  <r^2>={m.r2:.3f}  <p^2>={m.p2:.3f}  <H>={m.energy:.3f}  <Lz>={m.lz:.3f}")

# %% [markdown]
# The on-axis phase of the Gaussian is the Gouy phase -atan(t/t0).

# %%
for f in (-2, -1, 0, 1, 2):
    phase = np.angle(eval_lg(0, params, 0.0, 0.0, f * t0))
    print(f"t={f:+d}t0  phase={phase:+.6f}  -atan={-math.atan(f):+.6f}")
