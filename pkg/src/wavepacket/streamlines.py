"""Integral curves of the probability-current direction field."""
import math
from dataclasses import dataclass

import numpy as np

#: Current magnitude below which a point counts as stagnant.
STAGNATION = 1e-12


class StagnationError(ValueError):
    """The current vanishes at the seed, so there is no direction to follow."""


@dataclass(frozen=True)
class Polyline:
    points: np.ndarray
    seed: tuple
    time: float
    stop_reason: str = "max_steps"

    def __len__(self):
        return len(self.points)


class _Interpolator:
    """Bilinear interpolation of ``(jx, jy)`` between cell-centre nodes."""

    def __init__(self, vfield):
        grid = vfield.grid
        self.jx, self.jy = vfield.jx, vfield.jy
        self.x0, self.y0 = grid.x[0], grid.y[0]
        self.dx, self.dy = grid.dx, grid.dy
        self.nx, self.ny = grid.nx, grid.ny

    def __call__(self, x, y):
        fi = (x - self.x0) / self.dx
        fj = (y - self.y0) / self.dy
        if not (0.0 <= fi <= self.nx - 1 and 0.0 <= fj <= self.ny - 1):
            return None
        i = min(int(fi), self.nx - 2)
        j = min(int(fj), self.ny - 2)
        s, u = fi - i, fj - j
        w00, w10, w01, w11 = (1 - s) * (1 - u), s * (1 - u), (1 - s) * u, s * u
        jx, jy = self.jx, self.jy
        vx = w00 * jx[j, i] + w10 * jx[j, i + 1] + w01 * jx[j + 1, i] + w11 * jx[j + 1, i + 1]
        vy = w00 * jy[j, i] + w10 * jy[j, i + 1] + w01 * jy[j + 1, i] + w11 * jy[j + 1, i + 1]
        return vx, vy


def _direction(interp, x, y):
    v = interp(x, y)
    if v is None:
        return None, "window_exit"
    mag = math.hypot(*v)
    if mag < STAGNATION:
        return None, "stagnation"
    return (v[0] / mag, v[1] / mag), None


def trace(vfield, seed, step, max_steps):
    """Follow the unit vector ``j / |j|`` from ``seed`` with classical RK4.

    Integration stops after ``max_steps`` steps, when the curve leaves the
    interpolation window, or when ``|j|`` drops below :data:`STAGNATION`.

    Raises
    ------
    StagnationError
        If the current already vanishes at the seed.
    """
    if not step > 0:
        raise ValueError("step must be positive")
    interp = _Interpolator(vfield)
    x, y = float(seed[0]), float(seed[1])
    d, why = _direction(interp, x, y)
    if why == "window_exit":
        raise ValueError(f"seed {seed} lies outside the grid window")
    if why == "stagnation":
        raise StagnationError(f"|j| < {STAGNATION:g} at seed {seed}")

    points = [(x, y)]
    reason = "max_steps"
    h = step
    for _ in range(max_steps):
        k1, why = _direction(interp, x, y)
        if k1 is not None:
            k2, why = _direction(interp, x + 0.5 * h * k1[0], y + 0.5 * h * k1[1])
        if k1 is not None and k2 is not None:
            k3, why = _direction(interp, x + 0.5 * h * k2[0], y + 0.5 * h * k2[1])
        if k1 is not None and k2 is not None and k3 is not None:
            k4, why = _direction(interp, x + h * k3[0], y + h * k3[1])
        if why is not None:
            reason = why
            break
        x += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        if interp(x, y) is None:
            reason = "window_exit"
            break
        points.append((x, y))
    return Polyline(points=np.array(points), seed=(float(seed[0]), float(seed[1])),
                    time=vfield.time, stop_reason=reason)


def closure_error(line):
    """How close a trace comes back to its seed after moving away from it.

    Only vertices after the trace first reaches half its largest distance
    from the seed are considered, so the opening steps do not count as a
    return.  ``inf`` for traces that never turn back.
    """
    pts = line.points
    if len(pts) < 3:
        return math.inf
    dist = np.hypot(pts[:, 0] - line.seed[0], pts[:, 1] - line.seed[1])
    away = int(np.argmax(dist >= 0.5 * dist.max()))
    tail = dist[away + 1:]
    if tail.size == 0 or tail.min() >= dist[away]:
        return math.inf
    return float(tail.min())


def azimuthal_profile(vfield, radius, n_points=64):
    """Azimuthal current ``(x jy - y jx) / r`` at ``n_points`` on a circle."""
    interp = _Interpolator(vfield)
    cx, cy = vfield.grid.center
    out = np.empty(n_points)
    for k in range(n_points):
        phi = 2.0 * math.pi * k / n_points
        x, y = cx + radius * math.cos(phi), cy + radius * math.sin(phi)
        v = interp(x, y)
        if v is None:
            raise ValueError(f"circle of radius {radius} leaves the grid window")
        out[k] = ((x - cx) * v[1] - (y - cy) * v[0]) / radius
    return out


def handedness(vfield, radius):
    """Sense of circulation on a circle: +1 counter-clockwise, -1 clockwise, 0 none."""
    mean = float(np.mean(azimuthal_profile(vfield, radius)))
    if abs(mean) < STAGNATION:
        return 0
    return 1 if mean > 0 else -1


def default_seeds(params, t, per_circle=8, factors=(0.5, 1.0, 1.5)):
    """Seeds spread evenly on circles scaled to the instantaneous ring radius."""
    tau = t / (params.mass * params.waist**2 / (2.0 * params.hbar))
    ring = params.waist * math.sqrt((1.0 + tau * tau) / 2.0)
    seeds = []
    for f in factors:
        for k in range(per_circle):
            phi = 2.0 * math.pi * k / per_circle
            seeds.append((f * ring * math.cos(phi), f * ring * math.sin(phi)))
    return seeds


def segments_intersect(a, b):
    """True if polylines ``a`` and ``b`` (arrays of shape (n, 2)) cross."""
    # proper crossings only; touching endpoints are ignored
    if len(a) < 2 or len(b) < 2:
        return False
    p, r = a[:-1], a[1:] - a[:-1]
    q, s = b[:-1], b[1:] - b[:-1]
    # bounding-box prefilter keeps the pairwise test cheap
    amin, amax = np.minimum(a[:-1], a[1:]), np.maximum(a[:-1], a[1:])
    bmin, bmax = np.minimum(b[:-1], b[1:]), np.maximum(b[:-1], b[1:])
    overlap = ((amin[:, None, 0] <= bmax[None, :, 0]) & (bmin[None, :, 0] <= amax[:, None, 0])
               & (amin[:, None, 1] <= bmax[None, :, 1]) & (bmin[None, :, 1] <= amax[:, None, 1]))
    ii, jj = np.nonzero(overlap)
    if ii.size == 0:
        return False
    pr, rr, qq, ss = p[ii], r[ii], q[jj], s[jj]
    denom = rr[:, 0] * ss[:, 1] - rr[:, 1] * ss[:, 0]
    qp = qq - pr
    with np.errstate(divide="ignore", invalid="ignore"):
        tt = (qp[:, 0] * ss[:, 1] - qp[:, 1] * ss[:, 0]) / denom
        uu = (qp[:, 0] * rr[:, 1] - qp[:, 1] * rr[:, 0]) / denom
    eps = 1e-12
    hit = (denom != 0) & (tt > eps) & (tt < 1 - eps) & (uu > eps) & (uu < 1 - eps)
    return bool(np.any(hit))
