"""Sampling windows, sampled fields and the Fourier machinery behind them.

Grids are uniform and cell-centred: ``x_i = cx - half_width + (i + 1/2) dx``.
Arrays are stored with shape ``(ny, nx)`` so that ``values[j, i]`` is the
sample at ``(x_i, y_j)``.
"""
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np


class DecayWarning(UserWarning):
    """A sampled field does not vanish at the window edge."""


class WindowWarning(UserWarning):
    """The packet is predicted to outgrow the sampling window."""


#: Edge magnitude allowed relative to the peak before a field is flagged.
DECAY_TOLERANCE = 1e-10


def _is_power_of_two(n):
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid1D:
    half_width: float
    n: int
    center: float = 0.0

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        if self.n < 16 or not _is_power_of_two(self.n):
            raise ValueError(f"n must be a power of two >= 16, got {self.n}")

    @property
    def dx(self):
        return 2.0 * self.half_width / self.n

    @property
    def x(self):
        return self.center - self.half_width + (np.arange(self.n) + 0.5) * self.dx

    @property
    def k(self):
        return 2.0 * np.pi * np.fft.fftfreq(self.n, self.dx)


@dataclass(frozen=True)
class Grid2D:
    """Square sampling window ``[cx - h, cx + h] x [cy - h, cy + h]``."""

    half_width: float
    nx: int = 256
    ny: int = 256
    center: tuple = (0.0, 0.0)

    def __post_init__(self):
        if not self.half_width > 0 or not np.isfinite(self.half_width):
            raise ValueError("half_width must be positive and finite")
        for name in ("nx", "ny"):
            n = getattr(self, name)
            if n < 16 or not _is_power_of_two(n):
                raise ValueError(f"{name} must be a power of two >= 16, got {n}")

    @property
    def dx(self):
        return 2.0 * self.half_width / self.nx

    @property
    def dy(self):
        return 2.0 * self.half_width / self.ny

    @property
    def x(self):
        return self.center[0] - self.half_width + (np.arange(self.nx) + 0.5) * self.dx

    @property
    def y(self):
        return self.center[1] - self.half_width + (np.arange(self.ny) + 0.5) * self.dy

    @property
    def shape(self):
        return (self.ny, self.nx)

    def mesh(self):
        """Coordinate arrays ``(X, Y)`` of shape ``(ny, nx)``."""
        return np.meshgrid(self.x, self.y, indexing="xy")

    def contains(self, x, y):
        cx, cy = self.center
        h = self.half_width
        return (cx - h <= x <= cx + h) and (cy - h <= y <= cy + h)


@dataclass(frozen=True)
class RealGridFunction:
    values: np.ndarray
    grid: Grid2D

    def __post_init__(self):
        if self.values.shape != self.grid.shape:
            raise ValueError(f"values shape {self.values.shape} != grid shape {self.grid.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("grid function contains non-finite values")


def edge_ratio(values):
    """Largest edge magnitude divided by the largest magnitude overall."""
    mag = np.abs(values)
    peak = mag.max()
    if peak == 0:
        return 0.0
    if mag.ndim == 1:
        edge = max(mag[0], mag[-1])
    else:
        edge = max(mag[0, :].max(), mag[-1, :].max(), mag[:, 0].max(), mag[:, -1].max())
    return float(edge / peak)


@dataclass(frozen=True)
class ComplexField:
    """Samples of psi on a :class:`Grid2D` at one instant."""

    values: np.ndarray
    grid: Grid2D
    time: float
    mode: Any
    params: Any
    warnings: tuple = field(default=())

    def __post_init__(self):
        if self.values.shape != self.grid.shape:
            raise ValueError(f"values shape {self.values.shape} != grid shape {self.grid.shape}")

    @property
    def decay_ok(self):
        return edge_ratio(self.values) < DECAY_TOLERANCE


@dataclass(frozen=True)
class ComplexField1D:
    values: np.ndarray
    grid: Grid1D
    time: float
    mode: Any
    params: Any
    warnings: tuple = field(default=())

    def __post_init__(self):
        if self.values.shape != (self.grid.n,):
            raise ValueError("values length does not match grid")

    @property
    def decay_ok(self):
        return edge_ratio(self.values) < DECAY_TOLERANCE


@dataclass(frozen=True)
class VectorField2D:
    jx: np.ndarray
    jy: np.ndarray
    grid: Grid2D
    time: Optional[float] = None

    def __post_init__(self):
        for comp in (self.jx, self.jy):
            if comp.shape != self.grid.shape:
                raise ValueError("vector component shape does not match grid")
            if not np.all(np.isfinite(comp)):
                raise ValueError("vector field contains non-finite values")


class SpectralPlan:
    """Angular wavenumbers of a :class:`Grid2D` in FFT order.

    ``k_j = 2 pi j / (N dx)`` with the signed ordering of ``numpy.fft.fftfreq``.
    The Nyquist entry is kept (negative) in ``k2``, and zeroed in the
    first-derivative multipliers ``ikx``/``iky`` so that derivatives of real
    data stay real.
    """

    def __init__(self, grid):
        self.grid = grid
        self.kx = 2.0 * np.pi * np.fft.fftfreq(grid.nx, grid.dx)
        self.ky = 2.0 * np.pi * np.fft.fftfreq(grid.ny, grid.dy)
        KX, KY = np.meshgrid(self.kx, self.ky, indexing="xy")
        self.k2 = KX**2 + KY**2
        kx_d = self.kx.copy()
        kx_d[grid.nx // 2] = 0.0
        ky_d = self.ky.copy()
        ky_d[grid.ny // 2] = 0.0
        self.ikx = 1j * kx_d[np.newaxis, :]
        self.iky = 1j * ky_d[:, np.newaxis]

    def gradient(self, values):
        """Spectral ``(d/dx, d/dy)`` of a complex or real array."""
        spec = np.fft.fft2(values)
        ddx = np.fft.ifft2(self.ikx * spec)
        ddy = np.fft.ifft2(self.iky * spec)
        if np.isrealobj(values):
            return ddx.real, ddy.real
        return ddx, ddy

    def divergence(self, fx, fy):
        spec = self.ikx * np.fft.fft2(fx) + self.iky * np.fft.fft2(fy)
        out = np.fft.ifft2(spec)
        if np.isrealobj(fx) and np.isrealobj(fy):
            return out.real
        return out

    def laplacian(self, values):
        out = np.fft.ifft2(-self.k2 * np.fft.fft2(values))
        return out.real if np.isrealobj(values) else out
