"""Exact free evolution of sampled fields in Fourier space.

With no potential the propagator is diagonal in k, so one multiplication by
``exp(-i hbar |k|^2 t / (2m))`` evolves a field over any interval without
time stepping.  This is the independent check on the closed-form packets.
"""
import warnings
from dataclasses import replace

import numpy as np

from .grids import ComplexField1D, Grid1D, SpectralPlan, WindowWarning
from .observables import packet_width, sample, sample_1d
from .states import HermiteGauss1D


def _window_check(field, t_final):
    predicted = 6.0 * packet_width(field.params, t_final)
    if predicted > field.grid.half_width:
        msg = (f"predicted extent 6*w(t)={predicted:.4g} exceeds half_width "
               f"{field.grid.half_width:.4g} at t={t_final:g}")
        warnings.warn(msg, WindowWarning, stacklevel=3)
        return (msg,)
    return ()


def free_phase(k2, params, t):
    return np.exp(-1j * params.hbar * k2 * t / (2.0 * params.mass))


def propagate(field0, t, plan=None):
    """Evolve ``field0`` forward by ``t`` (negative ``t`` runs backwards).

    The returned field is stamped with time ``field0.time + t``.
    """
    if isinstance(field0, ComplexField1D):
        return propagate_1d(field0, t)
    t_final = field0.time + t
    notes = field0.warnings + _window_check(field0, t_final)
    if t == 0:
        return replace(field0, values=np.fft.ifft2(np.fft.fft2(field0.values)), warnings=notes)
    plan = plan or SpectralPlan(field0.grid)
    values = np.fft.ifft2(free_phase(plan.k2, field0.params, t) * np.fft.fft2(field0.values))
    return replace(field0, values=values, time=t_final, warnings=notes)


def propagate_1d(field0, t):
    """One-dimensional counterpart of :func:`propagate`."""
    t_final = field0.time + t
    notes = field0.warnings + _window_check(field0, t_final)
    k2 = field0.grid.k ** 2
    values = np.fft.ifft(free_phase(k2, field0.params, t) * np.fft.fft(field0.values))
    return replace(field0, values=values, time=t_final, warnings=notes)


def relative_l2_error(numeric, exact):
    return float(np.linalg.norm(numeric - exact) / np.linalg.norm(exact))


def oracle_compare(mode, params, grid, t):
    """Relative L2 distance between propagated and closed-form fields at ``t``.

    The packet is sampled at ``t = 0``, evolved spectrally to ``t`` and
    compared with a fresh analytic sample at ``t``.  One-dimensional modes
    use a :class:`Grid1D` with ``grid.nx`` points over the same half-width.
    """
    if isinstance(mode, HermiteGauss1D):
        if not isinstance(grid, Grid1D):
            grid = Grid1D(half_width=grid.half_width, n=grid.nx)
        f0 = sample_1d(mode, params, grid, 0.0)
        exact = sample_1d(mode, params, grid, t)
        return relative_l2_error(propagate_1d(f0, t).values, exact.values)
    f0 = sample(mode, params, grid, 0.0)
    exact = sample(mode, params, grid, t)
    return relative_l2_error(propagate(f0, t).values, exact.values)
