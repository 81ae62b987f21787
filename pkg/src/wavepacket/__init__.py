"""Free-particle Hermite-Gauss and Laguerre-Gauss wavepackets.

Closed-form packets (:mod:`~wavepacket.states`), grid measurements
(:mod:`~wavepacket.observables`), an exact spectral propagator used as an
oracle (:mod:`~wavepacket.propagator`) and current streamlines
(:mod:`~wavepacket.streamlines`).
"""
from .core_math import hermite_poly, hermite_poly_derivative, log_factorial, trapezoid_2d
from .grids import (
    ComplexField,
    ComplexField1D,
    DecayWarning,
    Grid1D,
    Grid2D,
    RealGridFunction,
    SpectralPlan,
    VectorField2D,
    WindowWarning,
)
from .observables import (
    ObservableReport,
    continuity_residual,
    current,
    default_grid,
    density,
    measure,
    sample,
    sample_1d,
)
from .propagator import oracle_compare, propagate, propagate_1d
from .states import (
    HermiteGauss,
    HermiteGauss1D,
    LaguerreGauss,
    MomentReport,
    PhysicalParams,
    closed_form_moments,
    eval_density,
    eval_gradient,
    eval_hg,
    eval_hg_1d,
    eval_lg,
    evaluate,
    paraxial_map,
    parse_mode,
    time_scale,
)
from .streamlines import Polyline, StagnationError, handedness, trace

__version__ = "0.1.0"
