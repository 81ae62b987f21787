"""Closed-form free-particle packets: Hermite-Gauss and Laguerre-Gauss.

Every state is written in terms of the waist ``w0`` and the spreading time
``t0 = m w0**2 / (2 hbar)``.  With ``tau = t / t0`` and the instantaneous
width ``w(t) = w0 sqrt(1 + tau**2)`` the packets are

* Hermite-Gauss (mu, nu)::

      psi = C_mn / w * H_mu(sqrt2 x / w) H_nu(sqrt2 y / w) exp(-r^2 / w^2)
            * exp(i [r^2 tau / w^2 - (mu + nu + 1) arctan(tau)])

  with ``C_mn = sqrt(2 / (pi 2^(mu+nu) mu! nu!))``;

* Laguerre-Gauss with vortex charge ell (zero radial index)::

      psi = C_l / w * ((x + i sgn(ell) y) / w)^|ell| exp(-r^2 / w^2)
            * exp(i [r^2 tau / w^2 - (1 + |ell|) arctan(tau)])

  with ``C_l = sqrt(2^(1+|ell|) / (pi |ell|!))``;

* the one-dimensional Hermite packet of order n::

      psi = C_n / sqrt(w) * H_n(sqrt2 x / w) exp(-x^2 / w^2)
            * exp(i [x^2 tau / w^2 - (n + 1/2) arctan(tau)])

  with ``C_n = (2 / pi)^(1/4) / sqrt(2^n n!)``.

The amplitude is even in ``t`` and the phase odd, so ``|psi|^2`` is exactly
symmetric under time reversal, bit for bit.

Each 2D state has unit L2 norm at all times.  The Hermite-Gauss amplitude
carries a ``1/sqrt(1 + tau^2)`` decay; without it the norm would grow with
``|t|`` (see README, "Normalization conventions").
"""
import math
from dataclasses import dataclass

import numpy as np

from .core_math import MAX_ORDER, hermite_poly, hermite_poly_derivative, log_factorial

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class PhysicalParams:
    mass: float = 1.0
    hbar: float = 1.0
    waist: float = 1.0

    def __post_init__(self):
        for name in ("mass", "hbar", "waist"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")

    @property
    def time_scale(self):
        return time_scale(self)


def _check_index(name, value, signed=False):
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if not signed and value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")
    if abs(value) > MAX_ORDER:
        raise ValueError(f"|{name}| = {abs(value)} exceeds supported cap {MAX_ORDER}")


@dataclass(frozen=True)
class HermiteGauss:
    mu: int
    nu: int

    def __post_init__(self):
        _check_index("mu", self.mu)
        _check_index("nu", self.nu)

    @property
    def order(self):
        return self.mu + self.nu

    def __str__(self):
        return f"hg:{self.mu},{self.nu}"


@dataclass(frozen=True)
class LaguerreGauss:
    ell: int

    def __post_init__(self):
        _check_index("ell", self.ell, signed=True)

    @property
    def order(self):
        return abs(self.ell)

    def __str__(self):
        return f"lg:{self.ell}"


@dataclass(frozen=True)
class HermiteGauss1D:
    n: int

    def __post_init__(self):
        _check_index("n", self.n)

    @property
    def order(self):
        return self.n

    def __str__(self):
        return f"hg1d:{self.n}"


def parse_mode(text):
    """Parse ``"hg:mu,nu"``, ``"lg:ell"`` or ``"hg1d:n"`` into a mode object."""
    kind, _, args = text.strip().partition(":")
    kind = kind.lower()
    try:
        values = [int(a) for a in args.split(",")] if args else []
    except ValueError:
        raise ValueError(f"cannot parse mode {text!r}") from None
    if kind == "hg" and len(values) == 2:
        return HermiteGauss(*values)
    if kind == "lg" and len(values) == 1:
        return LaguerreGauss(values[0])
    if kind == "hg1d" and len(values) == 1:
        return HermiteGauss1D(values[0])
    raise ValueError(f"cannot parse mode {text!r}; expected hg:mu,nu | lg:ell | hg1d:n")


@dataclass(frozen=True)
class MomentReport:
    r2: float
    p2: float
    energy: float
    lz: float
    time: float
    mean_x: float = 0.0
    mean_y: float = 0.0
    mean_px: float = 0.0
    mean_py: float = 0.0


def time_scale(params):
    """Spreading time ``t0 = m w0^2 / (2 hbar)``."""
    return params.mass * params.waist**2 / (2.0 * params.hbar)


def paraxial_map(params):
    """Wavenumber of the optical beam that maps onto this particle.

    A paraxial beam ``u(x, y, z)`` solving ``2ik du/dz = -laplacian_perp u``
    becomes a free Schrodinger solution ``psi(x, y, t)`` after ``z -> t``
    and ``k -> m / hbar``.  Under the same map the Rayleigh range
    ``k w0^2 / 2`` turns into :func:`time_scale`.
    """
    return params.mass / params.hbar


def _width_and_phase(params, r2, t):
    """Instantaneous width and the curvature part of the phase."""
    t0 = time_scale(params)
    tau = t / t0
    w = params.waist * math.sqrt(1.0 + tau * tau)
    curvature = r2 * (tau / (w * w))
    return tau, w, curvature


def _hg_log_norm(mu, nu):
    return 0.5 * (math.log(2.0 / math.pi) - (mu + nu) * math.log(2.0)
                  - log_factorial(mu) - log_factorial(nu))


def _lg_log_norm(ell):
    m = abs(ell)
    return 0.5 * ((1 + m) * math.log(2.0) - math.log(math.pi) - log_factorial(m))


def _hg1d_log_norm(n):
    return 0.25 * math.log(2.0 / math.pi) - 0.5 * (n * math.log(2.0) + log_factorial(n))


def eval_hg(mode, params, x, y, t):
    """Normalized Hermite-Gauss packet ``psi_{mu nu}(x, y, t)``.

    ``x`` and ``y`` may be arrays (broadcast together); ``t`` is a scalar.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r2 = x * x + y * y
    tau, w, curvature = _width_and_phase(params, r2, t)
    gouy = (mode.mu + mode.nu + 1) * math.atan(tau)
    amp = (math.exp(_hg_log_norm(mode.mu, mode.nu)) / w
           * hermite_poly(mode.mu, SQRT2 * x / w) * hermite_poly(mode.nu, SQRT2 * y / w)
           * np.exp(-r2 / (w * w)))
    return (amp * np.exp(1j * (curvature - gouy)))[()]


def eval_hg_1d(mode, params, x, t):
    """Normalized one-dimensional Hermite packet ``psi_n(x, t)``."""
    x = np.asarray(x, dtype=float)
    x2 = x * x
    tau, w, curvature = _width_and_phase(params, x2, t)
    gouy = (mode.n + 0.5) * math.atan(tau)
    amp = (math.exp(_hg1d_log_norm(mode.n)) / math.sqrt(w)
           * hermite_poly(mode.n, SQRT2 * x / w) * np.exp(-x2 / (w * w)))
    return (amp * np.exp(1j * (curvature - gouy)))[()]


def _vortex(ell, x, y, w):
    """Scaled vortex coordinate ``(x + i sgn(ell) y) / w``, ``|ell|`` and ``sgn(ell)``."""
    m = abs(ell)
    s = 1.0 if ell >= 0 else -1.0
    z = (x + 1j * s * y) / w
    return z, m, s


def eval_lg(ell, params, x, y, t):
    """Normalized Laguerre-Gauss vortex packet ``psi_ell(x, y, t)``.

    ``ell`` may be an int or a :class:`LaguerreGauss`.  Negative charges use
    the conjugate vortex ``(x - i y)^|ell|``.
    """
    if isinstance(ell, LaguerreGauss):
        ell = ell.ell
    _check_index("ell", ell, signed=True)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r2 = x * x + y * y
    tau, w, curvature = _width_and_phase(params, r2, t)
    z, m, _ = _vortex(ell, x, y, w)
    gouy = (1 + m) * math.atan(tau)
    amp = math.exp(_lg_log_norm(ell)) / w * np.exp(-r2 / (w * w))
    return (amp * z**m * np.exp(1j * (curvature - gouy)))[()]


def evaluate(mode, params, x, y, t):
    """Dispatch to the evaluator for ``mode``; ``y`` is ignored in 1D."""
    if isinstance(mode, HermiteGauss):
        return eval_hg(mode, params, x, y, t)
    if isinstance(mode, LaguerreGauss):
        return eval_lg(mode.ell, params, x, y, t)
    if isinstance(mode, HermiteGauss1D):
        return eval_hg_1d(mode, params, x, t)
    raise TypeError(f"unknown mode {mode!r}")


def eval_density(mode, params, x, y, t):
    """Closed-form ``|psi|^2`` built from the amplitude alone.

    Uses only real arithmetic in ``t**2``, so frames at ``+t`` and ``-t`` are
    bit-identical.  Agrees with ``abs(evaluate(...))**2`` to rounding.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if isinstance(mode, HermiteGauss1D):
        _, w, _ = _width_and_phase(params, 0.0, t)
        amp = (math.exp(_hg1d_log_norm(mode.n)) / math.sqrt(w)
               * hermite_poly(mode.n, SQRT2 * x / w) * np.exp(-x * x / (w * w)))
        return (amp * amp)[()]
    r2 = x * x + y * y
    _, w, _ = _width_and_phase(params, r2, t)
    gauss = np.exp(-2.0 * r2 / (w * w))
    if isinstance(mode, HermiteGauss):
        h = hermite_poly(mode.mu, SQRT2 * x / w) * hermite_poly(mode.nu, SQRT2 * y / w)
        return (math.exp(2.0 * _hg_log_norm(mode.mu, mode.nu)) / (w * w) * h * h * gauss)[()]
    if isinstance(mode, LaguerreGauss):
        m = abs(mode.ell)
        return (math.exp(2.0 * _lg_log_norm(mode.ell)) / (w * w) * (r2 / (w * w)) ** m * gauss)[()]
    raise TypeError(f"unknown mode {mode!r}")


def eval_gradient(mode, params, x, y, t):
    """Closed-form spatial gradient ``(dpsi/dx, dpsi/dy)``.

    For a 1D mode the second component is identically zero.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    t0 = time_scale(params)
    tau = t / t0
    # d/dx of exp(-x^2 / (w0^2 (1 + i tau))) is -2x / (w0^2 (1 + i tau)) times itself
    gauss_log_slope = -2.0 / (params.waist**2 * (1.0 + 1j * tau))

    if isinstance(mode, HermiteGauss1D):
        _, w, curvature = _width_and_phase(params, x * x, t)
        a = SQRT2 / w
        gouy = (mode.n + 0.5) * math.atan(tau)
        envelope = (math.exp(_hg1d_log_norm(mode.n)) / math.sqrt(w) * np.exp(-x * x / (w * w))
                    * np.exp(1j * (curvature - gouy)))
        ddx = envelope * (a * hermite_poly_derivative(mode.n, a * x)
                          + gauss_log_slope * x * hermite_poly(mode.n, a * x))
        return ddx[()], np.zeros_like(ddx, dtype=complex)[()]

    if isinstance(mode, HermiteGauss):
        r2 = x * x + y * y
        _, w, curvature = _width_and_phase(params, r2, t)
        a = SQRT2 / w
        gouy = (mode.mu + mode.nu + 1) * math.atan(tau)
        envelope = (math.exp(_hg_log_norm(mode.mu, mode.nu)) / w * np.exp(-r2 / (w * w))
                    * np.exp(1j * (curvature - gouy)))
        hx = hermite_poly(mode.mu, a * x)
        hy = hermite_poly(mode.nu, a * y)
        dhx = a * hermite_poly_derivative(mode.mu, a * x)
        dhy = a * hermite_poly_derivative(mode.nu, a * y)
        ddx = envelope * hy * (dhx + gauss_log_slope * x * hx)
        ddy = envelope * hx * (dhy + gauss_log_slope * y * hy)
        return ddx[()], ddy[()]

    if isinstance(mode, LaguerreGauss):
        ell = mode.ell
        r2 = x * x + y * y
        _, w, curvature = _width_and_phase(params, r2, t)
        z, m, s = _vortex(ell, x, y, w)
        gouy = (1 + m) * math.atan(tau)
        envelope = (math.exp(_lg_log_norm(ell)) / w * np.exp(-r2 / (w * w))
                    * np.exp(1j * (curvature - gouy)))
        vortex = z**m
        dvortex = (m / w) * z ** (m - 1) if m > 0 else np.zeros_like(z)
        ddx = envelope * (dvortex + gauss_log_slope * x * vortex)
        ddy = envelope * (1j * s * dvortex + gauss_log_slope * y * vortex)
        return ddx[()], ddy[()]

    raise TypeError(f"unknown mode {mode!r}")


def closed_form_moments(mode, params, t):
    """Exact ``<r^2>``, ``<p^2>``, ``<H>`` and ``<L_z>`` at time ``t``.

    For Laguerre-Gauss packets::

        <x^2 + y^2> = (1 + |ell|) / 2 * w0^2 (1 + t^2 / t0^2)
        <p^2>       = (1 + |ell|) * 2 hbar^2 / w0^2
        <L_z>       = ell * hbar

    Hermite-Gauss packets follow with ``1 + |ell| -> mu + nu + 1`` and carry
    no angular momentum.  In 1D ``r2`` is ``<x^2>`` and ``p2`` is ``<p_x^2>``.
    First moments of position and momentum all vanish.
    """
    t0 = time_scale(params)
    spread = 1.0 + (t / t0) ** 2
    w0, hbar = params.waist, params.hbar
    if isinstance(mode, LaguerreGauss):
        n_eff, lz = 1 + abs(mode.ell), mode.ell * hbar
    elif isinstance(mode, HermiteGauss):
        n_eff, lz = mode.mu + mode.nu + 1, 0.0
    elif isinstance(mode, HermiteGauss1D):
        n_eff, lz = mode.n + 0.5, 0.0
    else:
        raise TypeError(f"unknown mode {mode!r}")
    r2 = 0.5 * n_eff * w0**2 * spread
    p2 = 2.0 * n_eff * hbar**2 / w0**2
    return MomentReport(r2=r2, p2=p2, energy=p2 / (2.0 * params.mass), lz=float(lz), time=t)
