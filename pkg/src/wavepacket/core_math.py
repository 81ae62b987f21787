"""Special functions and quadrature shared by the rest of the package."""
import math

import numpy as np

#: Highest Hermite order (and |ell|) accepted anywhere in the package.
MAX_ORDER = 64


def _check_order(n):
    if int(n) != n or n < 0:
        raise ValueError(f"mode order must be a non-negative integer, got {n!r}")
    if n > MAX_ORDER:
        raise ValueError(f"mode order {n} exceeds supported cap {MAX_ORDER}")
    return int(n)


def hermite_poly(n, x):
    """Physicists' Hermite polynomial H_n(x).

    Evaluated with the three-term recurrence
    ``H_{k+1} = 2x H_k - 2k H_{k-1}``; works on scalars and arrays.

    Parameters
    ----------
    n : int
        Order, ``0 <= n <= MAX_ORDER``.
    x : float or array_like

    Returns
    -------
    float or ndarray
    """
    n = _check_order(n)
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev[()]
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h[()]


def hermite_poly_derivative(n, x):
    """Derivative H'_n(x) = 2n H_{n-1}(x)."""
    n = _check_order(n)
    if n == 0:
        return np.zeros_like(np.asarray(x, dtype=float))[()]
    return 2.0 * n * hermite_poly(n - 1, x)


def log_factorial(n):
    """ln(n!), accumulated exactly up to 20 and through lgamma beyond."""
    if int(n) != n or n < 0:
        raise ValueError(f"factorial argument must be a non-negative integer, got {n!r}")
    n = int(n)
    if n <= 20:
        return math.log(math.factorial(n))
    return math.lgamma(n + 1.0)


def trapezoid_2d(f):
    """Integrate a :class:`~wavepacket.grids.RealGridFunction` over its window.

    Samples sit at cell centres of a uniform grid, so the composite
    trapezoid rule for the periodic extension reduces to ``sum * dx * dy``.
    For integrands that vanish at the window edge this is spectrally
    accurate.
    """
    grid = f.grid
    return float(np.sum(f.values) * grid.dx * grid.dy)
