import math
import numpy as np
from dataclasses import dataclass

from tsbvp.expr import evaluate, parse
from tsbvp.timescale import GridFunction, delta_derivative, sample


def _signed_power(x, e):
    return math.copysign(math.pow(abs(x), e), x)


def reference_alpha(p, T):
    q = p / (p - 1)
    return math.pow(math.pow(2.0, p - 2), q - 1) * math.pow(T, q - 1) * (T + 1)


def reference_capital_A(a, p, T, h_sup):
    al = reference_alpha(p, T)
    return (a - al * math.pow(h_sup, 1 / (p - 1))) / (al * a)


def reference_capital_B(p, T, eta):
    return math.pow(T - eta, p - 1)


def reference_upper_threshold(a, p, T, h_sup):
    """phi_p(a A(a)) by direct formula."""
    return _signed_power(a * reference_capital_A(a, p, T, h_sup), p - 1)


def reference_lower_threshold(b, p, T, eta):
    """phi_p(b B) by direct formula."""
    return _signed_power(b * reference_capital_B(p, T, eta), p - 1)


@dataclass(frozen=True)
class FiniteDifferenceReport:
    max_error: float
    at: float
    points: int
    resolution: float


def _as_function(u):
    if isinstance(u, str):
        expression = parse(u)
        return lambda t: evaluate(expression, t=t)
    return u


def finite_difference_check(u, du, spec, resolution):
    """Compare the Delta derivative of u with its analytic derivative.

    The error is taken over the right-dense grid points, where the Delta
    derivative is a forward difference; it is O(resolution).

    Args:
        u (str | callable): Function of t (expression text or vectorised callable).
        du (str | callable): Its analytic derivative.
        spec (TimeScaleSpec): Time scale.
        resolution (float): Step size on intervals.

    Returns:
        FiniteDifferenceReport
    """
    grid = sample(spec, resolution)
    u, du = _as_function(u), _as_function(du)
    values = np.broadcast_to(u(grid.points), grid.points.shape)
    derivative = delta_derivative(GridFunction(grid, values))
    mask = grid.right_dense & derivative.genuine
    if not np.any(mask):
        return FiniteDifferenceReport(0.0, float('nan'), 0, float(resolution))
    exact = np.broadcast_to(du(grid.points), grid.points.shape)
    errors = np.where(mask, np.abs(derivative.values - exact), -1.0)
    i = int(np.argmax(errors))
    return FiniteDifferenceReport(float(errors[i]), float(grid.points[i]), int(np.sum(mask)), float(resolution))
