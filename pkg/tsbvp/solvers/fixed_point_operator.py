import numpy as np
from collections import namedtuple

from tsbvp.ops import phi, phi_inverse
from tsbvp.timescale import GridFunction, delta_derivative, nabla_integral

Residual = namedtuple('Residual', ['interior', 'boundary'])


def _values_on_grid(problem, u):
    if isinstance(u, GridFunction):
        if u.grid is not problem.grid and not np.array_equal(u.grid.points, problem.grid.points):
            raise ValueError('Grid function does not live on the problem grid.')
        return u.values
    values = np.asarray(u, dtype=np.float64)
    if values.shape != problem.grid.points.shape:
        raise ValueError(f'Expected {len(problem.grid)} values, got shape {values.shape}.')
    return values


def source_values(problem, u):
    """f(u(t)) + h(t) on the grid (f read at max(u, 0))."""
    return problem.f_values(_values_on_grid(problem, u)) + problem.h_values


def inner_integral(problem, u, s):
    """Nabla integral of f(u(r)) + h(r) over (s, T]; s must be a grid point."""
    g = GridFunction(problem.grid, source_values(problem, u))
    return nabla_integral(g, s, problem.T)


def inner_integrals(problem, u):
    """All inner integrals at once: I_i = sum_{j > i} g_j * nu_j, I_N = 0."""
    terms = source_values(problem, u) * problem.grid.nu
    suffix = np.cumsum(terms[::-1])[::-1]
    return np.append(suffix[1:], 0.0)


def operator_values(problem, u):
    """Values of F(u) as a raw array, possibly non-finite."""
    with np.errstate(over='ignore', invalid='ignore'):
        inner = inner_integrals(problem, u)
        slope = phi_inverse(problem.p, inner)
        start = phi_inverse(problem.p, inner[problem.eta_index])
        return start + np.insert(np.cumsum(slope[:-1] * problem.grid.mu[:-1]), 0, 0.0)


def apply_F(problem, u):
    """The fixed-point operator.

    F(u)(t) = phi_q(int_eta^T g nabla r) + int_0^t phi_q(int_s^T g nabla r) delta s
    with g = f(u) + h, computed from one backward cumulative sum for the
    inner integrals and one forward cumulative sum for the outer one.

    Args:
        problem (ProblemSpec): The problem.
        u (GridFunction | array_like): Input on the problem grid.

    Returns:
        GridFunction: F(u). Raises ValueError when F(u) overflows.
    """
    return GridFunction(problem.grid, operator_values(problem, u))


def residual(problem, u):
    """Residual of the dynamic equation and of the boundary conditions.

    Interior: r_i = -(phi_p(u^D_i) - phi_p(u^D_{i-1})) / nu_i - g_i at the points
    1..N-1, where both Delta derivatives are genuine; the entries at 0 and N
    are 0 and flagged as extended.

    Boundary: (phi_p(u^D_{N-1}) - g_N * nu_N, u(0) - phi_q(int_eta^T g nabla r)).
    The first entry is the nabla step of the equation at T written in flux
    space and vanishes exactly when u^D(T) = 0. It is not mapped back
    through phi_q.

    Returns:
        Residual: (interior GridFunction, boundary pair of floats).
    """
    values = _values_on_grid(problem, u)
    grid = problem.grid
    if len(grid) < 2:
        raise ValueError('The residual needs at least 2 grid points.')
    u = GridFunction(grid, values)
    g = source_values(problem, values)
    slope = delta_derivative(u).values[:-1]
    flux = phi(problem.p, slope)

    interior = np.zeros(len(grid))
    interior[1:-1] = -(flux[1:] - flux[:-1]) / grid.nu[1:-1] - g[1:-1]

    flux_at_T = flux[-1] - g[-1] * grid.nu[-1]
    inner_eta = inner_integrals(problem, values)[problem.eta_index]
    start_gap = values[0] - phi_inverse(problem.p, inner_eta)
    return Residual(GridFunction(grid, interior, extended={0, grid.N}), (float(flux_at_T), float(start_gap)))


def cone_flags(u):
    """(nonnegative, concave) flags of a grid function.

    nonnegative: u >= -1e-12 everywhere. concave: the genuine Delta
    derivatives are nonincreasing within 1e-9 * (1 + max |u^D|).
    """
    values = u.values
    nonnegative = bool(np.all(values >= -1e-12))
    if len(u) < 3:
        return nonnegative, True
    slope = delta_derivative(u).values[:-1]
    slack = 1e-9 * (1 + np.max(np.abs(slope)))
    concave = bool(np.all(np.diff(slope) <= slack))
    return nonnegative, concave


def in_cone(u):
    """Whether u is nonnegative with nonincreasing Delta derivative."""
    if len(u) < 3:
        raise ValueError(f'Cone membership needs at least 3 grid points, got {len(u)}.')
    nonnegative, concave = cone_flags(u)
    return nonnegative and concave
