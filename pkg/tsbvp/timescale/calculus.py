import numpy as np

from .sampled import SampledTimeScale


class GridFunction():
    """Real values aligned with a sampled time scale.

    Args:
        grid (SampledTimeScale): The grid.
        values (array_like): values[i] = u(t_i). Must be finite.
        extended (Iterable[int]): Indices holding one-sided extensions
            rather than genuine values (derivative endpoints).
    """

    def __init__(self, grid, values, extended=()):
        if not isinstance(grid, SampledTimeScale):
            raise ValueError(f'Expected a SampledTimeScale, got {type(grid).__name__}.')
        values = np.array(values, dtype=np.float64).reshape(-1)
        if values.size != len(grid):
            raise ValueError(f'Got {values.size} values for a grid of {len(grid)} points.')
        if not np.all(np.isfinite(values)):
            i = int(np.argmax(~np.isfinite(values)))
            raise ValueError(f'Grid function value at t={grid.points[i]!r} is not finite: {values[i]!r}.')
        values.setflags(write=False)
        self.grid = grid
        self.values = values
        self.extended = frozenset(int(i) for i in extended)

    @classmethod
    def from_callable(cls, grid, func):
        """Evaluate a vectorised callable on the grid points."""
        return cls(grid, np.broadcast_to(func(grid.points), grid.points.shape))

    @property
    def points(self):
        return self.grid.points

    @property
    def genuine(self):
        """Boolean mask of the non-extended entries."""
        mask = np.ones(len(self.grid), dtype=bool)
        mask[list(self.extended)] = False
        return mask

    def __len__(self):
        return self.values.size

    def __repr__(self):
        return f'{self.__class__.__name__}(points={self.values.size}, sup_norm={sup_norm(self):.6g})'


def _require_two_points(u):
    if len(u.grid) < 2:
        raise ValueError('Derivatives need a grid with at least 2 points.')


def delta_derivative(u):
    """Delta derivative by forward differences.

    Exact at right-scattered points (sigma(t_i) = t_{i+1}), first order at
    right-dense points. The value at t_N copies t_{N-1} and is flagged as
    extended.
    """
    _require_two_points(u)
    d = np.diff(u.values) / np.diff(u.points)
    return GridFunction(u.grid, np.append(d, d[-1]), extended={u.grid.N})


def nabla_derivative(u):
    """Nabla derivative by backward differences; t_0 copies t_1 and is flagged."""
    _require_two_points(u)
    d = np.diff(u.values) / np.diff(u.points)
    return GridFunction(u.grid, np.insert(d, 0, d[0]), extended={0})


def _index_range(u, a, b):
    ia = u.grid.index_of(a)
    ib = u.grid.index_of(b)
    if ia > ib:
        raise ValueError(f'Integral bounds out of order: a={a!r} > b={b!r}.')
    return ia, ib


def _sequential_sum(terms):
    # cumsum adds strictly left to right
    return float(np.cumsum(terms)[-1]) if terms.size else 0.0


def delta_integral(u, a, b):
    """Delta integral over [a, b): sum of u(t_i) * (t_{i+1} - t_i).

    Args:
        u (GridFunction): Integrand.
        a (float): Lower bound, a grid point.
        b (float): Upper bound, a grid point with a <= b.

    Returns:
        float: The left-endpoint sum; 0 when a == b.
    """
    ia, ib = _index_range(u, a, b)
    return _sequential_sum(u.values[ia:ib] * u.grid.mu[ia:ib])


def nabla_integral(u, a, b):
    """Nabla integral over (a, b]: sum of u(t_i) * (t_i - t_{i-1})."""
    ia, ib = _index_range(u, a, b)
    return _sequential_sum(u.values[ia + 1:ib + 1] * u.grid.nu[ia + 1:ib + 1])


def sup_norm(u):
    """Maximum norm max_i |u(t_i)|."""
    values = u.values if isinstance(u, GridFunction) else np.asarray(u, dtype=np.float64)
    if values.size == 0:
        raise ValueError('sup_norm of an empty grid function.')
    return float(np.max(np.abs(values)))
