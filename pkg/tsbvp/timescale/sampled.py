import math
import numpy as np

from .spec import POINT_GAP, ClosedInterval, TimeScaleSpec


class SampledTimeScale():
    """Finite grid of a time scale with per-point density flags.

    The flags come from the time-scale structure, never from the grid
    spacing: a sampled interval stays dense however coarse the grid is.

    Args:
        spec (TimeScaleSpec): The sampled time scale.
        points (ndarray): Strictly increasing grid, t_0 = 0, t_N = T.
    """

    def __init__(self, spec, points):
        points = np.array(points, dtype=np.float64)
        if points.ndim != 1 or points.size == 0:
            raise ValueError('Grid points must be a nonempty 1-d sequence.')
        gaps = np.diff(points)
        if np.any(gaps <= POINT_GAP):
            i = int(np.argmax(gaps <= POINT_GAP))
            raise ValueError(f'Grid points {points[i]!r} and {points[i + 1]!r} are not separated '
                             f'by more than {POINT_GAP}.')
        if points[0] != 0 or points[-1] != spec.T:
            raise ValueError(f'Grid must run from 0 to T={spec.T!r}, got [{points[0]!r}, {points[-1]!r}].')

        right_dense = np.zeros(points.size, dtype=bool)
        left_dense = np.zeros(points.size, dtype=bool)
        for comp in spec.components:
            if isinstance(comp, ClosedInterval):
                right_dense |= (points >= comp.lo) & (points < comp.hi)
                left_dense |= (points > comp.lo) & (points <= comp.hi)

        self.spec = spec
        self.points = points
        self.right_dense = right_dense
        self.left_dense = left_dense
        for array in (self.points, self.right_dense, self.left_dense):
            array.setflags(write=False)

    @property
    def N(self):
        """Index of the last grid point."""
        return self.points.size - 1

    @property
    def T(self):
        return self.spec.T

    @property
    def mu(self):
        """Forward graininess t_{i+1} - t_i (0 at t_N): the Delta-quadrature weights."""
        return np.append(np.diff(self.points), 0.0)

    @property
    def nu(self):
        """Backward graininess t_i - t_{i-1} (0 at t_0): the nabla-quadrature weights."""
        return np.insert(np.diff(self.points), 0, 0.0)

    @property
    def right_scattered(self):
        return ~self.right_dense

    @property
    def left_scattered(self):
        return ~self.left_dense

    def index_of(self, x, tol=POINT_GAP):
        """Grid index of the point x (within ``tol``).

        Raises:
            ValueError: x is not a grid point.
        """
        i = int(np.searchsorted(self.points, x))
        for j in (i - 1, i):
            if 0 <= j <= self.N and abs(self.points[j] - x) <= tol:
                return j
        raise ValueError(f'{x!r} is not a point of the grid.')

    def __len__(self):
        return self.points.size

    def __repr__(self):
        return f'{self.__class__.__name__}(spec={self.spec}, points={self.points.size})'


def _check_index(ts, i):
    if not 0 <= i <= ts.N:
        raise IndexError(f'Point index {i} out of range [0, {ts.N}].')


def sigma(ts, i):
    """Forward jump of the i-th grid point.

    Right-dense points map to themselves. A right-scattered point is the
    last point of a component, and the next component starts at the next
    grid point. sigma(T) = T.
    """
    _check_index(ts, i)
    if ts.right_dense[i] or i == ts.N:
        return float(ts.points[i])
    return float(ts.points[i + 1])


def rho(ts, i):
    """Backward jump of the i-th grid point; rho(0) = 0."""
    _check_index(ts, i)
    if ts.left_dense[i] or i == 0:
        return float(ts.points[i])
    return float(ts.points[i - 1])


def sample(spec, resolution, extra_points=()):
    """Sample a time scale to a finite grid.

    Each interval [lo, hi] is split into ceil((hi - lo) / resolution) equal
    steps; isolated points and interval endpoints are kept exactly.

    Args:
        spec (TimeScaleSpec): Time scale to sample.
        resolution (float): Step size on intervals. Must be positive.
        extra_points (Sequence[float]): Members of the time scale that must
            be grid points (e.g. eta). A point within 1e-12 of an existing
            node reuses that node.

    Returns:
        SampledTimeScale: The grid.
    """
    if not isinstance(spec, TimeScaleSpec):
        raise ValueError(f'Expected a TimeScaleSpec, got {type(spec).__name__}.')
    if not (math.isfinite(resolution) and resolution > 0):
        raise ValueError(f'resolution must be positive, got {resolution!r}.')

    pieces = []
    for comp in spec.components:
        if isinstance(comp, ClosedInterval):
            # tiny slack so that an exact multiple does not round up one step
            steps = max(1, math.ceil((comp.hi - comp.lo) / resolution - 1e-9))
            pieces.append(np.linspace(comp.lo, comp.hi, steps + 1))
        else:
            pieces.append(np.array([comp.x]))
    points = np.concatenate(pieces)

    for x in extra_points:
        if not spec.contains(x):
            raise ValueError(f'{x!r} is not a point of the time scale {spec}.')
        if np.min(np.abs(points - x)) <= POINT_GAP:
            continue
        points = np.insert(points, int(np.searchsorted(points, x)), x)

    return SampledTimeScale(spec, points)
