import math
import re
from copy import deepcopy
from dataclasses import dataclass

from tsbvp.utils.registry import TIMESCALE_REGISTRY

# minimal gap between distinct points of a time scale (and of its grids)
POINT_GAP = 1e-12

_NUMBER = r'[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?'
_INTERVAL_RE = re.compile(rf'\[({_NUMBER}),({_NUMBER})\]')
_POINT_RE = re.compile(rf'\{{({_NUMBER})\}}')


@dataclass(frozen=True)
class ClosedInterval:
    """Closed interval [lo, hi] of a time scale (lo < hi)."""
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f'Interval bounds must be finite, got [{self.lo}, {self.hi}].')
        if not self.hi - self.lo > 0:
            raise ValueError(f'Interval needs lo < hi, got [{self.lo}, {self.hi}].')

    @property
    def first(self):
        return self.lo

    @property
    def last(self):
        return self.hi

    def __str__(self):
        return f'[{self.lo!r},{self.hi!r}]'


@dataclass(frozen=True)
class IsolatedPoint:
    """Isolated point {x} of a time scale."""
    x: float

    def __post_init__(self):
        if not math.isfinite(self.x):
            raise ValueError(f'Isolated point must be finite, got {self.x}.')

    @property
    def first(self):
        return self.x

    @property
    def last(self):
        return self.x

    def __str__(self):
        return f'{{{self.x!r}}}'


@dataclass(frozen=True)
class TimeScaleSpec:
    """Exact structural description of a time scale.

    A time scale is a finite, strictly increasing union of closed intervals
    and isolated points. Its smallest point is 0 and its largest point is the
    horizon T.

    Args:
        components (tuple[ClosedInterval | IsolatedPoint]): Ordered components.
        horizon (float | None): T. When given it must equal the largest point.
    """
    components: tuple
    horizon: float = None

    def __post_init__(self):
        components = tuple(self.components)
        object.__setattr__(self, 'components', components)
        if len(components) == 0:
            raise ValueError('A time scale needs at least one component.')
        for idx, comp in enumerate(components):
            if not isinstance(comp, (ClosedInterval, IsolatedPoint)):
                raise ValueError(f'Component {idx + 1} has unsupported type {type(comp).__name__}.')
        for idx in range(1, len(components)):
            prev, comp = components[idx - 1], components[idx]
            if not comp.first - prev.last > POINT_GAP:
                raise ValueError(f'Components {idx} ({prev}) and {idx + 1} ({comp}) overlap, touch or are '
                                 'out of order.')
        if components[0].first != 0:
            raise ValueError(f'The smallest point of a time scale must be 0, got {components[0].first!r}.')
        if components[-1].last <= 0:
            raise ValueError('The horizon T must be positive.')
        if self.horizon is None:
            object.__setattr__(self, 'horizon', float(components[-1].last))
        elif self.horizon != components[-1].last:
            raise ValueError(f'Horizon T={self.horizon!r} differs from the largest point '
                             f'{components[-1].last!r} of the time scale.')

    @property
    def T(self):
        return self.horizon

    @property
    def is_discrete(self):
        """True when the time scale has isolated points only."""
        return all(isinstance(c, IsolatedPoint) for c in self.components)

    def contains(self, x, tol=POINT_GAP):
        for comp in self.components:
            if comp.first - tol <= x <= comp.last + tol:
                return True
        return False

    def right_dense(self, x):
        """Whether the member x satisfies sigma(x) = x."""
        return any(isinstance(c, ClosedInterval) and c.lo <= x < c.hi for c in self.components)

    def left_dense(self, x):
        """Whether the member x satisfies rho(x) = x."""
        return any(isinstance(c, ClosedInterval) and c.lo < x <= c.hi for c in self.components)

    def __str__(self):
        return ','.join(str(c) for c in self.components)


def parse_timescale(text):
    """Parse the time-scale text syntax.

    Comma-separated terms, each ``[lo,hi]`` or ``{x}``; whitespace is ignored,
    e.g. ``[0,0.5],{0.75},{1}``.

    Args:
        text (str): Time-scale description.

    Returns:
        TimeScaleSpec: The parsed time scale.
    """
    compact = re.sub(r'\s+', '', text or '')
    if not compact:
        raise ValueError('Empty time-scale description.')

    components = []
    pos = 0
    term = 1
    while pos < len(compact):
        match = _INTERVAL_RE.match(compact, pos) or _POINT_RE.match(compact, pos)
        if match is None:
            raise ValueError(f'Time-scale term {term}: expected "[lo,hi]" or "{{x}}" at "{compact[pos:]}".')
        try:
            if match.re is _INTERVAL_RE:
                components.append(ClosedInterval(float(match.group(1)), float(match.group(2))))
            else:
                components.append(IsolatedPoint(float(match.group(1))))
        except ValueError as error:
            raise ValueError(f'Time-scale term {term}: {error}') from None
        pos = match.end()
        if pos < len(compact):
            if compact[pos] != ',':
                raise ValueError(f'Time-scale term {term}: expected "," after "{match.group(0)}".')
            pos += 1
            if pos == len(compact):
                raise ValueError(f'Time-scale term {term + 1}: missing term after trailing ",".')
        term += 1

    try:
        return TimeScaleSpec(tuple(components))
    except ValueError as error:
        raise ValueError(f'Invalid time scale "{text}": {error}') from None


@TIMESCALE_REGISTRY.register()
def interval(T, spec=None):
    """The continuum [0, T] (or the single interval written in ``spec``)."""
    if spec:
        timescale = parse_timescale(spec)
        if len(timescale.components) != 1 or not isinstance(timescale.components[0], ClosedInterval):
            raise ValueError(f'kind "interval" expects a single interval, got "{spec}".')
    else:
        timescale = TimeScaleSpec((ClosedInterval(0.0, float(T)), ))
    if timescale.T != T:
        raise ValueError(f'Time-scale horizon {timescale.T!r} differs from T={T!r}.')
    return timescale


@TIMESCALE_REGISTRY.register()
def integer(T, spec=None):
    """The integers {0, 1, ..., T}; T must be a positive integer."""
    if float(T) != int(T) or int(T) < 1:
        raise ValueError(f'kind "integer" needs a positive integer T, got {T!r}.')
    timescale = TimeScaleSpec(tuple(IsolatedPoint(float(k)) for k in range(int(T) + 1)))
    if spec and parse_timescale(spec) != timescale:
        raise ValueError(f'spec "{spec}" does not describe the integers 0..{int(T)}.')
    return timescale


@TIMESCALE_REGISTRY.register()
def union(T, spec=None):
    """Arbitrary union of intervals and isolated points written in ``spec``."""
    if not spec:
        raise ValueError('kind "union" needs a "spec" description.')
    timescale = parse_timescale(spec)
    if timescale.T != T:
        raise ValueError(f'Time-scale horizon {timescale.T!r} differs from T={T!r}.')
    return timescale


def build_timescale(opt):
    """Build a time scale from options.

    Args:
        opt (dict): Configuration. It must contain:
            type (str): Time-scale kind: interval | integer | union.
            T (float): Horizon.
        and may contain ``spec`` (str).
    """
    opt = deepcopy(opt)
    kind = opt.pop('type')
    return TIMESCALE_REGISTRY.get(kind)(**opt)
