import numpy as np
from dataclasses import dataclass
from functools import cached_property

from tsbvp.expr import evaluate, format_expr, parse, variables
from tsbvp.ops import PExponent
from tsbvp.timescale import ClosedInterval, TimeScaleSpec, build_timescale, parse_timescale, sample


@dataclass(frozen=True)
class ProblemSpec:
    """The boundary value problem: exponent, horizon, eta, f(u), h(t) and time scale.

    The sampled grid always contains eta as a node.

    Args:
        exponent (PExponent): p and its conjugate q.
        T (float): Horizon; equals the largest point of the time scale.
        eta (float): Interior point, 0 < eta < T, member of the time scale.
        f: Parsed expression in ``u``.
        h: Parsed expression in ``t``.
        timescale (TimeScaleSpec): The time scale.
        resolution (float): Step size used to sample intervals.
    """
    exponent: PExponent
    T: float
    eta: float
    f: object
    h: object
    timescale: TimeScaleSpec
    resolution: float

    def __post_init__(self):
        if not 0 < self.eta < self.T:
            raise ValueError(f'eta must satisfy 0 < eta < T, got eta={self.eta!r}, T={self.T!r}.')
        if self.timescale.T != self.T:
            raise ValueError(f'T={self.T!r} differs from the time-scale horizon {self.timescale.T!r}.')
        if not self.timescale.contains(self.eta):
            raise ValueError(f'eta={self.eta!r} is not a point of the time scale {self.timescale}.')
        if not variables(self.f) <= {'u'}:
            raise ValueError(f'f may only depend on u, got "{format_expr(self.f)}".')
        if not variables(self.h) <= {'t'}:
            raise ValueError(f'h may only depend on t, got "{format_expr(self.h)}".')
        if not self.resolution > 0:
            raise ValueError(f'resolution must be positive, got {self.resolution!r}.')

    @property
    def p(self):
        return self.exponent.p

    @cached_property
    def grid(self):
        return sample(self.timescale, self.resolution, extra_points=(self.eta, ))

    @cached_property
    def eta_index(self):
        return self.grid.index_of(self.eta)

    @cached_property
    def h_values(self):
        values = evaluate(self.h, t=self.grid.points)
        values.setflags(write=False)
        return values

    def f_values(self, u):
        """f on the grid, evaluated at max(u, 0)."""
        return evaluate(self.f, u=np.maximum(np.asarray(u, dtype=np.float64), 0.0))

    def describe(self):
        return (f'p={self.p!r}, T={self.T!r}, eta={self.eta!r}, f={format_expr(self.f)}, h={format_expr(self.h)}, '
                f'timescale={self.timescale}, points={len(self.grid)}')


def make_problem(p, T, eta, f, h='0', timescale=None, resolution=0.01):
    """Build a ProblemSpec from plain values.

    Args:
        p (float): Exponent, p > 1.
        T (float): Horizon.
        eta (float): Interior point.
        f (str | expression): f(u).
        h (str | expression): h(t). Default: '0'.
        timescale (TimeScaleSpec | str | None): Time scale or its text
            description. Default: the interval [0, T].
        resolution (float): Step size on intervals. Default: 0.01.
    """
    if timescale is None:
        timescale = TimeScaleSpec((ClosedInterval(0.0, float(T)), ))
    elif isinstance(timescale, str):
        timescale = parse_timescale(timescale)
    f = parse(f) if isinstance(f, str) else f
    h = parse(h) if isinstance(h, str) else h
    return ProblemSpec(PExponent(p), float(T), float(eta), f, h, timescale, float(resolution))


def build_problem(cfg):
    """ProblemSpec of a validated RunConfig."""
    pb, ts = cfg.problem, cfg.timescale
    timescale = build_timescale({'type': ts.kind, 'T': pb.T, 'spec': ts.spec})
    return make_problem(pb.p, pb.T, pb.eta, pb.f, pb.h, timescale, ts.resolution)
