from .calculus import (GridFunction, delta_derivative, delta_integral, nabla_derivative, nabla_integral,
                       sup_norm)
from .sampled import SampledTimeScale, rho, sample, sigma
from .spec import (POINT_GAP, ClosedInterval, IsolatedPoint, TimeScaleSpec, build_timescale, integer, interval,
                   parse_timescale, union)

__all__ = [
    # spec
    'POINT_GAP',
    'ClosedInterval',
    'IsolatedPoint',
    'TimeScaleSpec',
    'parse_timescale',
    'build_timescale',
    'interval',
    'integer',
    'union',
    # sampled
    'SampledTimeScale',
    'sample',
    'sigma',
    'rho',
    # calculus
    'GridFunction',
    'delta_derivative',
    'nabla_derivative',
    'delta_integral',
    'nabla_integral',
    'sup_norm',
]
