from .fixed_point_operator import (Residual, apply_F, cone_flags, in_cone, inner_integral, inner_integrals,
                                   operator_values, residual, source_values)
from .picard_solver import SolveReport, SolverConfig, multi_start_solve, picard_solve, shell_starts
from .problem import ProblemSpec, build_problem, make_problem

__all__ = [
    'ProblemSpec', 'make_problem', 'build_problem', 'source_values', 'inner_integral', 'inner_integrals',
    'operator_values', 'apply_F', 'residual', 'Residual', 'cone_flags', 'in_cone', 'SolverConfig', 'SolveReport',
    'picard_solve', 'multi_start_solve', 'shell_starts'
]
