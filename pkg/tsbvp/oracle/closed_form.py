import numpy as np
from dataclasses import dataclass

from tsbvp.solvers.problem import make_problem


def closed_form_solution(c, T, eta):
    """Exact solution for p = 2, f = c, h = 0 on [0, T].

    u(t) = c (T - eta) + c (T t - t^2 / 2); it satisfies u'(T) = 0 and
    u(0) = int_eta^T c dr.

    Returns:
        callable: Vectorised t -> u(t).
    """
    if not c > 0:
        raise ValueError(f'c must be positive, got {c!r}.')
    if not 0 < eta < T:
        raise ValueError(f'eta must satisfy 0 < eta < T, got eta={eta!r}, T={T!r}.')

    def solution(t):
        t = np.asarray(t, dtype=np.float64)
        return c * (T - eta) + c * (T * t - t * t / 2)

    return solution


def closed_form_derivative(c, T):
    """u'(t) = c (T - t) of the closed-form solution."""
    return lambda t: c * (T - np.asarray(t, dtype=np.float64))


@dataclass(frozen=True)
class ClosedFormCase:
    """A problem with a known exact solution and the error expected on its grid.

    On the sampled interval the left-endpoint rule overshoots the exact
    solution by c * t * resolution / 2, so ``tolerance`` = c * T * resolution
    leaves a factor 2.
    """
    c: float
    T: float
    eta: float
    resolution: float
    problem: object
    solution: object

    @property
    def tolerance(self):
        return self.c * self.T * self.resolution

    def exact_values(self):
        return self.solution(self.problem.grid.points)


def closed_form_case(c=1.0, T=1.0, eta=0.5, resolution=0.001):
    problem = make_problem(2, T, eta, repr(float(c)), '0', None, resolution)
    return ClosedFormCase(float(c), float(T), float(eta), float(resolution), problem, closed_form_solution(c, T, eta))
