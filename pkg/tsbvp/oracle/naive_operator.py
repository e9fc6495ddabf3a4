import math

from tsbvp.expr import evaluate
from tsbvp.timescale import GridFunction


def _phi_conjugate(q, s):
    # |s|^(q-2) s written as sign(s) |s|^(q-1)
    if s == 0:
        return 0.0
    return math.copysign(abs(s)**(q - 1), s)


def naive_apply_F(problem, u):
    """Brute-force F(u): every inner integral recomputed from scratch.

    A literal double loop over plain Python floats, with no cumulative sums.
    O(N^2); meant for grids of a few dozen points.

    Args:
        problem (ProblemSpec): The problem.
        u (GridFunction): Input on the problem grid.

    Returns:
        GridFunction: F(u).
    """
    t = [float(x) for x in problem.grid.points]
    values = [float(x) for x in u.values]
    n = len(t) - 1
    q = problem.p / (problem.p - 1)

    g = []
    for i in range(n + 1):
        g.append(evaluate(problem.f, u=max(values[i], 0.0)) + evaluate(problem.h, t=t[i]))

    def inner(i):
        total = 0.0
        for j in range(i + 1, n + 1):
            total += g[j] * (t[j] - t[j - 1])
        return total

    eta_index = None
    for i in range(n + 1):
        if abs(t[i] - problem.eta) <= 1e-12:
            eta_index = i
    if eta_index is None:
        raise ValueError(f'eta={problem.eta!r} is not a grid point.')

    start = _phi_conjugate(q, inner(eta_index))
    out = []
    for k in range(n + 1):
        total = start
        for i in range(k):
            total += _phi_conjugate(q, inner(i)) * (t[i + 1] - t[i])
        out.append(total)
    return GridFunction(problem.grid, out)
