import numpy as np
from dataclasses import dataclass
from scipy.optimize import minimize_scalar

from tsbvp.expr import evaluate
from tsbvp.ops import conjugate_exponent, phi


def alpha(p, T):
    """alpha = phi_q(2^(p-2)) * phi_q(T) * (T + 1)."""
    q = conjugate_exponent(p)
    if not T > 0:
        raise ValueError(f'T must be positive, got {T!r}.')
    return phi(q, 2.0**(p - 2)) * phi(q, T) * (T + 1)


def capital_A(a, p, T, h_sup):
    """A(a) = (a - alpha * h_sup^(1/(p-1))) / (alpha * a); may be <= 0."""
    if not a > 0:
        raise ValueError(f'a must be positive, got {a!r}.')
    if not h_sup >= 0:
        raise ValueError(f'h_sup must be nonnegative, got {h_sup!r}.')
    al = alpha(p, T)
    return (a - al * h_sup**(1 / (p - 1))) / (al * a)


def capital_B(p, T, eta):
    """B = phi_p(T - eta)."""
    if not 0 < eta < T:
        raise ValueError(f'eta must satisfy 0 < eta < T, got eta={eta!r}, T={T!r}.')
    return phi(p, T - eta)


def h_sup_norm(h, T, samples):
    """max |h(t)| over ``samples`` equispaced points of [0, T]."""
    if samples < 2:
        raise ValueError(f'samples must be at least 2, got {samples}.')
    values = evaluate(h, t=np.linspace(0.0, T, int(samples)))
    return float(np.max(np.abs(values)))


@dataclass(frozen=True)
class ConditionConstants:
    p: float
    T: float
    eta: float
    alpha: float
    B: float
    h_sup: float

    def A(self, a):
        return capital_A(a, self.p, self.T, self.h_sup)


def condition_constants(problem, samples=10001):
    """alpha, B and the sampled sup-norm of h for a problem."""
    return ConditionConstants(
        p=problem.p,
        T=problem.T,
        eta=problem.eta,
        alpha=alpha(problem.p, problem.T),
        B=capital_B(problem.p, problem.T, problem.eta),
        h_sup=h_sup_norm(problem.h, problem.T, samples))


@dataclass(frozen=True)
class CheckReport:
    """One sampled inequality between an extremum of f and a threshold.

    ``lhs`` is the sampled max (condition 'i') or min (condition 'ii') of f on
    [0, level]; ``rhs`` is the threshold. The sampled max is a lower bound of
    the true max and the sampled min an upper bound of the true min.
    """
    condition: str
    level: float
    lhs: float
    rhs: float
    relation: str
    passed: bool
    samples: int
    extremum_at: float
    diagnostic: str = ''
    refined_lhs: float = None

    def __str__(self):
        extremum = 'max' if self.condition == 'i' else 'min'
        verdict = 'PASS' if self.passed else 'FAIL'
        msg = (f'({self.condition}) {extremum} f on [0, {self.level:.10g}] = {self.lhs:.10g} {self.relation} '
               f'{self.rhs:.10g}: {verdict} (at u={self.extremum_at:.6g}, {self.samples} samples)')
        if self.refined_lhs is not None:
            msg += f' [refined {extremum} {self.refined_lhs:.10g}]'
        if self.diagnostic:
            msg += f' [{self.diagnostic}]'
        return msg


@dataclass(frozen=True)
class ConditionResult:
    """Result of a registered condition runner.

    Args:
        condition (str): Runner name.
        reports (tuple[CheckReport]): Every check, ordered by level.
        passed (bool): Overall verdict.
        shells (tuple): Predicted norm shells (lo, hi).
        pairs (tuple): Level pairs of the infinite scan.
        longest_run (tuple): (first k, length) of the longest run of passing pairs.
    """
    condition: str
    reports: tuple
    passed: bool
    shells: tuple = ()
    pairs: tuple = ()
    longest_run: tuple = None


def _sample_f(f, level, samples):
    if samples < 2:
        raise ValueError(f'samples must be at least 2, got {samples}.')
    grid = np.linspace(0.0, level, int(samples))
    return grid, evaluate(f, u=grid)


def _refine(f, grid, i, sign):
    # bounded search between the neighbours of the sampled extremum
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    result = minimize_scalar(lambda x: sign * evaluate(f, u=x), bounds=(lo, hi), method='bounded')
    return sign * float(result.fun)


def check_upper_condition(f, level, constants, samples=10001, refine=False):
    """Condition (i): max of f on [0, level] <= phi_p(level * A(level)).

    When A(level) <= 0 the condition cannot hold and the report fails with a
    diagnostic instead of raising.
    """
    grid, values = _sample_f(f, level, samples)
    i = int(np.argmax(values))
    capital = constants.A(level)
    rhs = phi(constants.p, level * capital)
    lhs = float(values[i])
    diagnostic = ''
    if capital <= 0:
        diagnostic = f'h too large for this a (A = {capital:.6g})'
    refined = max(lhs, _refine(f, grid, i, -1.0)) if refine else None
    return CheckReport('i', float(level), lhs, float(rhs), '<=', bool(capital > 0 and lhs <= rhs), int(samples),
                       float(grid[i]), diagnostic, refined)


def check_lower_condition(f, level, constants, samples=10001, refine=False):
    """Condition (ii): min of f on [0, level] >= phi_p(level * B)."""
    grid, values = _sample_f(f, level, samples)
    i = int(np.argmin(values))
    rhs = phi(constants.p, level * constants.B)
    lhs = float(values[i])
    refined = min(lhs, _refine(f, grid, i, 1.0)) if refine else None
    return CheckReport('ii', float(level), lhs, float(rhs), '>=', bool(lhs >= rhs), int(samples), float(grid[i]),
                       '', refined)
