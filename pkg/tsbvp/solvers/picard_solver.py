import logging
import numpy as np
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from tqdm import tqdm

from basicsr.utils import get_root_logger
from tsbvp.timescale import GridFunction, sup_norm
from .fixed_point_operator import cone_flags, operator_values, residual, source_values


@dataclass(frozen=True)
class SolverConfig:
    """Options of the damped Picard iteration.

    Args:
        tolerance (float): Stop when the sup-norm of an update is <= tolerance.
        max_iterations (int): Iteration budget.
        damping (float): lambda in u <- (1 - lambda) u + lambda F(u), 0 < lambda <= 1.
        initial_guess (float | array_like | GridFunction): Start of the iteration.
        print_freq (int): Log one iteration record every print_freq
            iterations; 0 disables it.
        workers (int): Threads used by multi-start solving.
    """
    tolerance: float = 1e-10
    max_iterations: int = 500
    damping: float = 1.0
    initial_guess: object = 0.0
    print_freq: int = 100
    workers: int = 1

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f'tolerance must be positive, got {self.tolerance!r}.')
        if not 0 < self.damping <= 1:
            raise ValueError(f'damping must satisfy 0 < damping <= 1, got {self.damping!r}.')
        if self.max_iterations < 1:
            raise ValueError(f'max_iterations must be at least 1, got {self.max_iterations}.')
        if self.workers < 1:
            raise ValueError(f'workers must be at least 1, got {self.workers}.')


@dataclass(frozen=True)
class SolveReport:
    solution: GridFunction
    converged: bool
    iterations: int
    final_step_norm: float
    residual_interior_max: float
    residual_boundary: tuple
    norm: float
    in_cone: bool
    nonnegative: bool
    concave: bool
    trace: tuple = ()
    diagnostic: str = ''
    warnings: tuple = ()
    shell: tuple = None

    def summary(self):
        status = 'converged' if self.converged else 'NOT converged'
        return (f'{status} after {self.iterations} iterations: |u| = {self.norm:.10g}, '
                f'step = {self.final_step_norm:.3e}, interior residual = {self.residual_interior_max:.3e}, '
                f'in cone = {self.in_cone}')


def _initial_values(problem, guess):
    grid = problem.grid
    if isinstance(guess, GridFunction):
        values = guess.values
    else:
        values = np.broadcast_to(np.asarray(guess, dtype=np.float64), grid.points.shape)
    values = np.array(values, dtype=np.float64)
    if values.shape != grid.points.shape or not np.all(np.isfinite(values)):
        raise ValueError(f'Initial guess must be {len(grid)} finite values.')
    return values


def _positivity_warnings(problem, values):
    notes = []
    g = source_values(problem, values)
    if np.min(g) <= 0:
        i = int(np.argmin(g))
        notes.append(f'f(u) + h is not positive along the solution: min {g[i]:.6g} at t={problem.grid.points[i]!r}')
    h = problem.h_values
    if np.min(h) < 0:
        i = int(np.argmin(h))
        notes.append(f'h is negative on the grid: min {h[i]:.6g} at t={problem.grid.points[i]!r}')
    return tuple(notes)


def picard_solve(problem, config, name='picard'):
    """Damped Picard iteration for the fixed points of F.

    Iterates u <- (1 - lambda) u + lambda F(u) until the sup-norm of the update
    drops to the tolerance. ``iterations`` is the number of updates made
    before that happened, so a constant F converges in 1 iteration. A
    non-finite iterate stops the iteration and the last finite iterate is
    returned. Residuals are only evaluated for converged runs.

    Args:
        problem (ProblemSpec): The problem.
        config (SolverConfig): Iteration options.
        name (str): Label used in log messages.

    Returns:
        SolveReport: Never raises on non-convergence.
    """
    logger = get_root_logger()
    lam = config.damping
    u = _initial_values(problem, config.initial_guess)

    trace = []
    converged = False
    diagnostic = ''
    step = float('inf')
    iterations = 0
    start_time = time.time()
    for current_iter in range(config.max_iterations):
        image = operator_values(problem, u)
        u_next = image if lam == 1 else (1 - lam) * u + lam * image
        if not np.all(np.isfinite(u_next)):
            diagnostic = f'non-finite iterate at iteration {current_iter + 1}; kept the last finite iterate'
            iterations = current_iter
            break
        step = float(np.max(np.abs(u_next - u)))
        trace.append(step)
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f'[{name}] iter {current_iter}: step {step:.6e}')
        if config.print_freq and (current_iter + 1) % config.print_freq == 0:
            logger.info(f'[{name}][iter:{current_iter + 1:6,d}/{config.max_iterations:,d}] '
                        f'[time: {time.time() - start_time:.3f}s] step: {step:.4e} norm: {np.max(np.abs(u_next)):.4e}')
        u = u_next
        if step <= config.tolerance:
            converged = True
            iterations = current_iter
            break
    else:
        iterations = config.max_iterations
        diagnostic = f'no convergence within {config.max_iterations} iterations (last step {step:.3e})'

    solution = GridFunction(problem.grid, u)
    nonnegative, concave = cone_flags(solution)
    res_max, res_boundary, notes = float('nan'), (float('nan'), float('nan')), ()
    if converged:
        res = residual(problem, solution)
        res_max = float(np.max(np.abs(res.interior.values)))
        res_boundary = res.boundary
        notes = _positivity_warnings(problem, u)
        for note in notes:
            logger.warning(f'[{name}] {note}')
    else:
        logger.warning(f'[{name}] {diagnostic}')

    report = SolveReport(
        solution=solution,
        converged=converged,
        iterations=iterations,
        final_step_norm=step,
        residual_interior_max=res_max,
        residual_boundary=res_boundary,
        norm=sup_norm(solution),
        in_cone=nonnegative and concave,
        nonnegative=nonnegative,
        concave=concave,
        trace=tuple(trace),
        diagnostic=diagnostic,
        warnings=notes)
    logger.info(f'[{name}] {report.summary()} ({time.time() - start_time:.3f}s)')
    return report


def _check_shells(shells):
    shells = [(float(lo), float(hi)) for lo, hi in shells]
    for lo, hi in shells:
        if not 0 <= lo < hi:
            raise ValueError(f'Shell ({lo!r}, {hi!r}) must satisfy 0 <= lo < hi.')
    for (_, hi), (lo, _) in zip(shells, shells[1:]):
        if lo < hi:
            raise ValueError(f'Shells must be ordered and disjoint, got {shells}.')
    return shells


def shell_starts(shells):
    """Constant initial guesses: the quartile points of every shell, or 1 without shells."""
    if not shells:
        return [1.0]
    return [lo + (hi - lo) * fraction for lo, hi in shells for fraction in (0.25, 0.5, 0.75)]


def _find_shell(shells, norm):
    for lo, hi in shells:
        if lo < norm < hi:
            return (lo, hi)
    return None


def multi_start_solve(problem, shells, config, progress=False):
    """Picard iteration from several constant starts, one group per norm shell.

    Converged solutions closer than 10 * tolerance in sup-norm are merged.
    The result is sorted by norm and does not depend on the thread schedule.

    Args:
        problem (ProblemSpec): The problem.
        shells (Sequence[tuple[float, float]]): Ordered, disjoint norm
            intervals (lo, hi). Empty means a single start at u = 1.
        config (SolverConfig): Iteration options; ``initial_guess`` is
            replaced by every start and ``workers`` sets the thread count.
        progress (bool): Show a tqdm progress bar.

    Returns:
        list[SolveReport]: Distinct converged solutions, annotated with the
            shell containing their norm (or None).
    """
    logger = get_root_logger()
    shells = _check_shells(shells)
    starts = shell_starts(shells)
    configs = [replace(config, initial_guess=start) for start in starts]
    names = [f'start {start:.6g}' for start in starts]

    pbar = tqdm(total=len(starts), unit='start', disable=not progress)

    def run(args):
        report = picard_solve(problem, *args)
        pbar.update(1)
        return report

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            reports = list(executor.map(run, zip(configs, names)))
    else:
        reports = [run(args) for args in zip(configs, names)]
    pbar.close()

    distinct = []
    for report in sorted((r for r in reports if r.converged), key=lambda r: r.norm):
        if all(sup_norm(report.solution.values - kept.solution.values) > 10 * config.tolerance for kept in distinct):
            distinct.append(report)
    distinct = [replace(r, shell=_find_shell(shells, r.norm)) for r in distinct]
    logger.info(f'{len(distinct)} distinct solution(s) from {len(starts)} start(s): '
                f'norms {[float(f"{r.norm:.10g}") for r in distinct]}')
    return distinct
