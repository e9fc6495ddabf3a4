import argparse
import logging
import numpy as np
import sys

from basicsr.utils import get_root_logger
from basicsr.utils.options import dict2str
from tsbvp.conditions import run_condition
from tsbvp.expr import ExprDomainError, evaluate, parse
from tsbvp.expr import parser as expr_parser
from tsbvp.solvers import SolverConfig, build_problem, multi_start_solve, picard_solve, residual
from tsbvp.timescale import GridFunction, delta_derivative, rho, sigma
from tsbvp.utils import COMMAND_REGISTRY, atomic_write_text, csv_text, format_float
from tsbvp.utils.options import ConfigError, load_config, print_config

EXIT_OK = 0
EXIT_NOT_CONVERGED = 1
EXIT_CONFIG_ERROR = 2
EXIT_CHECK_FAILED = 3

# command-line name -> registered function
COMMANDS = {
    'solve': 'solve_command',
    'residual': 'residual_command',
    'check': 'check_command',
    'scan-multiplicity': 'scan_multiplicity_command',
    'scan-infinite': 'scan_infinite_command',
    'sample-timescale': 'sample_timescale_command',
    'print-config': 'print_config_command',
}


def build_solver_config(cfg, problem):
    """SolverConfig of a RunConfig; ``init`` is evaluated on the problem grid."""
    sv = cfg.solver
    guess = evaluate(parse(sv.init), t=problem.grid.points)
    return SolverConfig(
        tolerance=sv.tol,
        max_iterations=sv.max_iter,
        damping=sv.damping,
        initial_guess=guess,
        print_freq=sv.print_freq,
        workers=sv.workers)


def _emit_csv(args, header, columns):
    text = csv_text(header, columns)
    if args.output:
        atomic_write_text(args.output, text)
    else:
        sys.stdout.write(text)


def _emit_report(args, lines):
    logger = get_root_logger()
    for line in lines:
        logger.info(line)
    if args.report:
        atomic_write_text(args.report, '\n'.join(lines) + '\n')


def _check_lines(reports):
    lines = []
    for report in reports:
        lines.append(f'{report.condition}[{report.level!r}]: {report}')
    lines.append(' '.join('PASS' if r.passed else 'FAIL' for r in reports))
    return lines


def _check_columns(reports):
    return [[r.condition for r in reports], [r.level for r in reports], [r.lhs for r in reports],
            [r.rhs for r in reports], [r.passed for r in reports]]


def _verdict(args, passed):
    return EXIT_CHECK_FAILED if args.strict and not passed else EXIT_OK


def _profile_columns(problem, values, interior):
    u = GridFunction(problem.grid, values)
    return [problem.grid.points, u.values, delta_derivative(u).values, interior]


@COMMAND_REGISTRY.register()
def solve_command(cfg, args):
    problem = build_problem(cfg)
    get_root_logger().info(f'Problem: {problem.describe()}')
    report = picard_solve(problem, build_solver_config(cfg, problem), name='solve')
    if report.converged:
        interior = residual(problem, report.solution).interior.values
    else:
        interior = np.full(len(problem.grid), np.nan)
    _emit_csv(args, ['t', 'u', 'u_delta', 'residual_interior'],
              _profile_columns(problem, report.solution.values, interior))
    extended = sorted(delta_derivative(report.solution).extended)
    _emit_report(args, [
        'command: solve',
        f'converged: {str(report.converged).lower()}',
        f'iterations: {report.iterations}',
        f'final_step_norm: {report.final_step_norm!r}',
        f'norm: {report.norm!r}',
        f'residual_interior_max: {report.residual_interior_max!r}',
        f'residual_boundary_flux_T: {report.residual_boundary[0]!r}',
        f'residual_boundary_start: {report.residual_boundary[1]!r}',
        f'nonnegative: {str(report.nonnegative).lower()}',
        f'concave: {str(report.concave).lower()}',
        f'in_cone: {str(report.in_cone).lower()}',
        'extended_points: ' + ' '.join(format_float(problem.grid.points[i]) for i in extended),
        f'diagnostic: {report.diagnostic}',
    ] + [f'warning: {w}' for w in report.warnings])
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


@COMMAND_REGISTRY.register()
def residual_command(cfg, args):
    problem = build_problem(cfg)
    values = evaluate(parse(cfg.solver.init), t=problem.grid.points)
    res = residual(problem, values)
    _emit_csv(args, ['t', 'u', 'u_delta', 'residual_interior'],
              _profile_columns(problem, values, res.interior.values))
    _emit_report(args, [
        'command: residual',
        f'residual_interior_max: {float(np.max(np.abs(res.interior.values)))!r}',
        f'residual_boundary_flux_T: {res.boundary[0]!r}',
        f'residual_boundary_start: {res.boundary[1]!r}',
    ])
    return EXIT_OK


@COMMAND_REGISTRY.register()
def check_command(cfg, args):
    ck = cfg.check
    if ck.a is None or ck.b is None:
        raise ConfigError('the check command needs both "a" and "b" in [check]', key='a' if ck.a is None else 'b')
    problem = build_problem(cfg)
    result = run_condition(problem, {'type': 'existence', 'a': ck.a, 'b': ck.b, 'samples': ck.samples,
                                     'refine': ck.refine})
    _emit_csv(args, ['condition', 'level', 'lhs', 'rhs', 'passed'], _check_columns(result.reports))
    _emit_report(args, ['command: check'] + _check_lines(result.reports))
    return _verdict(args, result.passed)


@COMMAND_REGISTRY.register()
def scan_multiplicity_command(cfg, args):
    ck = cfg.check
    if ck.levels is None:
        raise ConfigError('the scan-multiplicity command needs "levels" in [check]', key='levels')
    problem = build_problem(cfg)
    result = run_condition(problem, {'type': 'multiplicity', 'levels': ck.levels, 'samples': ck.samples,
                                     'refine': ck.refine})
    lines = ['command: scan-multiplicity'] + _check_lines(result.reports)
    if result.passed:
        lines.append(f'shells: {" ".join(f"({lo!r}, {hi!r})" for lo, hi in result.shells)}')
        solutions = multi_start_solve(problem, result.shells, build_solver_config(cfg, problem), progress=args.verbose)
        lines.append(f'solutions: {len(solutions)}')
        for idx, report in enumerate(solutions, start=1):
            shell = 'none' if report.shell is None else f'({report.shell[0]!r}, {report.shell[1]!r})'
            lines.append(f'solution {idx}: norm {report.norm!r}, shell {shell}, '
                         f'residual_interior_max {report.residual_interior_max!r}')
    _emit_csv(args, ['condition', 'level', 'lhs', 'rhs', 'passed'], _check_columns(result.reports))
    _emit_report(args, lines)
    return _verdict(args, result.passed)


@COMMAND_REGISTRY.register()
def scan_infinite_command(cfg, args):
    ck = cfg.check
    problem = build_problem(cfg)
    result = run_condition(problem, {'type': 'infinite', 'a0': ck.a0, 'ratio': ck.ratio, 'k_max': ck.k_max,
                                     'samples': ck.samples, 'refine': ck.refine})
    pairs = result.pairs
    _emit_csv(args, ['k', 'a_k', 'b_k', 'lhs_i', 'rhs_i', 'pass_i', 'lhs_ii', 'rhs_ii', 'pass_ii'], [
        [pr.k for pr in pairs], [pr.a for pr in pairs], [pr.b for pr in pairs], [pr.upper.lhs for pr in pairs],
        [pr.upper.rhs for pr in pairs], [pr.upper.passed for pr in pairs], [pr.lower.lhs for pr in pairs],
        [pr.lower.rhs for pr in pairs], [pr.lower.passed for pr in pairs]
    ])
    start, length = result.longest_run
    _emit_report(args, ['command: scan-infinite'] + [
        f'k={pr.k}: {"PASS" if pr.upper.passed else "FAIL"} {"PASS" if pr.lower.passed else "FAIL"}' for pr in pairs
    ] + [f'longest_run_start: {start if start is not None else "none"}', f'longest_run_length: {length}'])
    return _verdict(args, result.passed)


@COMMAND_REGISTRY.register()
def sample_timescale_command(cfg, args):
    grid = build_problem(cfg).grid
    indices = range(len(grid))
    _emit_csv(args, ['t', 'right_dense', 'left_dense', 'sigma', 'rho'], [
        grid.points, grid.right_dense, grid.left_dense, [sigma(grid, i) for i in indices],
        [rho(grid, i) for i in indices]
    ])
    _emit_report(args, ['command: sample-timescale', f'timescale: {grid.spec}', f'points: {len(grid)}'])
    return EXIT_OK


@COMMAND_REGISTRY.register()
def print_config_command(cfg, args):
    text = print_config(cfg)
    if args.output:
        atomic_write_text(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog='tsbvp',
        description='Solve p-Laplacian boundary value problems on time scales and check the existence, '
        'multiplicity and infinite-solvability conditions.',
        epilog='Exit status: 0 success, 1 no convergence or evaluation failure, 2 configuration error, '
        '3 failed condition check with --strict.\n\nExpression grammar of f, h and init:\n' +
        expr_parser.__doc__.split('\n', 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('command', choices=sorted(COMMANDS), help='Command to run.')
    parser.add_argument('-c', '--config', type=str, required=True, help='Run configuration (.cfg text or .yml).')
    parser.add_argument('-o', '--output', type=str, default=None, help='CSV output file. Default: standard output')
    parser.add_argument('-r', '--report', type=str, default=None, help='Text report file.')
    parser.add_argument('--strict', action='store_true', help='Exit with 3 when a condition check fails.')
    parser.add_argument('--log', type=str, default=None, help='Also write the log to this file.')
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging and progress bars.')
    return parser.parse_args(argv)


def main(argv=None):
    """Command-line entry point; returns the exit status."""
    args = parse_args(argv)
    logger = get_root_logger()
    logger.setLevel(logging.DEBUG if args.verbose else logging.INFO)
    file_handler = None
    if args.log is not None:
        file_handler = logging.FileHandler(args.log, 'w')
        file_handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s: %(message)s'))
        logger.addHandler(file_handler)
    try:
        return _run(args, logger)
    finally:
        # one run, one log file
        if file_handler is not None:
            logger.removeHandler(file_handler)
            file_handler.close()


def _run(args, logger):
    try:
        cfg = load_config(args.config)
    except OSError as error:
        logger.error(f'Cannot read config: {error}')
        return EXIT_CONFIG_ERROR
    except ConfigError as error:
        logger.error(f'{args.config}: {error}')
        return EXIT_CONFIG_ERROR
    logger.debug(dict2str(cfg.to_dict()))

    try:
        return COMMAND_REGISTRY.get(COMMANDS[args.command])(cfg, args)
    except ExprDomainError as error:
        logger.error(f'Evaluation failed: {error}')
        return EXIT_NOT_CONVERGED
    except ValueError as error:
        logger.error(f'{args.command}: {error}')
        return EXIT_CONFIG_ERROR


if __name__ == '__main__':
    sys.exit(main())
