import argparse
import logging
import math
import numpy as np

from basicsr.utils import get_root_logger
from tsbvp.oracle import closed_form_case
from tsbvp.solvers import SolverConfig, picard_solve
from tsbvp.utils import write_csv


def main():
    """Grid refinement study on the closed-form problem (p = 2, f = c, h = 0).

    Solves on [0, T] for a sequence of halved resolutions and reports the
    sup-norm error against the exact solution and the observed order.
    """
    parser = argparse.ArgumentParser()
    parser.add_argument('-c', type=float, default=1.0, help='Constant source f = c. Default: 1')
    parser.add_argument('-T', type=float, default=1.0, help='Horizon. Default: 1')
    parser.add_argument('--eta', type=float, default=0.5, help='Interior point. Default: 0.5')
    parser.add_argument('--coarsest', type=float, default=0.04, help='Coarsest resolution. Default: 0.04')
    parser.add_argument('--levels', type=int, default=6, help='Number of halvings. Default: 6')
    parser.add_argument('-o', '--output', type=str, default=None, help='CSV file for the error table.')
    args = parser.parse_args()

    logger = get_root_logger()
    logger.setLevel(logging.INFO)
    resolutions, errors, orders = [], [], []
    for level in range(args.levels):
        resolution = args.coarsest / 2**level
        case = closed_form_case(args.c, args.T, args.eta, resolution)
        report = picard_solve(case.problem, SolverConfig(tolerance=1e-13, max_iterations=10, print_freq=0))
        error = float(np.max(np.abs(report.solution.values - case.exact_values())))
        order = math.log2(errors[-1] / error) if errors else float('nan')
        resolutions.append(resolution)
        errors.append(error)
        orders.append(order)
        logger.info(f'resolution {resolution:.6g}: {len(case.problem.grid)} points, error {error:.6e} '
                    f'(bound {case.tolerance:.3e}), order {order:.3f}')

    if args.output:
        write_csv(args.output, ['resolution', 'error', 'order'], [resolutions, errors, orders])
        logger.info(f'Error table saved to {args.output}')


if __name__ == '__main__':
    main()
