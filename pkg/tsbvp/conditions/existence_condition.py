from basicsr.utils import get_root_logger
from tsbvp.utils.registry import CONDITION_REGISTRY
from .condition_util import ConditionResult, check_lower_condition, check_upper_condition, condition_constants


def check_existence_pair(a, b, problem, samples=10001, refine=False):
    """Check the two hypotheses that put a positive solution in the shell b < |u| < a.

    Args:
        a (float): Upper level, checked with condition (i).
        b (float): Lower level, checked with condition (ii); 0 < b < a.
        problem (ProblemSpec): The problem.
        samples (int): Samples of f on each range. Default: 10001.
        refine (bool): Add a refined extremum to the reports.

    Returns:
        tuple[CheckReport, CheckReport]: Reports of (i) at a and (ii) at b.
    """
    if not a > 0:
        raise ValueError(f'a must be positive, got {a!r}.')
    if not 0 < b < a:
        raise ValueError(f'Need 0 < b < a, got a={a!r}, b={b!r}.')
    constants = condition_constants(problem, samples)
    return (check_upper_condition(problem.f, a, constants, samples, refine),
            check_lower_condition(problem.f, b, constants, samples, refine))


@CONDITION_REGISTRY.register()
def existence(problem, a, b, samples=10001, refine=False, **kwargs):
    reports = check_existence_pair(a, b, problem, samples, refine)
    passed = all(r.passed for r in reports)
    logger = get_root_logger()
    for report in reports:
        logger.info(str(report))
    shells = ((b, a), ) if passed else ()
    if passed:
        logger.info(f'A positive solution is predicted with {b!r} < |u| < {a!r}.')
    return ConditionResult('existence', reports, passed, shells=shells)
