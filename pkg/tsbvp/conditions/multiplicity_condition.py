from basicsr.utils import get_root_logger
from tsbvp.utils.registry import CONDITION_REGISTRY
from .condition_util import ConditionResult, check_lower_condition, check_upper_condition, condition_constants


def scan_multiplicity(levels, problem, samples=10001, refine=False):
    """Check the chained hypotheses at levels a_1 < a_2 < ... < a_{k+1}.

    Condition (i) is checked at the odd levels a_1, a_3, ... and condition
    (ii) at the even levels a_2, a_4, ..., each with A taken at its own level.
    When every check passes, k solutions are predicted, one in each shell
    (a_i, a_{i+1}).

    Args:
        levels (Sequence[float]): Positive, strictly increasing, at least two.
        problem (ProblemSpec): The problem.
        samples (int): Samples of f on each range. Default: 10001.
        refine (bool): Add a refined extremum to the reports.

    Returns:
        ConditionResult: Reports in level order and the predicted shells
            (empty unless every check passes).
    """
    levels = [float(v) for v in levels]
    if len(levels) < 2:
        raise ValueError(f'Need at least 2 levels, got {levels}.')
    if levels[0] <= 0 or any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError(f'Levels must be positive and strictly increasing, got {levels}.')

    constants = condition_constants(problem, samples)
    reports = []
    for idx, level in enumerate(levels):
        check = check_upper_condition if idx % 2 == 0 else check_lower_condition
        reports.append(check(problem.f, level, constants, samples, refine))
    passed = all(r.passed for r in reports)
    shells = tuple(zip(levels, levels[1:])) if passed else ()
    return ConditionResult('multiplicity', tuple(reports), passed, shells=shells)


@CONDITION_REGISTRY.register()
def multiplicity(problem, levels, samples=10001, refine=False, **kwargs):
    result = scan_multiplicity(levels, problem, samples, refine)
    logger = get_root_logger()
    for report in result.reports:
        logger.info(str(report))
    if result.passed:
        logger.info(f'{len(result.shells)} positive solution(s) predicted in shells {list(result.shells)}.')
    return result
