from dataclasses import dataclass
from tqdm import tqdm

from basicsr.utils import get_root_logger
from tsbvp.utils.registry import CONDITION_REGISTRY
from .condition_util import ConditionResult, check_lower_condition, check_upper_condition, condition_constants


@dataclass(frozen=True)
class LevelPair:
    k: int
    a: float
    b: float
    upper: object
    lower: object

    @property
    def passed(self):
        return self.upper.passed and self.lower.passed


def longest_passing_run(pairs):
    """(first k, length) of the longest run of consecutive passing pairs; (None, 0) if none."""
    best = (None, 0)
    start, length = None, 0
    for pair in pairs:
        if pair.passed:
            start = pair.k if length == 0 else start
            length += 1
            if length > best[1]:
                best = (start, length)
        else:
            length = 0
    return best


def scan_infinite(problem, a0=1.0, ratio=0.5, k_max=8, samples=10001, refine=False, progress=False):
    """Check the hypotheses on interleaved geometric levels tending to 0.

    For k = 1..k_max, a_k = a0 * ratio^(2k) and b_k = a0 * ratio^(2k+1), so
    a_1 > b_1 > a_2 > b_2 > ...; condition (i) is checked at a_k with A(a_k)
    and condition (ii), with the minimum of f, at b_k.

    Returns:
        ConditionResult: The pairs, their reports and the longest run of
            passing pairs. ``passed`` is true when at least one pair passes.
    """
    if not a0 > 0:
        raise ValueError(f'a0 must be positive, got {a0!r}.')
    if not 0 < ratio < 1:
        raise ValueError(f'ratio must satisfy 0 < ratio < 1, got {ratio!r}.')
    if k_max < 1:
        raise ValueError(f'k_max must be at least 1, got {k_max}.')

    constants = condition_constants(problem, samples)
    pairs = []
    for k in tqdm(range(1, k_max + 1), unit='pair', disable=not progress):
        a = a0 * ratio**(2 * k)
        b = a0 * ratio**(2 * k + 1)
        pairs.append(
            LevelPair(k, a, b, check_upper_condition(problem.f, a, constants, samples, refine),
                      check_lower_condition(problem.f, b, constants, samples, refine)))
    run = longest_passing_run(pairs)
    reports = tuple(r for pair in pairs for r in (pair.upper, pair.lower))
    return ConditionResult('infinite', reports, run[1] > 0, pairs=tuple(pairs), longest_run=run)


@CONDITION_REGISTRY.register()
def infinite(problem, a0=1.0, ratio=0.5, k_max=8, samples=10001, refine=False, **kwargs):
    result = scan_infinite(problem, a0, ratio, k_max, samples, refine)
    logger = get_root_logger()
    for pair in result.pairs:
        logger.info(f'k={pair.k}: a={pair.a:.6g} {"PASS" if pair.upper.passed else "FAIL"}, '
                    f'b={pair.b:.6g} {"PASS" if pair.lower.passed else "FAIL"}')
    start, length = result.longest_run
    if length:
        logger.info(f'Longest run of passing pairs: {length} starting at k={start}.')
    else:
        logger.info('No passing pair.')
    return result
