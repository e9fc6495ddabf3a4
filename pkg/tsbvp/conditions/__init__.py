import importlib
from copy import deepcopy
from os import path as osp

from basicsr.utils import get_root_logger, scandir
from tsbvp.utils.registry import CONDITION_REGISTRY
from .condition_util import (CheckReport, ConditionConstants, ConditionResult, alpha, capital_A, capital_B,
                             check_lower_condition, check_upper_condition, condition_constants, h_sup_norm)
from .existence_condition import check_existence_pair
from .infinite_condition import LevelPair, longest_passing_run, scan_infinite
from .multiplicity_condition import scan_multiplicity

__all__ = [
    'alpha', 'capital_A', 'capital_B', 'h_sup_norm', 'condition_constants', 'ConditionConstants', 'CheckReport',
    'ConditionResult', 'check_upper_condition', 'check_lower_condition', 'check_existence_pair', 'scan_multiplicity',
    'scan_infinite', 'LevelPair', 'longest_passing_run', 'run_condition'
]

# automatically scan and import condition modules for registry
# scan all the files under the 'conditions' folder and collect files ending with '_condition.py'
condition_folder = osp.dirname(osp.abspath(__file__))
condition_filenames = [
    osp.splitext(osp.basename(v))[0] for v in scandir(condition_folder) if v.endswith('_condition.py')
]
# import all the condition modules
_condition_modules = [importlib.import_module(f'tsbvp.conditions.{file_name}') for file_name in condition_filenames]


def run_condition(problem, opt):
    """Run a registered condition check from options.

    Args:
        problem (ProblemSpec): The problem.
        opt (dict): Configuration. It must contain:
            type (str): Condition type: existence | multiplicity | infinite.

    Returns:
        ConditionResult
    """
    opt = deepcopy(opt)
    condition_type = opt.pop('type')
    result = CONDITION_REGISTRY.get(condition_type)(problem, **opt)
    logger = get_root_logger()
    logger.info(f'Condition [{condition_type}]: {"PASS" if result.passed else "FAIL"}.')
    return result
