from .closed_form import ClosedFormCase, closed_form_case, closed_form_derivative, closed_form_solution
from .naive_operator import naive_apply_F
from .reference import (FiniteDifferenceReport, finite_difference_check, reference_alpha, reference_capital_A,
                        reference_capital_B, reference_lower_threshold, reference_upper_threshold)

__all__ = [
    'naive_apply_F', 'closed_form_solution', 'closed_form_derivative', 'ClosedFormCase', 'closed_form_case',
    'reference_alpha', 'reference_capital_A', 'reference_capital_B', 'reference_upper_threshold',
    'reference_lower_threshold', 'finite_difference_check', 'FiniteDifferenceReport'
]
