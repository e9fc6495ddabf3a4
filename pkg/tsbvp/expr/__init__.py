from .errors import ExprDomainError, ExprError, ExprSyntaxError, UnboundVariableError
from .evaluate import PositivityReport, check_positivity, evaluate
from .nodes import FUNCTIONS, VARIABLES, Binary, Call, Number, Unary, Variable, format_expr, variables
from .parser import parse, tokenize

__all__ = [
    'ExprError', 'ExprSyntaxError', 'UnboundVariableError', 'ExprDomainError', 'Number', 'Variable', 'Unary',
    'Binary', 'Call', 'FUNCTIONS', 'VARIABLES', 'parse', 'tokenize', 'evaluate', 'format_expr', 'variables',
    'check_positivity', 'PositivityReport'
]
