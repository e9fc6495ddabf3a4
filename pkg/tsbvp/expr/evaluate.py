import numpy as np
from dataclasses import dataclass

from basicsr.utils import get_root_logger
from .errors import ExprDomainError, UnboundVariableError
from .nodes import Binary, Call, Number, Unary, Variable, format_expr


def _divide(node, a, b):
    if np.any(b == 0):
        raise ExprDomainError('Division by zero', format_expr(node))
    return a / b


def _power(node, a, b):
    if np.any((a == 0) & (b < 0)):
        raise ExprDomainError('Zero raised to a negative power', format_expr(node))
    return np.power(a, b)


def _log(node, a):
    if np.any(a <= 0):
        raise ExprDomainError('Logarithm of a non-positive value', format_expr(node))
    return np.log(a)


def _sqrt(node, a):
    if np.any(a < 0):
        raise ExprDomainError('Square root of a negative value', format_expr(node))
    return np.sqrt(a)


BINARY_RULES = {
    '+': lambda node, a, b: a + b,
    '-': lambda node, a, b: a - b,
    '*': lambda node, a, b: a * b,
    '/': _divide,
    '^': _power,
}
CALL_RULES = {
    'abs': lambda node, a: np.abs(a),
    'exp': lambda node, a: np.exp(a),
    'log': _log,
    'sqrt': _sqrt,
    'sin': lambda node, a: np.sin(a),
    'cos': lambda node, a: np.cos(a),
    'min': lambda node, a, b: np.minimum(a, b),
    'max': lambda node, a, b: np.maximum(a, b),
    'pow': _power,
}


def _check_nan(node, result, operands):
    # NaN from finite operands is a domain error; non-finite operands propagate
    bad = np.isnan(result)
    if not np.any(bad):
        return result
    finite = np.ones(np.shape(result), dtype=bool)
    for operand in operands:
        finite = finite & np.isfinite(operand)
    if np.any(bad & finite):
        raise ExprDomainError('Result is not a number', format_expr(node))
    return result


def _evaluate(node, env):
    if isinstance(node, Number):
        return np.float64(node.value)
    if isinstance(node, Variable):
        value = env.get(node.name)
        if value is None:
            raise UnboundVariableError(node.name)
        return value
    if isinstance(node, Unary):
        return -_evaluate(node.operand, env)
    if isinstance(node, Binary):
        operands = (_evaluate(node.left, env), _evaluate(node.right, env))
        return _check_nan(node, BINARY_RULES[node.op](node, *operands), operands)
    if isinstance(node, Call):
        operands = tuple(_evaluate(a, env) for a in node.args)
        return _check_nan(node, CALL_RULES[node.name](node, *operands), operands)
    raise TypeError(f'Not an expression node: {node!r}')


def evaluate(e, u=None, t=None):
    """Evaluate an expression tree.

    Arrays broadcast element-wise; overflow follows IEEE semantics.

    Args:
        e: Parsed expression.
        u (float | ndarray | None): Value of the variable ``u``.
        t (float | ndarray | None): Value of the variable ``t``.

    Returns:
        float | ndarray: A float when all bindings are scalars, otherwise an
            array with the broadcast shape of the bindings.

    Raises:
        UnboundVariableError: A used variable has no value.
        ExprDomainError: log/sqrt/division/power outside their domain.
    """
    env = {}
    shapes = []
    for name, value in (('u', u), ('t', t)):
        if value is not None:
            env[name] = np.asarray(value, dtype=np.float64)
            shapes.append(env[name].shape)
    with np.errstate(all='ignore'):
        result = _evaluate(e, env)
    shape = np.broadcast_shapes(*shapes) if shapes else ()
    if shape == ():
        return float(result)
    return np.broadcast_to(result, shape).copy()


@dataclass(frozen=True)
class PositivityReport:
    """Sampled positivity of an expression over [lo, hi]."""
    variable: str
    lo: float
    hi: float
    samples: int
    min_value: float
    argmin: float
    positive: bool

    def __str__(self):
        verdict = 'positive' if self.positive else 'NOT positive'
        return (f'{verdict} on {self.variable} in [{self.lo!r}, {self.hi!r}] ({self.samples} samples): '
                f'min {self.min_value!r} at {self.variable}={self.argmin!r}')


def check_positivity(e, var, lo, hi, samples):
    """Sample an expression of one variable and report whether it stays positive.

    A negative verdict is logged as a warning; it is not an error.

    Args:
        e: Parsed expression.
        var (str): 'u' or 't'.
        lo (float): Left end of the sampled range.
        hi (float): Right end, lo < hi.
        samples (int): Number of equispaced samples, at least 2.

    Returns:
        PositivityReport
    """
    if var not in ('u', 't'):
        raise ValueError(f'var must be "u" or "t", got {var!r}.')
    if not lo < hi:
        raise ValueError(f'Need lo < hi, got lo={lo!r}, hi={hi!r}.')
    if samples < 2:
        raise ValueError(f'samples must be at least 2, got {samples}.')

    grid = np.linspace(lo, hi, int(samples))
    values = evaluate(e, **{var: grid})
    i = int(np.argmin(values))
    report = PositivityReport(var, float(lo), float(hi), int(samples), float(values[i]), float(grid[i]),
                              bool(values[i] > 0))
    if not report.positive:
        get_root_logger().warning(f'{format_expr(e)}: {report}')
    return report
