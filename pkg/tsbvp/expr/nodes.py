from dataclasses import dataclass, field

VARIABLES = ('u', 't')
# name -> arity
FUNCTIONS = {
    'abs': 1,
    'exp': 1,
    'log': 1,
    'sqrt': 1,
    'sin': 1,
    'cos': 1,
    'min': 2,
    'max': 2,
    'pow': 2,
}
BINARY_OPERATORS = ('+', '-', '*', '/', '^')


@dataclass(frozen=True)
class Number:
    value: float
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Variable:
    name: str
    offset: int = field(default=0, compare=False)

    def __post_init__(self):
        assert self.name in VARIABLES, f'Unknown variable {self.name!r}'


@dataclass(frozen=True)
class Unary:
    """Negation; the only unary operator."""
    operand: object
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object
    offset: int = field(default=0, compare=False)

    def __post_init__(self):
        assert self.op in BINARY_OPERATORS, f'Unknown operator {self.op!r}'


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    offset: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'args', tuple(self.args))
        assert FUNCTIONS.get(self.name) == len(self.args), f'Bad call {self.name}/{len(self.args)}'


def format_expr(e):
    """Fully parenthesised text of an expression; parses back to an equal tree."""
    if isinstance(e, Number):
        return repr(float(e.value))
    if isinstance(e, Variable):
        return e.name
    if isinstance(e, Unary):
        return f'(-{format_expr(e.operand)})'
    if isinstance(e, Binary):
        return f'({format_expr(e.left)} {e.op} {format_expr(e.right)})'
    if isinstance(e, Call):
        return f'{e.name}({", ".join(format_expr(a) for a in e.args)})'
    raise TypeError(f'Not an expression node: {e!r}')


def variables(e):
    """Names of the variables used by an expression."""
    if isinstance(e, Variable):
        return frozenset((e.name, ))
    if isinstance(e, Unary):
        return variables(e.operand)
    if isinstance(e, Binary):
        return variables(e.left) | variables(e.right)
    if isinstance(e, Call):
        return frozenset().union(*(variables(a) for a in e.args))
    return frozenset()
