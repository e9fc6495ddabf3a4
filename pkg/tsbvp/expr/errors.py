class ExprError(ValueError):
    """Base class of expression errors."""


class ExprSyntaxError(ExprError):
    """Syntax error at a character offset of the expression text."""

    def __init__(self, message, offset, text=None):
        self.offset = offset
        self.text = text
        super().__init__(f'{message} at offset {offset}' + (f' in "{text}"' if text is not None else ''))


class UnboundVariableError(ExprError):
    """A variable of the expression has no value."""

    def __init__(self, name):
        self.name = name
        super().__init__(f'Variable "{name}" is not bound.')


class ExprDomainError(ExprError):
    """Evaluation left the domain of an operation (log of 0, division by 0, ...)."""

    def __init__(self, message, subexpression):
        self.subexpression = subexpression
        super().__init__(f'{message} in "{subexpression}"')
