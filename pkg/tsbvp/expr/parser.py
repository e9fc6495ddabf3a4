"""Recursive descent parser for the scalar expressions of f(u), h(t) and init(t).

Grammar (``^`` binds tighter than unary minus, and is right-associative)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' unary)?
    primary := number | 'u' | 't' | name '(' expr (',' expr)* ')' | '(' expr ')'
    number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]

Functions: abs, exp, log, sqrt, sin, cos (one argument), min, max, pow (two).
"""
import math
import re
from collections import namedtuple

from .errors import ExprSyntaxError
from .nodes import FUNCTIONS, VARIABLES, Binary, Call, Number, Unary, Variable

Token = namedtuple('Token', ['kind', 'text', 'offset'])

_TOKEN_RE = re.compile(r'''
    (?P<space>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
''', re.VERBOSE)


def tokenize(text):
    """Split expression text into tokens, ending with an 'eof' token."""
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExprSyntaxError(f'Unexpected character {text[pos]!r}', pos, text)
        kind = match.lastgroup
        if kind != 'space':
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token('eof', '', len(text)))
    return tokens


class Parser():
    """Parser over the token list of a single expression."""

    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def error(self, message, token=None):
        token = token or self.current
        return ExprSyntaxError(message, token.offset, self.text)

    def advance(self):
        token = self.current
        self.pos += 1
        return token

    def accept(self, text):
        if self.current.kind == 'op' and self.current.text == text:
            return self.advance()
        return None

    def expect(self, text):
        token = self.accept(text)
        if token is None:
            found = 'end of input' if self.current.kind == 'eof' else repr(self.current.text)
            raise self.error(f"Expected '{text}', found {found}")
        return token

    def parse(self):
        if self.current.kind == 'eof':
            raise self.error('Empty expression')
        node = self.expr()
        if self.current.kind != 'eof':
            if self.current.text == ')':
                raise self.error("Unbalanced ')'")
            raise self.error(f'Unexpected {self.current.text!r}')
        return node

    def expr(self):
        node = self.term()
        while self.current.kind == 'op' and self.current.text in '+-':
            token = self.advance()
            node = Binary(token.text, node, self.term(), token.offset)
        return node

    def term(self):
        node = self.unary()
        while self.current.kind == 'op' and self.current.text in '*/':
            token = self.advance()
            node = Binary(token.text, node, self.unary(), token.offset)
        return node

    def unary(self):
        token = self.accept('-')
        if token is not None:
            return Unary(self.unary(), token.offset)
        return self.power()

    def power(self):
        base = self.primary()
        token = self.accept('^')
        if token is not None:
            # right-associative: the exponent is parsed at unary level
            return Binary('^', base, self.unary(), token.offset)
        return base

    def primary(self):
        token = self.current
        if token.kind == 'number':
            self.advance()
            value = float(token.text)
            if not math.isfinite(value):
                raise self.error(f'Number {token.text} is out of range', token)
            return Number(value, token.offset)
        if token.kind == 'name':
            self.advance()
            if self.current.kind == 'op' and self.current.text == '(':
                return self.call(token)
            if token.text in VARIABLES:
                return Variable(token.text, token.offset)
            raise self.error(f'Unknown identifier {token.text!r}', token)
        if self.accept('('):
            node = self.expr()
            self.expect(')')
            return node
        if token.kind == 'eof':
            raise self.error('Unexpected end of input')
        raise self.error(f'Unexpected {token.text!r}')

    def call(self, name):
        if name.text not in FUNCTIONS:
            raise self.error(f'Unknown function {name.text!r}', name)
        self.expect('(')
        args = [self.expr()]
        while self.accept(','):
            args.append(self.expr())
        self.expect(')')
        arity = FUNCTIONS[name.text]
        if len(args) != arity:
            raise self.error(f'{name.text} takes {arity} argument{"s" if arity > 1 else ""}, got {len(args)}',
                             name)
        return Call(name.text, tuple(args), name.offset)


def parse(text):
    """Parse expression text into an expression tree.

    Raises:
        ExprSyntaxError: With the character offset of the problem.
    """
    if not isinstance(text, str):
        raise ExprSyntaxError(f'Expected expression text, got {type(text).__name__}', 0)
    return Parser(text).parse()
