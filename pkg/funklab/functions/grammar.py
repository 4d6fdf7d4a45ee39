__all__ = ['parse_function', 'parse_scalar', 'parse_vector', 'parse_vector_list']

import ast
import math
import operator
import re

from funklab.functions.base import Constant
from funklab.functions.primitives import Monomial, LinearForm, Harmonic, CapBump
from funklab.errors import ParseError


#
# Scalars: decimals or small closed-form expressions such as sqrt(7/3)
#

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}
_FUNCS = {'sqrt': math.sqrt, 'cos': math.cos, 'sin': math.sin, 'tan': math.tan,
          'acos': math.acos, 'asin': math.asin, 'atan': math.atan, 'exp': math.exp}
_NAMES = {'pi': math.pi, 'e': math.e}


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_eval_node(node.operand))
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS
            and len(node.args) == 1 and not node.keywords):
        return _FUNCS[node.func.id](_eval_node(node.args[0]))
    raise ParseError('unsupported expression element %s' % type(node).__name__)


def parse_scalar(text) -> float:
    try:
        tree = ast.parse(text.strip(), mode='eval')
        return float(_eval_node(tree))
    except ParseError:
        raise
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError) as e:
        raise ParseError('cannot read number %r: %s' % (text, e))


def parse_vector(text, n=None):
    """
    Reads comma separated coordinates, e.g. ``0.5,0,0`` or ``0,sqrt(7/3)``.
    """
    parts = [p for p in text.split(',')]
    if any(not p.strip() for p in parts):
        raise ParseError('empty coordinate in %r' % text)
    values = [parse_scalar(p) for p in parts]
    if n is not None and len(values) != n:
        raise ParseError('expected %d coordinates in %r, got %d' % (n, text, len(values)))
    return values


def parse_vector_list(text, n=None):
    """
    Reads a semicolon separated list of vectors, e.g. ``1,0,0;0,1,0``.
    """
    return [parse_vector(chunk, n) for chunk in text.split(';') if chunk.strip()]


#
# Function expressions
#

_NUM = r'(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?'
_TOKEN = re.compile(r'\s*(?:(?P<vec>-?%s(?:,-?%s)+)|(?P<num>%s)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*()]))'
                    % (_NUM, _NUM, _NUM))


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError('unexpected input at %r' % text[pos:pos + 10])
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser( object ):

    def __init__(self, text, n):
        self.__tokens = _tokenize(text)
        self.__pos = 0
        self.__n = n

    def peek(self):
        return self.__tokens[self.__pos] if self.__pos < len(self.__tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError('expected %s but found %r' % (value or kind, tok[1]))
        self.__pos += 1
        return tok[1]

    def done(self):
        return self.__pos == len(self.__tokens)

    def number(self):
        sign = 1.0
        if self.peek() == ('op', '-'):
            self.take()
            sign = -1.0
        return sign * float(self.take('num'))

    def integer(self):
        value = self.number()
        if value != int(value):
            raise ParseError('expected an integer, got %r' % value)
        return int(value)

    def vector(self):
        values = [float(v) for v in self.take('vec').split(',')]
        if len(values) != self.__n:
            raise ParseError('expected a vector of dimension %d, got %d' % (self.__n, len(values)))
        return values

    def expr(self):
        f = self.term()
        while self.peek() in (('op', '+'), ('op', '-')):
            op = self.take()
            rhs = self.term()
            f = f + rhs if op == '+' else f - rhs
        return f

    def term(self):
        f = self.factor()
        while self.peek() == ('op', '*'):
            self.take()
            rhs = self.factor()
            if isinstance(f, Constant):
                f = f.value() * rhs
            elif isinstance(rhs, Constant):
                f = rhs.value() * f
            else:
                f = f * rhs
        return f

    def factor(self):
        kind, value = self.peek()
        if (kind, value) == ('op', '-'):
            self.take()
            return -self.factor()
        if (kind, value) == ('op', '('):
            self.take()
            f = self.expr()
            self.take('op', ')')
            return f
        if kind == 'num':
            return Constant(self.number())
        if kind != 'name':
            raise ParseError('unexpected token %r' % value)
        self.take()
        if value == 'const':
            return Constant(self.number())
        if value == 'harm':
            if self.__n != 3:
                raise ParseError('harmonics are available on S^2 only')
            l = self.integer()
            m = self.integer()
            return Harmonic(l, m)
        if value == 'mono':
            return Monomial([self.integer() for _ in range(self.__n)])
        if value == 'lin':
            return LinearForm(self.vector())
        if value == 'bump':
            e = self.vector()
            return CapBump(e, self.number())
        raise ParseError('unknown primitive %r' % value)


def parse_function(text, n):
    """
    Parses a function expression over the primitives

    ``harm l m``, ``mono i j k``, ``lin u``, ``bump e r``, ``const c`` and numbers,
    combined with ``+``, ``-``, ``*`` and parentheses.

    Parameters
    ----------
    text : str
        Expression, e.g. ``"2*harm 1 0 + mono 0 0 2"``.
    n : int
        Ambient dimension.

    Returns
    -------
    SphericalFunction
    """
    parser = _Parser(text, n)
    try:
        f = parser.expr()
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e))
    if not parser.done():
        raise ParseError('trailing input after expression: %r' % (parser.peek()[1],))
    return f
