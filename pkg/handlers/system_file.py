"""
System file grammar: `params m=.. n=..` header, one `poly` line per generator

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | atom ('^' INT)?
    atom   := INT ('/' INT)? | VAR | '(' expr ')'

MultiChow files use a `groups G arity A` header and a single `poly` line.
"""
import re

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from algebra.chow import MultiChow, multichow_names, multichow_ring
from algebra.exceptions import StructuralException
from algebra.poly_core import format_poly, symbol_names, system_ring
from algebra.solve import SystemInput

PARAMS_PATTERN = re.compile(r'^params\s+m\s*=\s*(\d+)\s+n\s*=\s*(\d+)\s*$')
GROUPS_PATTERN = re.compile(r'^groups\s+(\d+)\s+arity\s+(\d+)\s*$')
TOKEN_PATTERN = re.compile(r'\s*(?:(?P<int>\d+)|(?P<var>[A-Za-z][A-Za-z0-9_]*)|(?P<op>\S))')


class ParseException(Exception):
    """Raised when a system file does not follow the grammar"""

    def __init__(self, message, kind='Syntax', line=None, column=None):
        super().__init__(message)
        self.kind = kind
        self.line = line
        self.column = column

    def to_dict(self):
        return {'error': str(self), 'kind': self.kind, 'line': self.line, 'column': self.column}


def _tokenize(text, line, offset):
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if not match or match.end() == position:
            break
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), offset + match.start(kind) + 1))
        position = match.end()
    tokens.append(('end', None, offset + len(text) + 1))
    return tokens


class _ExpressionParser:
    """Recursive descent straight into ring elements"""

    def __init__(self, text, ring, line, offset):
        self.ring = ring
        self.names = symbol_names(ring)
        self.line = line
        self.tokens = _tokenize(text, line, offset)
        self.position = 0

    def error(self, message, kind='Syntax', column=None):
        column = column if column is not None else self.peek()[2]
        return ParseException(message, kind, self.line, column)

    def peek(self):
        return self.tokens[self.position]

    def advance(self):
        token = self.tokens[self.position]
        self.position += 1
        return token

    def accept(self, op):
        kind, value, _ = self.peek()
        if kind == 'op' and value == op:
            self.position += 1
            return True
        return False

    def parse(self):
        value = self.expr()
        kind, token, column = self.peek()
        if kind != 'end':
            raise self.error(f"unexpected '{token}'", column=column)
        return value

    def expr(self):
        value = self.term()
        while True:
            if self.accept('+'):
                value = value + self.term()
            elif self.accept('-'):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.factor()
        while self.accept('*'):
            value = value * self.factor()
        return value

    def factor(self):
        if self.accept('+'):
            return self.factor()
        if self.accept('-'):
            return -self.factor()
        value = self.atom()
        if self.accept('^'):
            kind, exponent, column = self.advance()
            if kind != 'int':
                raise self.error("exponent must be a non-negative integer", column=column)
            value = value ** int(exponent)
        return value

    def atom(self):
        kind, value, column = self.advance()
        if kind == 'int':
            number = QQ(int(value))
            if self.accept('/'):
                kind, den, den_column = self.advance()
                if kind != 'int':
                    raise self.error("denominator must be an integer", column=den_column)
                if int(den) == 0:
                    raise self.error("division by zero", column=den_column)
                number = QQ(int(value), int(den))
            return self.ring(number)
        if kind == 'var':
            if value not in self.names:
                raise self.error(f"unknown variable {value}", 'UnknownVariable', column)
            return self.ring.gens[self.names.index(value)]
        if kind == 'op' and value == '(':
            inner = self.expr()
            if not self.accept(')'):
                raise self.error("expected ')'")
            return inner
        if kind == 'end':
            raise self.error("unexpected end of expression", column=column)
        raise self.error(f"unexpected '{value}'", column=column)


def _content_lines(text):
    """(line number, stripped content) for lines that are not blank or comments"""
    for number, raw in enumerate(text.split('\n'), start=1):
        content = raw.split('#', 1)[0].rstrip()
        if content.strip():
            yield number, content


def _poly_lines(lines, ring):
    polys = []
    for number, content in lines:
        stripped = content.lstrip()
        if not stripped.startswith('poly') or stripped[4:5] not in (' ', '\t', ''):
            raise ParseException(f"expected a `poly` line, got: {stripped}", 'Syntax', number, 1)
        offset = len(content) - len(stripped) + 4
        body = content[offset:]
        poly = _ExpressionParser(body, ring, number, offset).parse()
        if not poly:
            raise ParseException("polynomial is zero", 'ZeroPolynomial', number, offset + 1)
        polys.append(poly)
    return polys


def parse_system(text: str) -> SystemInput:
    """SystemInput over QQ[Y1..Ym, X1..Xn] from the text of a system file"""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseException("empty system file", 'MissingHeader', 1, 1)
    number, header = lines[0]
    match = PARAMS_PATTERN.match(header.strip())
    if not match:
        raise ParseException("first line must be `params m=<int> n=<int>`", 'MissingHeader', number, 1)
    m, n = int(match.group(1)), int(match.group(2))
    if n < 1:
        raise ParseException("at least one unknown is needed", 'Syntax', number, 1)
    ring = system_ring(m, n)
    gens = _poly_lines(lines[1:], ring)
    if not gens:
        raise ParseException("no `poly` lines", 'Syntax', number, 1)
    return SystemInput(m, n, tuple(gens), ring)


def format_system(sys: SystemInput) -> str:
    lines = [f"params m={sys.m} n={sys.n}"]
    lines += [f"poly {format_poly(g)}" for g in sys.gens]
    return '\n'.join(lines) + '\n'


def is_multichow(text: str) -> bool:
    lines = list(_content_lines(text))
    return bool(lines) and lines[0][1].strip().startswith('groups')


def parse_multichow(text: str) -> MultiChow:
    """MultiChow form with m+1 = G groups U<i>_0..U<i>_<A-1> of arity A = m+n+1"""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseException("empty form file", 'MissingHeader', 1, 1)
    number, header = lines[0]
    match = GROUPS_PATTERN.match(header.strip())
    if not match:
        raise ParseException("first line must be `groups <int> arity <int>`", 'MissingHeader', number, 1)
    groups, arity = int(match.group(1)), int(match.group(2))
    m = groups - 1
    n = arity - groups
    if m < 0 or n < 0:
        raise ParseException("arity must be at least the number of groups", 'Syntax', number, 1)
    ring = PolyRing(multichow_names(m, n), QQ, grlex)
    forms = _poly_lines(lines[1:], ring)
    if len(forms) != 1:
        raise ParseException(f"expected one `poly` line, got {len(forms)}", 'Syntax', number, 1)
    form = forms[0]
    if any(QQ.denom(c) != 1 for c in form.itercoeffs()):
        raise ParseException("form coefficients must be integers", 'Syntax', lines[1][0], 1)
    try:
        return MultiChow(m, n, form.set_ring(multichow_ring(m, n)))
    except StructuralException as e:
        raise ParseException(str(e), 'Syntax', lines[1][0], 1)


def load_text(path: str) -> str:
    try:
        with open(path, encoding='utf-8') as handle:
            return handle.read()
    except OSError as e:
        raise ParseException(f"cannot read {path}: {e.strerror}", 'Syntax', None, None)
    except UnicodeDecodeError as e:
        raise ParseException(f"{path} is not UTF-8 text: {e.reason}", 'Syntax', None, None)


def load_system(path: str) -> SystemInput:
    return parse_system(load_text(path))
