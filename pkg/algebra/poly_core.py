"""
Exact polynomial kernel: coefficient fields, canonical strings, Sylvester
resultants, gcds, valuations and heights on top of sympy's sparse rings
"""
import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

import mpmath
from sympy import isprime, multiplicity
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.fields import FracField
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from algebra.exceptions import DomainException, StructuralException

VARIABLE_PATTERN = re.compile(r'^([XYU])(\d+)(?:_(\d+))?$')


def y_names(m: int) -> list:
    return [f"Y{i}" for i in range(1, m + 1)]


def x_names(n: int) -> list:
    return [f"X{i}" for i in range(1, n + 1)]


def symbol_names(ring) -> list:
    return [str(s) for s in ring.symbols]


def system_ring(m: int, n: int, domain=QQ):
    """Ring holding input generators: Y1..Ym, X1..Xn over QQ (graded-lex)"""
    return PolyRing(y_names(m) + x_names(n), domain, grlex)


def make_ring(names, domain=ZZ, order=grlex):
    return PolyRing(list(names), domain, order)


# ---------------------------------------------------------------------------
# Coefficient fields: QQ(Y), GF(p)(Y), QQ, GF(p)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientField:
    """Base field K of a triangular set: m parameters, characteristic 0 or p"""
    m: int
    p: Optional[int] = None

    @property
    def tag(self) -> str:
        base = 'QQ' if self.p is None else f'GF({self.p})'
        return f'{base}(Y)' if self.m else base

    @property
    def ground(self):
        return ZZ if self.p is None else GF(self.p)

    @property
    def fraction_field(self):
        return FracField(','.join(y_names(self.m)), self.ground, grlex)

    @property
    def yring(self):
        """Ring of numerators and denominators, ZZ[Y] or GF(p)[Y]"""
        return self.fraction_field.ring

    @property
    def domain(self):
        if self.m:
            return self.fraction_field.to_domain()
        return QQ if self.p is None else GF(self.p)

    def xring(self, n: int):
        """K[X1..Xn] with lex order X1 < ... < Xn (generators stored Xn..X1)"""
        return PolyRing(list(reversed(x_names(n))), self.domain, lex)

    def element(self, ymonom: tuple, num: int, den: int = 1):
        """K element num/den * Y^ymonom"""
        if self.p is not None and den % self.p == 0:
            raise DomainException(f"denominator {den} vanishes modulo {self.p}")
        if not self.m:
            return self.domain.convert(num) / self.domain.convert(den)
        ring = self.yring
        return self.fraction_field.new(ring({ymonom: num}), ring(den))

    def parts(self, c):
        """Normalized (numerator, denominator) of a K element

        Characteristic zero: gcd(num, den) = 1 in ZZ[Y], den with positive
        leading coefficient. Characteristic p: den monic.
        """
        if not self.m:
            if self.p is None:
                return int(QQ.numer(c)), int(QQ.denom(c))
            return int(c) % self.p, 1
        return normalize_fraction(c.numer, c.denom)

    def from_parts(self, num, den):
        if not self.m:
            return self.domain.convert(num) / self.domain.convert(den)
        return self.fraction_field.new(num, den)

    def canonical(self, c):
        """c with its normalized parts; GF(p)(Y) arithmetic keeps constant units otherwise"""
        if not self.m or self.p is None:
            return c
        return self.fraction_field.raw_new(*self.parts(c))

    def is_one(self, c) -> bool:
        return not (c - self.domain.one)

    def is_integral(self, c) -> bool:
        _, den = self.parts(c)
        return den == 1

    def evaluate(self, c, point):
        """Value of c at an integer point, or None when the denominator vanishes"""
        num, den = self.parts(c)
        if not self.m:
            return QQ(num, den) if self.p is None else self.domain.convert(num)
        target = QQ if self.p is None else GF(self.p)
        den_value = evaluate_ground(den, point, target)
        if not den_value:
            return None
        return evaluate_ground(num, point, target) / den_value

    def reduce(self, c, p: int):
        """Coefficientwise reduction of a QQ(Y) or QQ element modulo p"""
        target = CoefficientField(self.m, p)
        num, den = self.parts(c)
        if not self.m:
            if den % p == 0:
                return None
            return target.element((), num, den)
        num_p = target.yring.from_dict({mo: int(co) % p for mo, co in num.items()})
        den_p = target.yring.from_dict({mo: int(co) % p for mo, co in den.items()})
        if not den_p:
            return None
        return target.canonical(target.fraction_field.new(num_p, den_p))

    def format(self, c) -> str:
        return format_coefficient(c, self)


def canonical_poly(poly, base: CoefficientField):
    """poly with every coefficient in normalized form (see CoefficientField.canonical)"""
    if not base.m or base.p is None:
        return poly
    return poly.ring.from_dict({monom: base.canonical(c) for monom, c in poly.items()})


def normalize_fraction(num, den):
    """Fix the unit of a reduced fraction: positive leading den over ZZ, monic den over GF(p)"""
    if den.ring.domain.is_FiniteField:
        return num.quo_ground(den.LC), den.monic()
    if leading_coefficient(den) < 0:
        return -num, -den
    return num, den


def evaluate_ground(poly, point, target=QQ):
    """Evaluate a ZZ[Y] polynomial at a point, in the target ground domain"""
    total = target.zero
    for monom, coeff in poly.items():
        term = target.convert(int(coeff))
        for value, exp in zip(point, monom):
            if exp:
                term *= target.convert(value) ** exp
        total += term
    return total


# ---------------------------------------------------------------------------
# Canonical strings
# ---------------------------------------------------------------------------

def _variable_rank(name: str) -> tuple:
    """Graded-lex precedence: X_n > ... > X_1 > U > Y_m > ... > Y_1 > others"""
    match = VARIABLE_PATTERN.match(name)
    if not match:
        return (0, 0, 0, name)
    letter, first, second = match.groups()
    group = {'X': 3, 'U': 2, 'Y': 1}[letter]
    return (group, int(first), int(second) if second is not None else -1, name)


def _print_rank(name: str) -> tuple:
    """Factor order inside a monomial: Y's, then U's, then X's, ascending"""
    group, first, second, _ = _variable_rank(name)
    position = {1: 0, 2: 1, 3: 2, 0: 3}[group]
    return (position, first, second, name)


def _canonical_key(names):
    ranked = sorted(range(len(names)), key=lambda i: _variable_rank(names[i]), reverse=True)

    def key(term):
        monom = term[0]
        return (sum(monom), tuple(monom[i] for i in ranked))

    return key


def canonical_terms(poly) -> list:
    """Terms of poly sorted in graded-lex descending canonical order"""
    return sorted(poly.items(), key=_canonical_key(symbol_names(poly.ring)), reverse=True)


def leading_coefficient(poly):
    """Coefficient of the first term in canonical order"""
    if not poly:
        return poly.ring.domain.zero
    return canonical_terms(poly)[0][1]


def _format_monomial(names, monom) -> str:
    factors = []
    for i in sorted(range(len(names)), key=lambda i: _print_rank(names[i])):
        exp = monom[i]
        if exp == 1:
            factors.append(names[i])
        elif exp > 1:
            factors.append(f"{names[i]}^{exp}")
    return '*'.join(factors)


def _numeric_value(coeff, domain):
    """(num, den) of a numeric coefficient, None for a genuine Y-expression"""
    if domain.is_ZZ:
        return int(coeff), 1
    if domain.is_QQ:
        return int(QQ.numer(coeff)), int(QQ.denom(coeff))
    if domain.is_FiniteField:
        return int(coeff) % domain.mod, 1
    if getattr(domain, 'is_FractionField', False):
        num, den = coeff.numer, coeff.denom
        if not (num.is_ground and den.is_ground):
            return None
        ground = domain.field.domain
        n, d = int(num.LC) if num else 0, int(den.LC)
        if ground.is_FiniteField:
            p = ground.mod
            return (n * pow(d, -1, p)) % p, 1
        if d < 0:
            n, d = -n, -d
        return n, d
    return None


def _format_number(num: int, den: int) -> str:
    return f"{num}/{den}" if den != 1 else str(num)


def _flat_terms(poly):
    """Terms of a K(Y)[X] polynomial over the Y and X variables together

    Coefficients with a constant denominator are spread into numeric terms;
    any other stays whole as a (num, den) pair of Y-polynomials.
    """
    domain = poly.ring.domain
    ground = domain.field.domain
    ynames = symbol_names(domain.field)
    ypad = (0,) * len(ynames)
    terms = []
    for monom, coeff in poly.items():
        numeric = _numeric_value(coeff, domain)
        if numeric is not None:
            terms.append((ypad + tuple(monom), numeric))
            continue
        num, den = normalize_fraction(coeff.numer, coeff.denom)
        if den.is_ground:
            for ymonom, c in num.items():
                if ground.is_FiniteField:
                    value = _numeric_value(c, ground)
                else:
                    q = QQ(int(c), int(den.LC))
                    value = int(QQ.numer(q)), int(QQ.denom(q))
                terms.append((tuple(ymonom) + tuple(monom), value))
        else:
            terms.append((ypad + tuple(monom), (num, den)))
    return ynames + symbol_names(poly.ring), terms


def format_poly(poly) -> str:
    """Canonical string of a polynomial, e.g. -1*Y1*Y2*X2 + X2 + Y2"""
    if not poly:
        return '0'
    domain = poly.ring.domain
    if getattr(domain, 'is_FractionField', False):
        names, terms = _flat_terms(poly)
    else:
        names = symbol_names(poly.ring)
        terms = [(monom, _numeric_value(coeff, domain)) for monom, coeff in poly.items()]
    pieces = []
    for index, (monom, value) in enumerate(sorted(terms, key=_canonical_key(names), reverse=True)):
        mono = _format_monomial(names, monom)
        if isinstance(value[1], PolyElement):
            body = format_fraction(*value)
            text = f"{body}*{mono}" if mono else body
            pieces.append((' + ' if index else '', text))
            continue
        num, den = value
        negative = num < 0
        magnitude = _format_number(abs(num), den)
        if not mono:
            text = magnitude
        elif abs(num) == 1 and den == 1:
            text = mono
        else:
            text = f"{magnitude}*{mono}"
        if index == 0:
            if negative:
                text = f"-1*{mono}" if (abs(num) == 1 and den == 1 and mono) else f"-{text}"
            pieces.append(('', text))
        else:
            pieces.append((' - ' if negative else ' + ', text))
    return ''.join(sep + text for sep, text in pieces)


def format_fraction(num, den) -> str:
    if den == 1:
        return format_poly(num)
    return f"({format_poly(num)})/({format_poly(den)})"


def format_coefficient(c, coefficient_field: CoefficientField) -> str:
    num, den = coefficient_field.parts(c)
    if not coefficient_field.m:
        return _format_number(num, den)
    return format_fraction(num, den)


# ---------------------------------------------------------------------------
# Ring plumbing
# ---------------------------------------------------------------------------

def ring_arith(a, b, op: str):
    """Exact add/sub/mul of two polynomials of the same ring"""
    if a.ring != b.ring:
        raise StructuralException("operands live in different rings")
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    raise StructuralException(f"unknown operation: {op}")


def embed(poly, target):
    """Map poly into target ring by variable name; absent variables must not occur"""
    source_names = symbol_names(poly.ring)
    target_names = symbol_names(target)
    positions = []
    for i, name in enumerate(source_names):
        positions.append(target_names.index(name) if name in target_names else None)
    terms = {}
    for monom, coeff in poly.items():
        exps = [0] * target.ngens
        for i, exp in enumerate(monom):
            if not exp:
                continue
            if positions[i] is None:
                raise StructuralException(f"variable {source_names[i]} absent from target ring")
            exps[positions[i]] = exp
        terms[tuple(exps)] = target.domain.convert(coeff, poly.ring.domain)
    return target.from_dict(terms)


def substitute(poly, images: dict, target):
    """Replace variables by polynomials of target; unnamed variables map by name"""
    target_names = symbol_names(target)
    source_names = symbol_names(poly.ring)
    generators = []
    for name in source_names:
        if name in images:
            image = images[name]
            generators.append(image if isinstance(image, PolyElement) else target(image))
        elif name in target_names:
            generators.append(target.gens[target_names.index(name)])
        else:
            raise StructuralException(f"no image for variable {name}")
    result = target.zero
    for monom, coeff in poly.items():
        term = target(target.domain.convert(coeff, poly.ring.domain))
        for generator, exp in zip(generators, monom):
            if exp:
                term *= generator ** exp
        result += term
    return result


def to_xring(f, m: int, base: CoefficientField, xring):
    """Move a QQ[Y1..Ym, X1..Xn] generator into K[Xn..X1] with K = base"""
    terms = {}
    domain = f.ring.domain
    for monom, coeff in f.items():
        num, den = _numeric_value(coeff, domain)
        value = base.element(tuple(monom[:m]), num, den)
        key = tuple(reversed(monom[m:]))
        terms[key] = terms[key] + value if key in terms else value
    return xring.from_dict(terms)


def coefficients_in(poly, index: int) -> dict:
    """Coefficients of poly as a polynomial in generator `index` (same ring)"""
    buckets = {}
    for monom, coeff in poly.items():
        exps = list(monom)
        degree = exps[index]
        exps[index] = 0
        buckets.setdefault(degree, {})[tuple(exps)] = coeff
    return {degree: poly.ring.from_dict(terms) for degree, terms in buckets.items()}


def degree_in(poly, index: int) -> int:
    if not poly:
        return -1
    return max(monom[index] for monom in poly.itermonoms())


def total_degree(poly) -> int:
    if isinstance(poly, int) or not poly:
        return 0
    return max(sum(monom) for monom in poly.itermonoms())


def generator_index(ring, var) -> int:
    if isinstance(var, str):
        names = symbol_names(ring)
        if var not in names:
            raise StructuralException(f"unknown variable {var}")
        return names.index(var)
    return ring.gens.index(var)


# ---------------------------------------------------------------------------
# Linear algebra over ring elements
# ---------------------------------------------------------------------------

def determinant(matrix, domain):
    """Determinant of a square matrix of domain elements (fraction-free over rings)"""
    size = len(matrix)
    if size == 0:
        return domain.one
    return DomainMatrix([list(row) for row in matrix], (size, size), domain).det()


def solve_linear(matrix, rhs, domain):
    """Solve matrix * x = rhs over a field domain

    Returns (solution, None), or (None, kernel_vector) when matrix is singular.
    """
    size = len(matrix)
    augmented = DomainMatrix([list(row) + [value] for row, value in zip(matrix, rhs)],
                             (size, size + 1), domain)
    reduced, pivots = augmented.rref()
    if tuple(pivots) == tuple(range(size)):
        rows = reduced.to_list()
        return [rows[i][size] for i in range(size)], None
    kernel = DomainMatrix([list(row) for row in matrix], (size, size), domain).nullspace()
    return None, kernel.to_list()[0]


# ---------------------------------------------------------------------------
# Resultants, gcds, contents
# ---------------------------------------------------------------------------

def sylvester_matrix(f, g, index: int) -> list:
    fc = coefficients_in(f, index)
    gc = coefficients_in(g, index)
    df, dg = max(fc), max(gc)
    zero = f.ring.zero
    size = df + dg
    matrix = [[zero] * size for _ in range(size)]
    for i in range(dg):
        for k in range(df + 1):
            matrix[i][i + k] = fc.get(df - k, zero)
    for i in range(df):
        for k in range(dg + 1):
            matrix[dg + i][i + k] = gc.get(dg - k, zero)
    return matrix


def resultant(f, g, var):
    """Sylvester resultant of f and g in var, with res(c, g) = c^deg(g)"""
    if f.ring != g.ring:
        raise StructuralException("operands live in different rings")
    if not f or not g:
        raise DomainException("resultant of a zero polynomial")
    index = generator_index(f.ring, var)
    if degree_in(f, index) == 0 and degree_in(g, index) == 0:
        raise DomainException("both operands are constant in the eliminated variable")
    return determinant(sylvester_matrix(f, g, index), f.ring.to_domain())


def _sign_normalize(poly):
    return -poly if leading_coefficient(poly) < 0 else poly


def _require_integral(poly):
    domain = poly.ring.domain
    if domain.is_ZZ:
        return poly
    if domain.is_QQ and all(QQ.denom(c) == 1 for c in poly.itercoeffs()):
        return poly.set_ring(poly.ring.clone(domain=ZZ))
    raise DomainException("expected a polynomial with integer coefficients")


def gcd_mpoly(f, g):
    """gcd in ZZ[...] with positive canonical leading coefficient"""
    if not f and not g:
        raise DomainException("gcd of two zero polynomials")
    f, g = _require_integral(f), _require_integral(g)
    if not f:
        return _sign_normalize(g)
    if not g:
        return _sign_normalize(f)
    return _sign_normalize(f.gcd(g))


def content_primpart(f, main=None):
    """Split f = content * primitive with positive canonical leading coefficient

    With main=None the content is the integer gcd of all coefficients. With a
    list of main variable names the content is the gcd, in the remaining
    variables, of the coefficients of f as a polynomial in the main ones.
    """
    if not f:
        raise DomainException("content of the zero polynomial")
    f = _require_integral(f)
    if main is None:
        content = f.content()
        if leading_coefficient(f) < 0:
            content = -content
        return int(content), f.quo_ground(content)
    indices = [generator_index(f.ring, name) for name in main]
    buckets = {}
    for monom, coeff in f.items():
        key = tuple(monom[i] for i in indices)
        rest = list(monom)
        for i in indices:
            rest[i] = 0
        buckets.setdefault(key, {})[tuple(rest)] = coeff
    coefficients = [f.ring.from_dict(terms) for terms in buckets.values()]
    content = reduce(gcd_mpoly, coefficients)
    if leading_coefficient(f) < 0:
        content = -content
    return content, f.exquo(content)


# ---------------------------------------------------------------------------
# Valuations and heights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Valuation:
    """Absolute value on QQ(Y): archimedean, p-adic, S-adic or degree"""
    kind: str
    prime: Optional[int] = None
    factor: Optional[PolyElement] = field(default=None, compare=False)
    parameters: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in ('archimedean', 'p-adic', 'S-adic', 'deg'):
            raise StructuralException(f"unknown valuation kind: {self.kind}")
        if self.kind == 'p-adic' and not (self.prime and isprime(self.prime)):
            raise DomainException(f"p-adic valuation needs a prime, got {self.prime}")
        if self.kind == 'S-adic':
            if self.factor is None or total_degree(self.factor) == 0:
                raise DomainException("S-adic valuation needs a non-constant factor")
            _, factors = self.factor.factor_list()
            if len(factors) != 1 or factors[0][1] != 1 or self.factor.content() != 1:
                raise DomainException("S-adic valuation needs an irreducible primitive factor")


def _rational_parts(coeff, domain):
    numeric = _numeric_value(coeff, domain)
    if numeric is None:
        raise DomainException("archimedean and p-adic sizes need numeric coefficients")
    return numeric


def log_abs_rational(num: int, den: int = 1):
    """ln|num/den| at working precision"""
    return mpmath.log(abs(num)) - mpmath.log(den)


def _parameter_indices(ring, parameters):
    names = symbol_names(ring)
    if parameters is None:
        return [i for i, name in enumerate(names) if name.startswith('Y')]
    return [names.index(name) for name in parameters]


def _order_of(poly, factor) -> int:
    if not poly:
        raise DomainException("order of the zero polynomial")
    order = 0
    while True:
        quotient, remainder = poly.div(factor)
        if remainder:
            return order
        poly = quotient
        order += 1


def _group_by_main(poly, parameter_indices):
    buckets = {}
    for monom, coeff in poly.items():
        key = tuple(e for i, e in enumerate(monom) if i not in parameter_indices)
        rest = tuple(e if i in parameter_indices else 0 for i, e in enumerate(monom))
        buckets.setdefault(key, {})[rest] = coeff
    return [poly.ring.from_dict(terms) for terms in buckets.values()]


def log_abs(f, v: Valuation):
    """Natural-log size l_v(f) = max over nonzero coefficients of l_v(c)"""
    if not f:
        raise DomainException("size of the zero polynomial")
    domain = f.ring.domain
    fractional = getattr(domain, 'is_FractionField', False)
    if v.kind == 'archimedean':
        return max(log_abs_rational(*_rational_parts(c, domain)) for c in f.itercoeffs())
    if v.kind == 'p-adic':
        def p_size(c):
            num, den = _rational_parts(c, domain)
            order = multiplicity(v.prime, abs(num)) - multiplicity(v.prime, den)
            return -order * mpmath.log(v.prime)
        return max(p_size(c) for c in f.itercoeffs())
    if v.kind == 'deg':
        if fractional:
            return mpmath.mpf(max(total_degree(c.numer) - total_degree(c.denom)
                                  for c in f.itercoeffs()))
        indices = _parameter_indices(f.ring, v.parameters)
        return mpmath.mpf(max(sum(monom[i] for i in indices) for monom in f.itermonoms()))
    s_degree = total_degree(v.factor)
    if fractional:
        factor = embed(v.factor, domain.field.ring)
        return max(mpmath.mpf(-s_degree * (_order_of(c.numer, factor) - _order_of(c.denom, factor)))
                   for c in f.itercoeffs())
    factor = embed(v.factor, f.ring)
    indices = _parameter_indices(f.ring, v.parameters)
    return max(mpmath.mpf(-s_degree * _order_of(c, factor)) for c in _group_by_main(f, indices))


def height(f):
    """Archimedean height: max ln|c| over coefficients"""
    return log_abs(f, Valuation('archimedean'))


def coefficient_heights(poly, coefficient_field: CoefficientField):
    """Max archimedean height of the numerators and denominators of poly's coefficients"""
    best = mpmath.mpf(0)
    for c in poly.itercoeffs():
        num, den = coefficient_field.parts(c)
        if coefficient_field.m:
            sizes = [height(num), height(den)]
        else:
            sizes = [log_abs_rational(num) if num else mpmath.mpf(0), log_abs_rational(den)]
        best = max([best] + sizes)
    return best


def coefficient_degrees(poly, coefficient_field: CoefficientField) -> int:
    """Max total Y-degree of the numerators and denominators of poly's coefficients"""
    if not coefficient_field.m:
        return 0
    best = 0
    for c in poly.itercoeffs():
        num, den = coefficient_field.parts(c)
        best = max(best, total_degree(num), total_degree(den))
    return best


def delta_of(poly, coefficient_field: CoefficientField) -> int:
    """max over coefficients a/b of deg(a) + deg(b)"""
    if not coefficient_field.m or not poly:
        return 0
    best = 0
    for c in poly.itercoeffs():
        num, den = coefficient_field.parts(c)
        best = max(best, total_degree(num) + total_degree(den))
    return best
