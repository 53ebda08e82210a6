"""
Triangular sets over K = QQ(Y), GF(p)(Y), QQ or GF(p): normal forms,
regular chains, iterated resultants, the delta measure and specialization
"""
from dataclasses import dataclass
from itertools import product
from typing import Optional

from sympy.polys.domains import QQ

from config import log
from algebra.exceptions import (
    DomainException,
    NonRadicalException,
    StructuralException,
    ZeroDivisorException,
)
from algebra.poly_core import (
    CoefficientField,
    canonical_poly,
    degree_in,
    delta_of,
    format_poly,
    resultant,
    solve_linear,
)


@dataclass(frozen=True)
class TriangularSet:
    """Monic triangular set T_1..T_n in K[X1 < ... < Xn], reduced lex basis"""
    base: CoefficientField
    ring: object
    polys: tuple

    def __post_init__(self):
        n = self.ring.ngens
        if len(self.polys) > n:
            raise StructuralException("more polynomials than variables")
        for level, poly in enumerate(self.polys, start=1):
            if poly.ring != self.ring:
                raise StructuralException(f"T_{level} lives in another ring")
            index = n - level
            if any(monom[i] for monom in poly.itermonoms() for i in range(index)):
                raise StructuralException(f"T_{level} involves a variable above X{level}")
            degree = degree_in(poly, index)
            if degree < 1:
                raise StructuralException(f"T_{level} has degree 0 in X{level}")
            top = [(monom, coeff) for monom, coeff in poly.items() if monom[index] == degree]
            pure = tuple(degree if i == index else 0 for i in range(n))
            if len(top) != 1 or top[0][0] != pure or not self.base.is_one(top[0][1]):
                raise StructuralException(f"T_{level} is not monic in X{level}")
            for lower in range(1, level):
                if degree_in(poly, n - lower) >= degree_in(self.polys[lower - 1], n - lower):
                    raise StructuralException(f"T_{level} is not reduced in X{lower}")

    @property
    def n(self) -> int:
        return len(self.polys)

    @property
    def degrees(self) -> tuple:
        return tuple(degree_in(poly, self.index(level))
                     for level, poly in enumerate(self.polys, start=1))

    def index(self, level: int) -> int:
        """Generator index of X_level (generators are stored X_n, ..., X_1)"""
        return self.ring.ngens - level

    def variable(self, level: int):
        return self.ring.gens[self.index(level)]

    def prefix(self, level: int) -> 'TriangularSet':
        return TriangularSet(self.base, self.ring, self.polys[:level])

    def format(self) -> list:
        return [format_poly(poly) for poly in self.polys]


@dataclass(frozen=True)
class RegularChain:
    denoms: tuple
    polys: tuple
    source: TriangularSet

    def format(self) -> dict:
        return {
            'D': [format_poly(d) for d in self.denoms],
            'N': [format_poly(p) for p in self.polys],
        }


@dataclass(frozen=True)
class ScaledSet:
    resultants: tuple
    polys: tuple
    source: TriangularSet

    @property
    def radical(self) -> bool:
        return all(self.resultants)


@dataclass(frozen=True)
class Specialization:
    point: tuple
    tset: Optional[TriangularSet]
    good: bool
    reason: Optional[str] = None


def _check_ring(a, t: TriangularSet):
    if a.ring != t.ring:
        raise StructuralException("polynomial and triangular set live in different rings")


def normal_form(a, t: TriangularSet):
    """Reduce a modulo T_n, then T_{n-1}, ..., then T_1"""
    _check_ring(a, t)
    for poly in reversed(t.polys):
        a = a.rem(poly)
    return a


def quotient_basis(t: TriangularSet) -> list:
    """Monomials X^e with e_r < d_r, as exponent tuples of t.ring; 1 comes first"""
    n = t.ring.ngens
    basis = []
    for exps in product(*(range(d) for d in t.degrees)):
        monom = [0] * n
        for level, exp in enumerate(exps, start=1):
            monom[t.index(level)] = exp
        basis.append(tuple(monom))
    return sorted(basis, key=lambda mo: tuple(reversed(mo)))


def multiplication_matrix(f, t: TriangularSet, basis=None) -> list:
    """Matrix of multiplication by f on the quotient basis (column j = nf(f*b_j))"""
    basis = basis or quotient_basis(t)
    zero = t.ring.domain.zero
    columns = []
    for monom in basis:
        image = normal_form(f.mul_monom(monom), t)
        columns.append([image.get(row, zero) for row in basis])
    size = len(basis)
    return [[columns[j][i] for j in range(size)] for i in range(size)]


def invert_modulo(f, t: TriangularSet):
    """Return u with nf(f*u, t) = 1, or raise ZeroDivisorException with a witness"""
    g = normal_form(f, t)
    if not g:
        raise DomainException("cannot invert an element equal to zero modulo the set")
    ring = t.ring
    domain = ring.domain
    basis = quotient_basis(t)
    matrix = multiplication_matrix(g, t, basis)
    rhs = [domain.one] + [domain.zero] * (len(basis) - 1)
    solution, kernel = solve_linear(matrix, rhs, domain)
    if solution is None:
        witness = ring.from_dict(dict(zip(basis, kernel)))
        raise ZeroDivisorException(
            f"{format_poly(g)} is a zero-divisor modulo the set", witness=witness)
    return canonical_poly(ring.from_dict(dict(zip(basis, solution))), t.base)


def _derivative_product(t: TriangularSet, upto: int):
    product_ = t.ring.one
    for level in range(1, upto + 1):
        product_ *= t.polys[level - 1].diff(t.variable(level))
    return product_


def regular_chain(t: TriangularSet) -> RegularChain:
    """D_l = prod dT_i/dX_i mod <T_<l>, N_l = D_l * T_l mod <T_<l>"""
    denoms = [t.ring.one]
    polys = [t.polys[0]]
    for level in range(2, t.n + 1):
        lower = t.prefix(level - 1)
        d = normal_form(_derivative_product(t, level - 1), lower)
        if not d:
            raise NonRadicalException(f"D_{level} vanishes modulo T_1..T_{level - 1}")
        try:
            invert_modulo(d, lower)
        except ZeroDivisorException as e:
            log('Chain', f"D_{level} is a zero-divisor, witness {format_poly(e.witness)}")
            raise NonRadicalException(f"D_{level} is a zero-divisor: {e}")
        denoms.append(d)
        polys.append(canonical_poly(normal_form(d * t.polys[level - 1], lower), t.base))
    return RegularChain(tuple(denoms), tuple(polys), t)


def iterated_resultant(t: TriangularSet, level: int):
    """e_level = res(...res(dT_l/dX_l, T_l, X_l)..., T_1, X_1), as an element of K"""
    ring = t.ring
    r = t.polys[level - 1].diff(t.variable(level))
    for j in range(level, 0, -1):
        if not r:
            return ring.domain.zero
        r = resultant(r, t.polys[j - 1], t.variable(j))
    return r.LC if r else ring.domain.zero


def iterated_resultants(t: TriangularSet) -> ScaledSet:
    resultants = tuple(iterated_resultant(t, level) for level in range(1, t.n + 1))
    scale = t.ring.domain.one
    polys = []
    for level, poly in enumerate(t.polys, start=1):
        polys.append(poly * scale)
        scale *= resultants[level - 1]
    scaled = ScaledSet(resultants, tuple(polys), t)
    if not scaled.radical:
        log('Chain', f"iterated resultants {resultants} flag a non-radical set")
    return scaled


def delta_measure(t: TriangularSet) -> list:
    return [delta_of(poly, t.base) for poly in t.polys]


def specialize_poly(a, base: CoefficientField, point, target):
    """Substitute Y <- point in every coefficient; None when a denominator vanishes"""
    terms = {}
    for monom, coeff in a.items():
        value = base.evaluate(coeff, point)
        if value is None:
            return None
        if value:
            terms[monom] = target.domain.convert(value, QQ)
    return target.from_dict(terms)


def specialize(t: TriangularSet, point) -> Specialization:
    """Specialize a QQ(Y) triangular set at an integer point, with a goodness verdict"""
    base = t.base
    if base.p is not None or not base.m:
        raise StructuralException("specialization needs a QQ(Y) triangular set")
    point = tuple(int(v) for v in point)
    if len(point) != base.m:
        raise StructuralException(f"expected {base.m} coordinates, got {len(point)}")
    target_base = CoefficientField(0)
    target = target_base.xring(t.ring.ngens)
    polys = []
    for poly in t.polys:
        for coeff in poly.itercoeffs():
            _, den = base.parts(coeff)
            if base.evaluate(coeff, point) is None:
                return Specialization(point, None, False,
                                      f"DenominatorVanishes: {format_poly(den)}")
        polys.append(specialize_poly(poly, base, point, target))
    specialized = TriangularSet(target_base, target, tuple(polys))
    scaled = iterated_resultants(specialized)
    if not scaled.radical:
        return Specialization(point, specialized, False, "IteratedResultantVanishes")
    return Specialization(point, specialized, True)
