"""
Chow forms of zero-dimensional sets (monic and primitive), the denominator
predictor a_n, and the two substitution operators on multi-homogeneous forms
"""
from dataclasses import dataclass
from functools import reduce
from math import lcm
from typing import Optional

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from config import log
from algebra.bounds import chow_height_bound, constants
from algebra.exceptions import (
    ContradictsTheoremException,
    NonRadicalException,
    StructuralException,
)
from algebra.poly_core import (
    CoefficientField,
    coefficient_degrees,
    content_primpart,
    determinant,
    embed,
    format_poly,
    height,
    leading_coefficient,
    substitute,
    symbol_names,
    total_degree,
    y_names,
)
from algebra.triangular import (
    TriangularSet,
    iterated_resultants,
    multiplication_matrix,
    normal_form,
    quotient_basis,
    regular_chain,
)


def u_names(n: int) -> list:
    return [f"U{i}" for i in range(n + 1)]


@dataclass(frozen=True)
class ChowForm0:
    """Chow form of a zero-dimensional set, in U0..Un"""
    body: object
    flavor: str
    base: CoefficientField
    n: int
    degree: int
    a_n: Optional[object] = None

    def format(self) -> str:
        return format_poly(self.body)


@dataclass(frozen=True)
class MultiChow:
    """Multi-homogeneous form in m+1 groups U<i>_0..U<i>_<m+n>"""
    m: int
    n: int
    body: object

    def __post_init__(self):
        expected = multichow_names(self.m, self.n)
        if symbol_names(self.body.ring) != expected:
            raise StructuralException(
                f"expected {self.m + 1} groups of arity {self.m + self.n + 1}")
        arity = self.m + self.n + 1
        group_degrees = set()
        for monom in self.body.itermonoms():
            group_degrees.add(tuple(sum(monom[g * arity:(g + 1) * arity])
                                    for g in range(self.m + 1)))
        if len(group_degrees) > 1 or any(len(set(d)) > 1 for d in group_degrees):
            raise StructuralException("form is not multi-homogeneous of equal group degrees")


def multichow_names(m: int, n: int) -> list:
    return [f"U{i}_{j}" for i in range(m + 1) for j in range(m + n + 1)]


def multichow_ring(m: int, n: int):
    return PolyRing(multichow_names(m, n), ZZ, grlex)


def monic_chow(t: TriangularSet) -> ChowForm0:
    """det(U0*Id + U1*M1 + ... + Un*Mn) on the quotient basis"""
    if not iterated_resultants(t).radical:
        raise NonRadicalException("the triangular set is not radical")
    n = t.n
    uring = PolyRing(u_names(n), t.ring.domain, grlex)
    basis = quotient_basis(t)
    size = len(basis)
    matrices = [multiplication_matrix(t.variable(level), t, basis) for level in range(1, n + 1)]
    u = uring.gens
    pencil = []
    for r in range(size):
        row = []
        for c in range(size):
            entry = u[0] if r == c else uring.zero
            for level in range(1, n + 1):
                value = matrices[level - 1][r][c]
                if value:
                    entry += u[level] * value
            row.append(entry)
        pencil.append(row)
    log('Chow', f"determinant of a {size}x{size} pencil")
    body = determinant(pencil, uring.to_domain())
    return ChowForm0(body, 'monic', t.base, n, size)


def primitive_ring(base: CoefficientField, n: int):
    return PolyRing(y_names(base.m) + u_names(n), ZZ, grlex)


def primitive_chow(c: ChowForm0) -> ChowForm0:
    """Clear denominators, divide by the ZZ[Y]-content, make a_n positive"""
    if c.flavor != 'monic':
        raise StructuralException("primitive_chow expects a monic Chow form")
    base = c.base
    if base.p is not None:
        raise StructuralException("primitive Chow forms live over QQ(Y) or QQ")
    target = primitive_ring(base, c.n)
    m = base.m
    parts = {monom: base.parts(coeff) for monom, coeff in c.body.items()}
    if m:
        common = reduce(lambda a, b: a.lcm(b), (den for _, den in parts.values()))
        terms = {}
        for monom, (num, den) in parts.items():
            scaled = num * common.exquo(den)
            for ymonom, value in scaled.items():
                terms[tuple(ymonom) + tuple(monom)] = value
    else:
        common = reduce(lcm, (den for _, den in parts.values()), 1)
        terms = {tuple(monom): num * (common // den) for monom, (num, den) in parts.items()}
    integral = target.from_dict(terms)
    _, primitive = content_primpart(integral, main=u_names(c.n))
    a_n = _u0_coefficient(primitive, m, c.degree)
    if leading_coefficient(a_n) < 0:
        primitive, a_n = -primitive, -a_n
    if m:
        a_n = embed(a_n, base.yring)
    else:
        a_n = int(a_n.LC) if a_n else 0
    return ChowForm0(primitive, 'primitive', base, c.n, c.degree, a_n)


def _u0_coefficient(primitive, m: int, degree: int):
    """Coefficient of U0^degree, kept in the primitive ring"""
    terms = {}
    for monom, coeff in primitive.items():
        if monom[m] == degree:
            exps = list(monom)
            exps[m] = 0
            terms[tuple(exps)] = coeff
    return primitive.ring.from_dict(terms)


def root_residues(c: ChowForm0, t: TriangularSet) -> list:
    """Nonzero normal forms left by U0 <- -(U1 X1 + ... + Un Xn); empty means the root property holds"""
    n = t.n
    xnames = symbol_names(t.ring)
    mixed = PolyRing(xnames + u_names(n)[1:], t.ring.domain, grlex)
    names = symbol_names(mixed)
    linear = mixed.zero
    for level in range(1, n + 1):
        linear += mixed.gens[names.index(f"U{level}")] * mixed.gens[names.index(f"X{level}")]
    substituted = substitute(c.body, {'U0': -linear}, mixed)
    count = len(xnames)
    buckets = {}
    for monom, coeff in substituted.items():
        buckets.setdefault(monom[count:], {})[tuple(monom[:count])] = coeff
    residues = []
    for terms in buckets.values():
        residue = normal_form(t.ring.from_dict(terms), t)
        if residue:
            residues.append(residue)
    return residues


def _as_scalar(a_n, base: CoefficientField):
    if base.m:
        return base.from_parts(a_n, base.yring.one)
    return base.domain.convert(a_n)


def _integrality(poly, base: CoefficientField) -> list:
    """Coefficients of poly that are not in ZZ[Y]"""
    return [base.format(c) for c in poly.itercoeffs() if not base.is_integral(c)]


def denominator_check(t: TriangularSet, chain, scaled, a_n, degree_bound: int,
                      height_bound_hv=None, primitive=None) -> dict:
    """a_n*N_n and a_n^G_n * T~_n integral with Y-degrees within d_V and G_n*d_V"""
    base = t.base
    g_n = constants(list(t.degrees))['G_n']['value']
    a = _as_scalar(a_n, base)
    scaled_n = chain.polys[-1] * a
    scaled_t = scaled.polys[-1] * a ** g_n
    checks = {}
    witnesses = {}

    bad = _integrality(scaled_n, base)
    checks['aN_integral'] = not bad
    if bad:
        witnesses['aN_integral'] = bad
    degree = coefficient_degrees(scaled_n, base)
    checks['aN_degree'] = degree <= degree_bound
    witnesses['aN_degree'] = {'observed': degree, 'bound': degree_bound}

    bad = _integrality(scaled_t, base)
    checks['aT_integral'] = not bad
    if bad:
        witnesses['aT_integral'] = bad
    degree = coefficient_degrees(scaled_t, base)
    checks['aT_degree'] = degree <= g_n * degree_bound
    witnesses['aT_degree'] = {'observed': degree, 'bound': g_n * degree_bound, 'G_n': g_n}

    an_degree = total_degree(a_n) if base.m else 0
    checks['an_degree'] = an_degree <= degree_bound
    witnesses['an_degree'] = {'observed': an_degree, 'bound': degree_bound}

    if height_bound_hv is not None and primitive is not None:
        observed = height(primitive.body)
        bound = chow_height_bound(base.m, t.n, degree_bound, height_bound_hv)['value_ln']
        checks['chow_height'] = observed <= bound
        witnesses['chow_height'] = {'observed': float(observed), 'bound': float(bound)}

    return {
        'pass': all(checks.values()),
        'checks': checks,
        'witnesses': witnesses,
        'G_n': g_n,
        'aN': format_poly(scaled_n),
    }


def denominator_check_levels(t: TriangularSet, degree_bound: int, height_bound_hv=None) -> list:
    """Run denominator_check on every projection T_1..T_l"""
    reports = []
    for level in range(1, t.n + 1):
        prefix = t.prefix(level)
        primitive = primitive_chow(monic_chow(prefix))
        report = denominator_check(prefix, regular_chain(prefix), iterated_resultants(prefix),
                                   primitive.a_n, degree_bound, height_bound_hv, primitive)
        report['level'] = level
        reports.append(report)
    return reports


def _target_ring(m: int, n: int, with_epsilon: bool):
    names = y_names(m) + u_names(n)
    names += [f"U{i}_{m + k}" for i in range(1, m + 1) for k in range(1, n + 1)]
    if with_epsilon:
        names.append('eps')
    return PolyRing(names, ZZ, grlex)


def _images(m: int, n: int, target, with_epsilon: bool) -> dict:
    names = symbol_names(target)
    gen = lambda name: target.gens[names.index(name)]
    images = {}
    for i in range(m + 1):
        images[f"U{i}_0"] = gen('U0') if i == 0 else gen(f"Y{i}")
        for j in range(1, m + 1):
            images[f"U{i}_{j}"] = target(-1) if (i and i == j) else target.zero
        for k in range(1, n + 1):
            name = f"U{i}_{m + k}"
            if i == 0:
                images[name] = gen(f"U{k}")
            elif with_epsilon:
                images[name] = gen('eps') * gen(name)
            else:
                images[name] = target.zero
    return images


def substitute_kps(c: MultiChow):
    """U(0) <- (U0, Y1..Ym), U(Y) <- -Id, first row of U(X) <- U1..Un, other rows 0"""
    target = _target_ring(c.m, c.n, False)
    result = substitute(c.body, _images(c.m, c.n, target, False), target)
    if not result and c.body:
        log('Chow', "substitution annihilated the form (projection not dominant)")
    return result


def substitute_epsilon(c: MultiChow):
    """Same as substitute_kps but row i of U(X) becomes eps * U<i>_<m+k>

    Returns (C_eps, C_0, valuation) with C_0 the lowest coefficient in eps.
    """
    target = _target_ring(c.m, c.n, True)
    result = substitute(c.body, _images(c.m, c.n, target, True), target)
    if not c.body:
        return result, result, 0
    if not result:
        raise ContradictsTheoremException("epsilon substitution of a nonzero form vanished")
    eps = symbol_names(target).index('eps')
    valuation = min(monom[eps] for monom in result.itermonoms())
    lowest = {}
    for monom, coeff in result.items():
        if monom[eps] == valuation:
            exps = list(monom)
            exps[eps] = 0
            lowest[tuple(exps)] = coeff
    return result, target.from_dict(lowest), valuation


def divides(a, b) -> bool:
    """Exact divisibility a | b, a's variables embedded into b's ring by name"""
    a = embed(a, b.ring)
    if not a:
        return not b
    return not b.rem(a)
