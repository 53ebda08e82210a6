"""
Lazard-shape lex triangular sets of zero-dimensional systems over K(Y) or K
"""
from dataclasses import dataclass
from functools import reduce
from math import lcm

import mpmath
from sympy.polys.domains import QQ

from config import log
from algebra.exceptions import (
    DomainException,
    NotLazardShapeException,
    NotZeroDimException,
    StructuralException,
    ZeroDivisorException,
)
from algebra.poly_core import (
    CoefficientField,
    canonical_poly,
    degree_in,
    delta_of,
    log_abs_rational,
    resultant,
    symbol_names,
    to_xring,
    total_degree,
)
from algebra.triangular import TriangularSet, invert_modulo, normal_form


@dataclass(frozen=True)
class SystemInput:
    """Generators in QQ[Y1..Ym, X1..Xn] (graded-lex ring from poly_core.system_ring)"""
    m: int
    n: int
    gens: tuple
    ring: object

    def __post_init__(self):
        if any(not g for g in self.gens):
            raise DomainException("zero generator in system")
        if any(g.ring != self.ring for g in self.gens):
            raise StructuralException("generators live in different rings")
        if self.ring.ngens != self.m + self.n:
            raise StructuralException("ring does not match m + n")

    @property
    def degree(self) -> int:
        """Max total degree in Y and X of the generators"""
        return max(total_degree(g) for g in self.gens)

    @property
    def height(self):
        """Max ln|c| over the generators after clearing rational denominators"""
        best = mpmath.mpf(0)
        for g in self.gens:
            scale = reduce(lcm, (int(QQ.denom(c)) for c in g.itercoeffs()), 1)
            for c in g.itercoeffs():
                best = max(best, log_abs_rational(int(QQ.numer(c)) * (scale // int(QQ.denom(c)))))
        return best

    def variables(self) -> list:
        return symbol_names(self.ring)


def lift(sys: SystemInput, base: CoefficientField):
    """Generators as elements of K[Xn..X1]"""
    xring = base.xring(sys.n)
    gens = [to_xring(g, sys.m, base, xring) for g in sys.gens]
    return xring, [g for g in gens if g]


def spoly(f, g):
    """Return the s-polynomial of monic polynomials f and g"""
    R = f.ring
    lcm_ = R.monomial_lcm(f.LM, g.LM)
    return f.mul_monom(R.monomial_div(lcm_, f.LM)) - g.mul_monom(R.monomial_div(lcm_, g.LM))


def update(G, P, f):
    """Add f to the basis with Gebauer-Moeller pair elimination"""
    R = f.ring
    lmf = f.LM
    lmG = [g.LM for g in G]
    lcm_ = R.monomial_lcm
    mul = R.monomial_mul
    div = R.monomial_div
    P = {p for p in P if (not div(lcm_(lmG[p[0]], lmG[p[1]]), lmf) or
                          lcm_(lmG[p[0]], lmG[p[1]]) == lcm_(lmG[p[0]], lmf) or
                          lcm_(lmG[p[0]], lmG[p[1]]) == lcm_(lmG[p[1]], lmf))}
    lcm_dict = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm_(lmG[i], lmf), []).append(i)
    minimalized = []
    for L in sorted(lcm_dict.keys(), key=R.order):
        if all(not div(L, L_) for L_ in minimalized):
            minimalized.append(L)
    new_pairs = set()
    for L in minimalized:
        # product criterion
        if not any(lcm_(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            new_pairs.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | new_pairs


def select(G, P):
    """Normal strategy: the pair with the smallest lcm, ties broken by index"""
    R = G[0].ring
    return min(P, key=lambda p: (R.order(R.monomial_lcm(G[p[0]].LM, G[p[1]].LM)), p))


def minimalize(G):
    """Return a minimal Groebner basis from an arbitrary Groebner basis G"""
    R = G[0].ring
    Gmin = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in Gmin):
            Gmin.append(f)
    return Gmin


def interreduce(G):
    """Return the reduced Groebner basis from a minimal Groebner basis G"""
    return [G[i].rem(G[:i] + G[i + 1:]).monic() for i in range(len(G))]


def buchberger(F):
    """Reduced lex Groebner basis of F"""
    G, P = [], set()
    for f in F:
        G, P = update(G, P, f.monic())
    while P:
        i, j = select(G, P)
        P.remove((i, j))
        r = spoly(G[i], G[j]).rem(G)
        if r:
            G, P = update(G, P, r.monic())
    return interreduce(minimalize(G))


def _shape(base: CoefficientField, xring, basis) -> TriangularSet:
    n = xring.ngens
    zero_monom = (0,) * n
    if any(g.LM == zero_monom for g in basis):
        raise NotZeroDimException("the system is inconsistent (unit ideal)")
    by_level = {}
    for g in basis:
        support = [i for i, e in enumerate(g.LM) if e]
        if len(support) == 1:
            by_level[n - support[0]] = g
    missing = [level for level in range(1, n + 1) if level not in by_level]
    if missing:
        raise NotZeroDimException(f"no elimination polynomial for X{missing[0]}")
    if len(basis) != n:
        raise NotLazardShapeException(
            f"reduced lex basis has {len(basis)} elements for {n} variables")
    return TriangularSet(base, xring,
                         tuple(canonical_poly(by_level[level], base) for level in range(1, n + 1)))


def triangularize(sys: SystemInput, base: CoefficientField = None) -> TriangularSet:
    """Reduced lex Groebner basis in Lazard shape for X1 < ... < Xn"""
    base = base or CoefficientField(sys.m)
    xring, gens = lift(sys, base)
    if not gens:
        raise NotZeroDimException("all generators vanish")
    log('Solve', f"Buchberger over {base.tag} on {len(gens)} generators")
    basis = buchberger(gens)
    tset = _shape(base, xring, basis)
    log('Solve', f"triangular set with degrees {tset.degrees}")
    return tset


def _univariate_gcd(f, g):
    while g:
        f, g = g, f.rem(g)
    return f.monic() if f else f


def _squarefree_part(f, var):
    return f.exquo(_univariate_gcd(f, f.diff(var))).monic()


def _leading_in(p, var_index: int):
    """(degree, coefficient) of p in generator var_index; the coefficient stays in p.ring"""
    top = degree_in(p, var_index)
    terms = {tuple(0 if i == var_index else e for i, e in enumerate(mo)): c
             for mo, c in p.items() if mo[var_index] == top}
    return top, p.ring.from_dict(terms)


def _monic_modulo(b, lower, var_index):
    _, lc = _leading_in(b, var_index)
    try:
        inverse = invert_modulo(lc, lower)
    except ZeroDivisorException as e:
        raise NotLazardShapeException(f"leading coefficient is a zero-divisor: {e}")
    return normal_form(inverse * b, lower)


def _split_leading(p, c, var_index: int) -> list:
    """Split the squarefree eliminant c so p has an invertible leading coefficient on each factor

    Returns (factor, p mod factor) pairs; on a factor where every coefficient
    of p vanishes the second entry is zero.
    """
    out = []
    stack = [(c, p.rem(c))]
    while stack:
        c, p = stack.pop()
        if not p:
            out.append((c, p))
            continue
        top, lc = _leading_in(p, var_index)
        g = _univariate_gcd(lc, c)
        if total_degree(g) < 1:
            out.append((c, p))
            continue
        rest = c.exquo(g)
        out.append((rest, p.rem(rest)))
        stack.append((g, (p - lc * p.ring.gens[var_index] ** top).rem(g)))
    return out


def _split_gcd(a, b, c, base: CoefficientField, var_index: int) -> list:
    """Monic gcds of a and b over each factor of c where they have a common root"""
    xring = c.ring
    out = []
    stack = [(c, a, b)]
    while stack:
        c, a, b = stack.pop()
        a, b = a.rem(c), b.rem(c)
        if degree_in(a, var_index) < degree_in(b, var_index):
            a, b = b, a
        if not b:
            if not a:
                raise NotZeroDimException("both generators vanish over a factor of the eliminant")
            for factor, a_part in _split_leading(a, c, var_index):
                if not a_part:
                    raise NotZeroDimException(
                        "both generators vanish over a factor of the eliminant")
                if degree_in(a_part, var_index) >= 1:
                    lower = TriangularSet(base, xring, (factor,))
                    out.append((factor, _monic_modulo(a_part, lower, var_index)))
            continue
        for factor, b_part in _split_leading(b, c, var_index):
            if not b_part:
                stack.append((factor, a, b_part))
            elif degree_in(b_part, var_index) >= 1:
                lower = TriangularSet(base, xring, (factor,))
                monic = _monic_modulo(b_part, lower, var_index)
                stack.append((factor, monic, a.rem(monic)))
    return out


def _recombine(components, base: CoefficientField, xring):
    """Chinese remaindering of (factor, gcd) pairs into one triangular set"""
    t1 = reduce(lambda u, v: u * v, (factor for factor, _ in components))
    if len(components) == 1:
        return t1, components[0][1]
    t2 = xring.zero
    for factor, g in components:
        others = t1.exquo(factor)
        idempotent = others * invert_modulo(others, TriangularSet(base, xring, (factor,)))
        t2 += g * idempotent
    return t1, t2.rem(t1)


def eliminate_oracle(sys: SystemInput, base: CoefficientField = None) -> TriangularSet:
    """Independent resultant elimination for n <= 2

    The eliminant is split along the gcds of the leading coefficients so
    roots where both leading coefficients vanish do not leak into T_1.
    """
    base = base or CoefficientField(sys.m)
    if sys.n > 2:
        raise StructuralException("the elimination oracle handles n <= 2 only")
    xring, gens = lift(sys, base)
    if not gens:
        raise NotZeroDimException("all generators vanish")
    if sys.n == 1:
        x1 = xring.gens[0]
        t1 = reduce(_univariate_gcd, gens)
        if degree_in(t1, 0) < 1:
            raise NotZeroDimException("generators have no common root")
        return TriangularSet(base, xring, (canonical_poly(_squarefree_part(t1, x1), base),))
    x2, x1 = xring.gens
    if len(gens) != 2:
        raise StructuralException("the elimination oracle expects two generators")
    f1, f2 = gens
    r = resultant(f1, f2, x2)
    if not r:
        raise NotZeroDimException("resultant vanishes identically")
    if degree_in(r, 1) < 1:
        raise NotZeroDimException("resultant is a nonzero constant")
    components = _split_gcd(f1, f2, _squarefree_part(r, x1), base, 0)
    if not components:
        raise NotZeroDimException("no common root over the eliminant")
    degrees = {degree_in(g, 0) for _, g in components}
    if len(degrees) > 1:
        raise NotLazardShapeException(
            f"fibers over the eliminant have different degrees {sorted(degrees)}")
    log('Solve', f"oracle eliminant split into {len(components)} factors")
    t1, t2 = _recombine(components, base, xring)
    return TriangularSet(base, xring, (canonical_poly(t1.monic(), base), canonical_poly(t2, base)))


def unreduced_set(sys: SystemInput, tset: TriangularSet) -> tuple:
    """Per level, the generator of least delta that could stand in for T_l

    A candidate lives in K[X1..Xl], has the degree of T_l in X_l with a
    constant leading coefficient and vanishes modulo the set; T_l itself
    is kept when no generator qualifies.
    """
    base = tset.base
    xring, gens = lift(sys, base)
    if xring != tset.ring:
        raise StructuralException("system and triangular set live in different rings")
    chosen = []
    for level, poly in enumerate(tset.polys, start=1):
        index = tset.index(level)
        best = poly
        for g in gens:
            if any(monom[i] for monom in g.itermonoms() for i in range(index)):
                continue
            top, lc = _leading_in(g, index)
            if top != degree_in(poly, index) or not lc.is_ground or normal_form(g, tset):
                continue
            candidate = canonical_poly(g.quo_ground(lc.LC), base)
            if delta_of(candidate, base) < delta_of(best, base):
                best = candidate
        chosen.append(best)
    return tuple(chosen)
