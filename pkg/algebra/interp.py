"""
Equiprojectable grids, tensor Vandermonde evaluation and interpolation,
and the reconstruction of a_n N_n from good specializations
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import mpmath
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from config import log
from algebra.exceptions import (
    DegreeOverflowException,
    DomainException,
    GridExhaustedException,
    SingularGridException,
    StructuralException,
)
from algebra.poly_core import (
    degree_in,
    embed,
    evaluate_ground,
    log_abs_rational,
    solve_linear,
    y_names,
)
from algebra.triangular import TriangularSet, regular_chain, specialize


@dataclass(frozen=True)
class EquiprojectableSet:
    """Nested grid in {1..M}^m: every prefix of length i < m has exactly L extensions"""
    m: int
    M: int
    L: int
    tree: dict

    def __hash__(self):
        return hash((self.m, self.M, self.L, tuple(sorted(self.tree.items()))))

    @property
    def points(self) -> list:
        """Depth-first lex order over the choice tree"""
        out = []

        def walk(prefix):
            if len(prefix) == self.m:
                out.append(prefix)
                return
            for value in self.tree[prefix]:
                walk(prefix + (value,))

        walk(())
        return out


@dataclass(frozen=True)
class SolveReport:
    coefficients: tuple
    observed_ln: Optional[object]
    bound_ln: Optional[object]
    within_bound: bool


@dataclass(frozen=True)
class InterpolationReport:
    poly: object
    observed_ln: Optional[object]
    bound_ln: Optional[object]
    within_bound: bool


def build_equiprojectable(m: int, M: int, L: int,
                          avoid: Callable[[tuple], bool] = None) -> EquiprojectableSet:
    """Greedy grid: at each node keep the L smallest values of 1..M that avoid rejects"""
    tree = {}

    def grow(prefix):
        if len(prefix) == m:
            return
        chosen = []
        for value in range(1, M + 1):
            candidate = prefix + (value,)
            if avoid is not None and avoid(candidate):
                continue
            chosen.append(value)
            if len(chosen) == L:
                break
        if len(chosen) < L:
            raise GridExhaustedException(
                f"only {len(chosen)} admissible values below {M} after prefix {prefix}")
        tree[prefix] = tuple(chosen)
        for value in chosen:
            grow(prefix + (value,))

    grow(())
    return EquiprojectableSet(m, M, L, tree)


def _rational(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ.convert(value)


def _max_abs(values):
    nonzero = [abs(v) for v in values if v]
    return max(nonzero) if nonzero else None


def _log_of(value):
    if value is None:
        return None
    with mpmath.workdps(50):
        return log_abs_rational(int(QQ.numer(value)), int(QQ.denom(value)))


def _size_report(inputs, outputs, levels: int, L: int, M: int):
    """Exact check of max|b| <= max|a| * L^levels * (M+1)^(levels*L), with logs for display"""
    a = _max_abs(inputs)
    b = _max_abs(outputs)
    if b is None:
        return None, (None if a is None else _log_of(a * L ** levels * (M + 1) ** (levels * L))), True
    if a is None:
        return _log_of(b), None, False
    limit = a * L ** levels * (M + 1) ** (levels * L)
    return _log_of(b), _log_of(limit), b <= limit


def vandermonde_solve(nodes, values, M: int = None) -> SolveReport:
    """Solve sum_j b_j node_i^j = value_i exactly

    The report compares max ln|b_j| with A + L ln(M+1) + ln L, A = max ln|value_i|.
    """
    nodes = [int(v) for v in nodes]
    if len(set(nodes)) != len(nodes):
        raise SingularGridException(f"duplicate nodes in {nodes}")
    if len(values) != len(nodes):
        raise StructuralException("as many values as nodes are needed")
    M = M if M is not None else max(nodes)
    values = [_rational(v) for v in values]
    size = len(nodes)
    matrix = [[QQ(node) ** j for j in range(size)] for node in nodes]
    solution, _ = solve_linear(matrix, values, QQ)
    observed, bound, within = _size_report(values, solution, 1, size, M)
    return SolveReport(tuple(solution), observed, bound, within)


def _evaluate(f, point):
    total = QQ.zero
    domain = f.ring.domain
    for monom, coeff in f.items():
        term = QQ.convert(coeff, domain)
        for value, exp in zip(point, monom):
            if exp:
                term *= QQ(value) ** exp
        total += term
    return total


def evaluate_at_set(f, grid: EquiprojectableSet) -> list:
    """Values f(y) for y in the canonical order of the grid"""
    if f.ring.ngens != grid.m:
        raise StructuralException(f"expected a polynomial in {grid.m} variables")
    for i in range(grid.m):
        if f and degree_in(f, i) >= grid.L:
            raise DegreeOverflowException(
                f"degree {degree_in(f, i)} in {f.ring.symbols[i]} needs L > {grid.L}")
    return [_evaluate(f, point) for point in grid.points]


def interpolate(values, grid: EquiprojectableSet, ring=None) -> InterpolationReport:
    """Unique f in QQ[Y]_L with f(y) = value for y in the grid, level-by-level Vandermonde"""
    points = grid.points
    if len(values) != len(points):
        raise StructuralException(f"expected {len(points)} values, got {len(values)}")
    ring = ring or PolyRing(y_names(grid.m), QQ, grlex)
    values = [_rational(v) for v in values]
    lookup = dict(zip(points, values))

    def solve(prefix):
        if len(prefix) == grid.m:
            return {(): lookup[prefix]}
        nodes = grid.tree[prefix]
        children = [solve(prefix + (value,)) for value in nodes]
        monomials = set()
        for child in children:
            monomials.update(child)
        result = {}
        for monom in monomials:
            column = [child.get(monom, QQ.zero) for child in children]
            report = vandermonde_solve(nodes, column, grid.M)
            for j, b in enumerate(report.coefficients):
                if b:
                    result[(j,) + monom] = b
        return result

    terms = solve(())
    poly = ring.from_dict(terms)
    observed, bound, within = _size_report(values, list(terms.values()), grid.m, grid.L, grid.M)
    return InterpolationReport(poly, observed, bound, within)


def good_point_filter(t: TriangularSet) -> Callable[[tuple], bool]:
    """avoid predicate rejecting full points that are bad specializations of t"""
    def avoid(point):
        return len(point) == t.base.m and not specialize(t, point).good
    return avoid


def reconstruct_scaled_chain(t: TriangularSet, a_n, degree_bound: int, M: int = None) -> dict:
    """Rebuild a_n N_n from a_n(y) N_{n,y} on a good grid and compare with the exact one"""
    base = t.base
    if base.p is not None or not base.m:
        raise DomainException("reconstruction needs a QQ(Y) triangular set")
    L = degree_bound + 1
    M = M or L + 2 * degree_bound
    grid = build_equiprojectable(base.m, M, L, good_point_filter(t))
    log('Interp', f"grid of {L ** base.m} good points in [1, {M}]^{base.m}")
    exact = regular_chain(t).polys[-1] * base.from_parts(a_n, base.yring.one)
    samples = {}
    for point in grid.points:
        fiber = specialize(t, point).tset
        scale = evaluate_ground(a_n, point, QQ)
        samples[point] = regular_chain(fiber).polys[-1] * scale
    qring = PolyRing(y_names(base.m), QQ, grlex)
    monomials = set(exact.itermonoms())
    for poly in samples.values():
        monomials.update(poly.itermonoms())
    mismatches = []
    within = True
    for monom in sorted(monomials):
        values = [samples[point].get(monom, QQ.zero) for point in grid.points]
        report = interpolate(values, grid, qring)
        within = within and report.within_bound
        coeff = exact.get(monom)
        expected = qring.zero
        if coeff is not None:
            num, den = base.parts(coeff)
            if den != 1:
                mismatches.append(monom)
                continue
            expected = embed(num, qring)
        if report.poly != expected:
            mismatches.append(monom)
    return {
        'match': not mismatches,
        'mismatches': [list(m) for m in mismatches],
        'grid_points': len(grid.points),
        'L': L,
        'M': M,
        'within_bound': within,
    }
