"""
Tests for Buchberger triangularization and the resultant elimination oracle
"""
import pytest
import sympy

from algebra.exceptions import (
    DomainException,
    NotLazardShapeException,
    NotZeroDimException,
    StructuralException,
)
from algebra.poly_core import CoefficientField, system_ring
from algebra.solve import SystemInput, eliminate_oracle, lift, triangularize, unreduced_set
from algebra.triangular import normal_form

from conftest import make_system


class TestSystemInput:
    def test_degree_and_height(self, example5):
        assert example5.degree == 2
        assert example5.height == 0

    def test_rational_height_clears_denominators(self):
        sys = make_system(0, 1, lambda ys, xs: [xs[0] / 3 - 2])
        assert float(sys.height) == pytest.approx(1.791759469, rel=1e-9)

    def test_zero_generator(self):
        ring = system_ring(0, 1)
        with pytest.raises(DomainException):
            SystemInput(0, 1, (ring.zero,), ring)

    def test_ring_shape(self):
        ring = system_ring(1, 1)
        with pytest.raises(StructuralException):
            SystemInput(0, 1, (ring.gens[1],), ring)


class TestTriangularize:
    def test_linear_example(self, example5_set, field2):
        y1, y2 = field2.fraction_field.gens
        x2, x1 = example5_set.ring.gens
        ring = example5_set.ring
        assert example5_set.polys[0] == x1 - ring(1 / (y1 * y2 - 1))
        assert example5_set.polys[1] == x2 + ring(y2 / (y1 * y2 - 1))
        assert example5_set.degrees == (1, 1)

    def test_reduced_by_lower_levels(self):
        sys = make_system(1, 2, lambda ys, xs: [xs[0] ** 2 - ys[0], xs[1] - xs[0] ** 3])
        t = triangularize(sys)
        x2, x1 = t.ring.gens
        y1 = t.ring(t.base.fraction_field.gens[0])
        assert t.polys == (x1 ** 2 - y1, x2 - y1 * x1)

    def test_no_parameters(self):
        t = triangularize(make_system(0, 1, lambda ys, xs: [xs[0] - 1]))
        assert t.polys == (t.ring.gens[0] - 1,)
        assert t.base == CoefficientField(0)

    def test_positive_dimension(self):
        with pytest.raises(NotZeroDimException):
            triangularize(make_system(0, 2, lambda ys, xs: [xs[0] - xs[1]]))

    def test_inconsistent(self):
        with pytest.raises(NotZeroDimException):
            triangularize(make_system(0, 1, lambda ys, xs: [xs[0], xs[0] - 1]))

    def test_not_lazard_shape(self):
        sys = make_system(0, 2, lambda ys, xs: [xs[0] ** 2 - 1, xs[1] ** 2 - 1, (xs[0] - 1) * (xs[1] - 1)])
        with pytest.raises(NotLazardShapeException):
            triangularize(sys)

    def test_generators_vanish_in_the_ideal(self, corpus):
        for sys in corpus:
            t = triangularize(sys)
            _, lifted = lift(sys, t.base)
            assert all(not normal_form(f, t) for f in lifted)
            assert len(t.polys) == sys.n


class TestOracle:
    @pytest.mark.parametrize('build', [
        lambda ys, xs: [xs[0] ** 2 - 2, xs[1] - xs[0] - 1],
        lambda ys, xs: [xs[0] ** 2 + xs[1] ** 2 - 5, xs[0] - xs[1] - 1],
        lambda ys, xs: [xs[1] ** 2 - xs[0], xs[0] ** 2 - 3 * xs[0] + 2, xs[1] * xs[0] - xs[0]],
    ])
    def test_matches_sympy_groebner(self, build):
        sys = make_system(0, 2, build)
        t = triangularize(sys)
        x1, x2 = sys.ring.gens
        basis = sympy.groebner([g.as_expr() for g in sys.gens], x2.as_expr(), x1.as_expr(),
                               order='lex', domain='QQ')
        assert {p.as_expr() for p in t.polys} == set(basis.exprs)

    def test_agrees_on_linear_example(self, example5, example5_set):
        assert eliminate_oracle(example5).polys == example5_set.polys

    def test_square_free_part(self):
        sys = make_system(1, 1, lambda ys, xs: [(xs[0] ** 2 - ys[0]) ** 2])
        oracle = eliminate_oracle(sys)
        x1, = oracle.ring.gens
        assert oracle.polys[0] == x1 ** 2 - oracle.ring(oracle.base.fraction_field.gens[0])

    def test_reduced_second_level(self):
        sys = make_system(1, 2, lambda ys, xs: [xs[0] - ys[0], xs[1] - xs[0]])
        oracle = eliminate_oracle(sys)
        assert oracle.polys == triangularize(sys).polys
        x2, x1 = oracle.ring.gens
        assert not normal_form(x2 - x1, oracle)

    def test_drops_roots_where_leading_coefficients_vanish(self):
        sys = make_system(0, 2, lambda ys, xs: [(xs[0] - 1) * xs[1] + xs[0] - 2,
                                                (xs[0] - 1) * xs[1] + xs[0] * (xs[0] - 2)])
        oracle = eliminate_oracle(sys)
        assert oracle.format() == ['X1 - 2', 'X2']
        assert oracle.polys == triangularize(sys).polys

    def test_recombines_split_fibers(self):
        sys = make_system(0, 2, lambda ys, xs: [(xs[0] - 1) * xs[1] ** 2 + xs[1] - xs[0],
                                                (xs[0] - 1) * (xs[0] + xs[1] - 3)])
        oracle = eliminate_oracle(sys)
        assert oracle.degrees == (4, 1)
        assert oracle.polys == triangularize(sys).polys

    def test_fibers_of_different_degrees(self):
        sys = make_system(0, 2, lambda ys, xs: [(xs[0] - 3) * xs[1] ** 2 + xs[1] - xs[0],
                                                (xs[0] - 1) * (xs[0] - 2) * (xs[0] - 3)])
        with pytest.raises(NotLazardShapeException):
            eliminate_oracle(sys)

    def test_agrees_on_corpus(self, corpus):
        for sys in corpus:
            if sys.n == 2 and len(sys.gens) == 2:
                assert eliminate_oracle(sys).polys == triangularize(sys).polys

    def test_too_many_unknowns(self):
        sys = make_system(0, 3, lambda ys, xs: [xs[0], xs[1], xs[2]])
        with pytest.raises(StructuralException):
            eliminate_oracle(sys)


class TestUnreducedSet:
    def test_example_keeps_the_literal_generator(self, example5, example5_set):
        t1, t2 = unreduced_set(example5, example5_set)
        assert t1 == example5_set.polys[0]
        assert [p for p in lift(example5, example5_set.base)[1] if p == t2]
        assert not normal_form(t2, example5_set)

    def test_already_reduced_generators(self):
        sys = make_system(0, 2, lambda ys, xs: [xs[0] ** 2 - 2, xs[1] ** 2 - xs[0] * xs[1] + 1])
        t = triangularize(sys)
        assert unreduced_set(sys, t) == t.polys
