"""
Tests for the closed-form size estimates
"""
import json
import math

import mpmath
import pytest

from algebra.bounds import (
    bezout_substitution,
    bound_report,
    chow_height_bound,
    constants,
    fiber_height_bound,
    grid_sizes,
    interpolated_bounds,
    modular_prime_bound,
    regrouping_agrees,
    serialize_entry,
    serialize_report,
    specialization_bounds,
    specialized_denominator_bound,
    theorem1_N_bound,
    theorem1_T_bound,
)
from algebra.poly_core import coefficient_heights
from algebra.solve import triangularize
from algebra.triangular import regular_chain


def ln(entry):
    return float(entry['value_ln'])


class TestHeightBounds:
    def test_N_bound(self):
        assert ln(theorem1_N_bound(2, 1, 2, 1)) == pytest.approx(177.89, abs=0.01)
        assert ln(theorem1_N_bound(0, 1, 1, 0)) == pytest.approx(30.50, abs=0.01)

    def test_T_bound(self):
        assert ln(theorem1_T_bound(0, 1, 2, 1)) == pytest.approx(180.37, abs=0.01)

    def test_linear_in_height(self):
        for d in (1, 2, 5):
            n_step = ln(theorem1_N_bound(1, 2, d, 4)) - ln(theorem1_N_bound(1, 2, d, 3))
            t_step = ln(theorem1_T_bound(1, 2, d, 4)) - ln(theorem1_T_bound(1, 2, d, 3))
            assert n_step == pytest.approx(2, abs=1e-9)
            assert t_step == pytest.approx(4 * d, abs=1e-9)

    def test_bits_match_log(self):
        entry = theorem1_N_bound(2, 1, 2, 1)
        assert float(entry['value_bits']) == pytest.approx(ln(entry) / math.log(2), rel=1e-12)

    def test_upper_rounding(self):
        entry = theorem1_N_bound(0, 1, 1, 0)
        with mpmath.workdps(50):
            exact = 2 * mpmath.log(2) + 21 * mpmath.log(4)
            assert entry['value_ln'] >= exact - mpmath.mpf(10) ** -40

    @pytest.mark.parametrize('m,level,d_V,h_V', [(0, 1, 1, 0), (2, 3, 8, 40), (3, 2, 1000, 1e6)])
    def test_regrouping(self, m, level, d_V, h_V):
        assert regrouping_agrees(m, level, d_V, h_V)


class TestBezout:
    def test_small(self):
        bezout = bezout_substitution(1, 2, 2, 1)
        assert bezout['bezout_degree']['value'] == 4
        assert ln(bezout['bezout_height']) == pytest.approx(69.0, abs=0.05)

    def test_large_degree(self):
        assert bezout_substitution(1, 12, 3, 20)['bezout_degree']['value'] == 531441

    def test_chow_height(self):
        assert ln(chow_height_bound(2, 2, 4, 1)) == pytest.approx(108.5, abs=0.05)


class TestConstants:
    def test_linear_profile(self):
        consts = constants([1, 1])
        assert consts['G_n']['value'] == 1
        assert ln(consts['H_n']) == pytest.approx(16.09, abs=0.01)
        assert ln(consts['I_n']) == pytest.approx(ln(consts['H_n']))

    def test_quadratic_profile(self):
        consts = constants([2, 2], d_V=4)
        assert consts['G_n']['value'] == 3
        assert ln(consts['H_n']) == pytest.approx(32.19, abs=0.01)
        assert ln(consts['I_n']) == pytest.approx(36.35, abs=0.01)
        assert consts['G_n']['value'] <= consts['G_n_majorant']['value']
        assert ln(consts['H_n']) <= ln(consts['H_n_majorant'])
        assert ln(consts['I_n']) <= ln(consts['I_n_majorant'])


class TestGrids:
    def test_sizes(self):
        grids = grid_sizes(2, 4, 3)
        assert [grids[k]['value'] for k in ('L1', 'L2', 'M1', 'M2')] == [5, 13, 117, 125]

    def test_single_point(self):
        grids = grid_sizes(1, 1, 1)
        assert grids['M1']['value'] == 6

    def test_empty_variety(self):
        grids = grid_sizes(1, 0, 1)
        assert grids['L1']['value'] == 1
        assert grids['M1']['value'] == 1

    def test_specialization(self):
        bounds = specialization_bounds(1, 2, 4, 2, 117, (2, 2))
        assert ln(bounds['specialized_N']) == pytest.approx(146.7, abs=0.05)
        assert ln(bounds['specialized_T']) > ln(bounds['specialized_N'])

    def test_interpolation_adds_spread(self):
        specialized = specialization_bounds(1, 2, 4, 2, 117, (2, 2))
        interpolated = interpolated_bounds(1, 2, 4, 2, (2, 2))
        assert ln(interpolated['interpolated_N']) > ln(specialized['specialized_N'])

    def test_fiber_and_denominator(self):
        assert ln(fiber_height_bound(1, 2, 4, 2, 1)) == pytest.approx(2 + 4 * math.log(4))
        assert ln(specialized_denominator_bound(1, 4, 3, 1)) == pytest.approx(3 + math.log(5))


class TestPrimeRange:
    def test_anchor_size(self):
        bound = modular_prime_bound(1, 12, 3, 20)
        upper = bound['prime_range_upper']['value']
        lower = bound['prime_range_lower']['value']
        assert 118 <= upper.bit_length() <= 130
        assert abs(upper - 2 * lower) <= 3
        with mpmath.workdps(120):
            assert lower == int(mpmath.ceil(6 * bound['H_A']['value_ln']))

    def test_monotone_in_height(self):
        low = modular_prime_bound(1, 2, 2, 1)['prime_range_upper']['value']
        high = modular_prime_bound(1, 2, 2, 2)['prime_range_upper']['value']
        assert high > low


class TestReport:
    def test_keys(self):
        report = bound_report(1, 2, 2, 1)
        for key in ('bezout_degree', 'theorem1_N_1', 'theorem1_T_2', 'G_n', 'L1', 'M2',
                    'chow_height', 'specialized_N', 'interpolated_T', 'H_A', 'prime_range_upper'):
            assert key in report

    def test_single_level(self):
        report = bound_report(1, 3, 2, 1, level=2)
        assert 'theorem1_N_2' in report
        assert 'theorem1_N_1' not in report

    def test_serializes_to_json(self):
        serialized = serialize_report(bound_report(0, 1, 1, 0))
        text = json.dumps(serialized)
        assert json.loads(text)['bezout_degree']['value'] == 1

    def test_serialized_floats_round_up(self):
        entry = theorem1_N_bound(2, 1, 2, 1)
        assert serialize_entry(entry)['value_ln'] >= float(entry['value_ln'])


class TestMonotonicity:
    def test_height_bounds_grow_with_every_argument(self):
        for bound in (theorem1_N_bound, theorem1_T_bound):
            base = ln(bound(1, 2, 3, 2))
            assert ln(bound(2, 2, 3, 2)) > base
            assert ln(bound(1, 3, 3, 2)) > base
            assert ln(bound(1, 2, 4, 2)) > base

    def test_bezout_grows_with_degree_and_unknowns(self):
        base = bezout_substitution(1, 2, 2, 1)
        for bigger in (bezout_substitution(1, 3, 2, 1), bezout_substitution(1, 2, 3, 1),
                       bezout_substitution(2, 2, 2, 1)):
            assert bigger['bezout_degree']['value'] >= base['bezout_degree']['value']
            assert ln(bigger['bezout_height']) > ln(base['bezout_height'])

    def test_grid_bounds_grow_with_M(self):
        for M in (1, 2, 10, 117):
            low = specialization_bounds(1, 2, 4, 2, M, (2, 2))
            high = specialization_bounds(1, 2, 4, 2, M + 1, (2, 2))
            assert ln(high['specialized_N']) > ln(low['specialized_N'])
            assert ln(fiber_height_bound(1, 2, 4, 2, M + 1)) > ln(fiber_height_bound(1, 2, 4, 2, M))

    def test_prime_range_grows_with_degree_and_parameters(self):
        base = modular_prime_bound(1, 2, 2, 1)['prime_range_upper']['value']
        assert modular_prime_bound(1, 2, 3, 1)['prime_range_upper']['value'] > base
        assert modular_prime_bound(2, 2, 2, 1)['prime_range_upper']['value'] > base
        assert modular_prime_bound(1, 3, 2, 1)['prime_range_upper']['value'] > base


class TestCorpusHeights:
    def test_chain_heights_within_bounds(self, corpus):
        for sys in corpus:
            t = triangularize(sys)
            chain = regular_chain(t)
            bezout = bezout_substitution(sys.m, sys.n, sys.degree, sys.height)
            d_V = bezout['bezout_degree']['value']
            h_V = bezout['bezout_height']['value_ln']
            for level in range(1, t.n + 1):
                observed_n = coefficient_heights(chain.polys[level - 1], t.base)
                observed_t = coefficient_heights(t.polys[level - 1], t.base)
                assert observed_n <= theorem1_N_bound(sys.m, level, d_V, h_V)['value_ln']
                assert observed_t <= theorem1_T_bound(sys.m, level, d_V, h_V)['value_ln']
