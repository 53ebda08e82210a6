"""
Tests for reduction mod p, modular delta profiles, prime drawing and Jacobian checks
"""
import math

import pytest
from sympy import isprime
from sympy.polys.domains import GF, QQ

from algebra.exceptions import (
    BadPrimeException,
    DomainException,
    RangeTooNarrowException,
    StructuralException,
)
from algebra.modular import (
    cross_check,
    degree_profile,
    explain_mismatch,
    is_probable_prime,
    jacobian,
    jacobian_check,
    localize_jacobian,
    random_prime_in_range,
    random_primes,
    reduce_mod_p,
    reduce_set_mod_p,
    restrict_to_line,
)
from algebra.solve import triangularize

from conftest import make_system


class TestPrimality:
    def test_agrees_with_sympy(self):
        for n in range(0, 2000):
            assert is_probable_prime(n) == isprime(n), n

    def test_carmichael(self):
        assert not is_probable_prime(561)
        assert not is_probable_prime(41041)

    def test_large_prime(self):
        assert is_probable_prime(2 ** 127 - 1)
        assert not is_probable_prime(2 ** 127 + 1)


class TestDrawPrimes:
    def test_small_range(self):
        assert random_prime_in_range(10, 20, 1) in {11, 13, 17, 19}

    def test_deterministic(self):
        assert random_prime_in_range(1000, 10 ** 6, 7) == random_prime_in_range(1000, 10 ** 6, 7)

    def test_no_prime(self):
        with pytest.raises(RangeTooNarrowException):
            random_prime_in_range(24, 28, 1)

    def test_empty_range(self):
        with pytest.raises(RangeTooNarrowException):
            random_prime_in_range(30, 20, 1)

    def test_below_two(self):
        with pytest.raises(DomainException):
            random_prime_in_range(1, 20, 1)

    def test_distinct(self):
        primes = random_primes(1000, 100000, 20, seed=3)
        assert len(set(primes)) == 20
        assert all(isprime(p) and 1000 <= p <= 100000 for p in primes)

    def test_too_few(self):
        with pytest.raises(RangeTooNarrowException):
            random_primes(10, 20, 5, seed=1)


class TestReduce:
    def test_drops_multiples_of_p(self):
        sys = make_system(0, 1, lambda ys, xs: [3 * xs[0] - 1])
        reduced = reduce_mod_p(sys, 2)
        x1, = reduced.ring.gens
        assert reduced.ring.domain == GF(2)
        assert reduced.gens[0] == x1 + 1

    def test_vanishing_generator(self):
        sys = make_system(0, 1, lambda ys, xs: [7 * xs[0] + 14])
        with pytest.raises(BadPrimeException) as e:
            reduce_mod_p(sys, 7)
        assert e.value.reason == 'BadPrime'

    def test_degree_drop(self):
        sys = make_system(0, 1, lambda ys, xs: [2 * xs[0] - 1])
        assert degree_profile(sys, 2).reason == 'BadPrime'

    def test_denominator(self):
        sys = make_system(0, 1, lambda ys, xs: [xs[0] - QQ(1, 3)])
        run = degree_profile(sys, 3)
        assert not run.ok
        assert run.reason == 'DenominatorVanishesModP'

    def test_composite(self):
        sys = make_system(0, 1, lambda ys, xs: [xs[0] - 1])
        with pytest.raises(DomainException):
            reduce_mod_p(sys, 9)


class TestDegreeProfile:
    def test_exact(self, example5):
        run = degree_profile(example5)
        assert run.profile == (2, 3)
        assert run.to_dict() == {'prime': None, 'delta': [2, 3]}

    def test_small_primes_agree(self, example5):
        for p in (5, 7, 11, 13):
            assert degree_profile(example5, p).profile == (2, 3)

    def test_large_prime_with_two_parameters(self):
        sys = make_system(2, 2, lambda ys, xs: [2 * ys[0] * xs[1] + xs[0] + 2, ys[1] * xs[0] + xs[1]])
        run = degree_profile(sys, 58741)
        assert run.ok
        assert run.profile == degree_profile(sys).profile == (2, 3)

    def test_solver_error_becomes_failure(self, example5, monkeypatch):
        def broken(reduced, base):
            raise StructuralException("T_2 lives in another ring")
        monkeypatch.setattr('algebra.modular.triangularize', broken)
        run = degree_profile(example5, 7)
        assert not run.ok
        assert run.to_dict() == {'prime': 7, 'failure': 'Structural'}

    def test_reduction_commutes_with_solving(self, example5, example5_set):
        reduced = reduce_set_mod_p(example5_set, 7)
        assert reduced.format() == degree_profile(example5, 7).tset.format()

    def test_cross_check(self, example5):
        report = cross_check(example5, [5, 7, 11, 13])
        assert report['exact'] == [2, 3]
        assert report['agree'] == 4
        assert report['disagree'] == report['failure'] == 0
        assert report['primes']['7'] == {'prime': 7, 'delta': [2, 3], 'status': 'agree'}

    def test_cross_check_empty(self, example5):
        report = cross_check(example5, [])
        assert report['exact'] is None
        assert report['agree'] == 0

    def test_cross_check_threads(self, example5):
        serial = cross_check(example5, [5, 7, 11], workers=1)
        threaded = cross_check(example5, [5, 7, 11], workers=3)
        assert serial == threaded

    def test_corpus_statistics(self, corpus):
        primes = random_primes(1000, 100000, 50, seed=11)
        agree = disagree = 0
        for sys in corpus:
            report = cross_check(sys, primes)
            agree += report['agree']
            disagree += report['disagree']
            for entry in report['primes'].values():
                if entry['status'] == 'disagree':
                    assert entry['explanation'] is not None
        assert agree >= 0.95 * (agree + disagree)


class TestDegreeAcrossPrimes:
    def test_quotient_dimension_agrees(self, corpus):
        primes = random_primes(10000, 100000, 6, seed=3)
        for sys in corpus:
            exact = math.prod(triangularize(sys).degrees)
            for p in primes:
                run = degree_profile(sys, p)
                if run.ok:
                    assert math.prod(run.tset.degrees) == exact


class TestExplainMismatch:
    def test_special_prime(self):
        sys = make_system(1, 1, lambda ys, xs: [5 * xs[0] - ys[0] ** 2 - 1])
        t = triangularize(sys)
        explanation = explain_mismatch(t, 5)
        assert explanation['kind'] == 'content'
        assert explanation['role'] == 'denominator'

    def test_ordinary_prime(self, example5_set):
        assert explain_mismatch(example5_set, 101) is None

    def test_disagreement_is_explained(self):
        sys = make_system(1, 1, lambda ys, xs: [xs[0] * (ys[0] + 3) - ys[0] ** 2 - 3])
        report = cross_check(sys, [3])
        entry = report['primes']['3']
        assert entry['status'] == 'disagree'
        assert entry['explanation']['kind'] == 'gcd'


class TestJacobian:
    def test_example(self, example5):
        y1, y2, x1, x2 = example5.ring.gens
        assert jacobian(example5) == 1 - y1 * y2
        assert jacobian_check(example5) == (True, None)

    def test_double_root(self):
        sys = make_system(0, 1, lambda ys, xs: [xs[0] ** 2])
        ok, witness = jacobian_check(sys)
        assert not ok
        assert witness == witness.ring.gens[0]

    def test_localization(self, example5):
        local = localize_jacobian(example5)
        assert local.n == 3
        names = local.variables()
        assert names[-1] == 'X3'
        t = triangularize(local)
        assert t.degrees == (1, 1, 1)

    def test_line_restriction(self, example5):
        line = restrict_to_line(example5, seed=4)
        assert line.m == 1
        assert line.n == 2
        assert triangularize(line).degrees == (1, 1)

    def test_line_restriction_single_parameter(self):
        sys = make_system(1, 1, lambda ys, xs: [xs[0] - ys[0]])
        assert restrict_to_line(sys) is sys
