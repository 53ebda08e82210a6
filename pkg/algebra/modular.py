"""
Modular degree detection: reduce systems mod p, solve over GF(p)(Y),
compare delta profiles with the exact ones and draw primes of a given size
"""
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from sympy.polys.domains import GF, QQ

from config import DEFAULT_SEED, MAX_DRAWS_FACTOR, MILLER_RABIN_ROUNDS, WORKERS, log
from algebra.exceptions import (
    AlgebraException,
    BadPrimeException,
    DomainException,
    NotLazardShapeException,
    NotZeroDimException,
    RangeTooNarrowException,
    StructuralException,
    ZeroDivisorException,
)
from algebra.poly_core import (
    CoefficientField,
    determinant,
    embed,
    format_poly,
    leading_coefficient,
    substitute,
    system_ring,
    to_xring,
)
from algebra.solve import SystemInput, triangularize
from algebra.triangular import (
    TriangularSet,
    delta_measure,
    invert_modulo,
    iterated_resultants,
    normal_form,
)

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class ModularRun:
    """Outcome of one mod-p solve: a delta profile or a failure reason"""
    prime: Optional[int]
    system: Optional[SystemInput]
    profile: Optional[tuple] = None
    reason: Optional[str] = None
    tset: Optional[TriangularSet] = None

    @property
    def ok(self) -> bool:
        return self.profile is not None

    def to_dict(self) -> dict:
        if self.ok:
            return {'prime': self.prime, 'delta': list(self.profile)}
        return {'prime': self.prime, 'failure': self.reason}


def is_probable_prime(n: int, rounds: int = None, rng: random.Random = None) -> bool:
    """Miller-Rabin with random bases drawn from rng"""
    if n < 2:
        return False
    for q in SMALL_PRIMES:
        if n % q == 0:
            return n == q
    rounds = rounds or MILLER_RABIN_ROUNDS
    rng = rng or random.Random(DEFAULT_SEED)
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for _ in range(rounds):
        x = pow(rng.randrange(2, n - 1), d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_prime(p: int):
    if not is_probable_prime(p):
        raise DomainException(f"{p} is not prime")


def _x_degree(g, m: int) -> int:
    return max(sum(monom[m:]) for monom in g.itermonoms())


def reduce_mod_p(sys: SystemInput, p: int) -> SystemInput:
    """Coefficientwise reduction of a QQ system into GF(p)[Y, X]"""
    _require_prime(p)
    gf = GF(p)
    ring = system_ring(sys.m, sys.n, gf)
    gens = []
    for index, g in enumerate(sys.gens, start=1):
        terms = {}
        for monom, coeff in g.items():
            num, den = int(QQ.numer(coeff)), int(QQ.denom(coeff))
            if den % p == 0:
                raise BadPrimeException(f"denominator {den} of f_{index} vanishes modulo {p}",
                                        'DenominatorVanishesModP')
            value = gf.convert(num) / gf.convert(den)
            if value:
                terms[monom] = value
        reduced = ring.from_dict(terms)
        if not reduced:
            raise BadPrimeException(f"f_{index} vanishes modulo {p}")
        if _x_degree(reduced, sys.m) < _x_degree(g, sys.m):
            raise BadPrimeException(f"f_{index} drops X-degree modulo {p}")
        gens.append(reduced)
    return SystemInput(sys.m, sys.n, tuple(gens), ring)


def degree_profile(sys: SystemInput, p: int = None) -> ModularRun:
    """delta of each level of the triangular set over GF(p)(Y), or over QQ(Y) when p is None"""
    if p is None:
        reduced, base = sys, CoefficientField(sys.m)
    else:
        try:
            reduced = reduce_mod_p(sys, p)
        except BadPrimeException as e:
            log('Modular', f"p={p}: {e}")
            return ModularRun(p, None, reason=e.reason)
        base = CoefficientField(sys.m, p)
    try:
        tset = triangularize(reduced, base)
    except NotZeroDimException:
        return ModularRun(p, reduced, reason='NotZeroDim')
    except NotLazardShapeException:
        return ModularRun(p, reduced, reason='NotLazardShape')
    except (ZeroDivisionError, DomainException) as e:
        log('Modular', f"p={p}: {e}")
        return ModularRun(p, reduced, reason='SPolynomialDenominatorHitsP')
    except AlgebraException as e:
        log('Modular', f"p={p}: solver failed: {e}")
        return ModularRun(p, reduced, reason=type(e).__name__.removesuffix('Exception'))
    return ModularRun(p, reduced, tuple(delta_measure(tset)), tset=tset)


def _draw_prime(lo: int, hi: int, rng: random.Random) -> Optional[int]:
    draws = max(1, math.ceil(MAX_DRAWS_FACTOR * math.log(hi)))
    for _ in range(draws):
        candidate = rng.randint(lo, hi)
        if is_probable_prime(candidate, rng=rng):
            return candidate
    return None


def random_prime_in_range(lo: int, hi: int, seed: int = None) -> int:
    """Uniform candidates in [lo, hi] until one passes Miller-Rabin"""
    if lo < 2:
        raise DomainException(f"range must start at 2 or above, got {lo}")
    if lo > hi:
        raise RangeTooNarrowException(f"empty range [{lo}, {hi}]")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    prime = _draw_prime(lo, hi, rng)
    if prime is None:
        raise RangeTooNarrowException(f"no prime found in [{lo}, {hi}]")
    log('Modular', f"drew a {prime.bit_length()}-bit prime")
    return prime


def random_primes(lo: int, hi: int, count: int, seed: int = None) -> list:
    """count distinct primes from [lo, hi], one seeded stream"""
    if lo < 2:
        raise DomainException(f"range must start at 2 or above, got {lo}")
    if lo > hi:
        raise RangeTooNarrowException(f"empty range [{lo}, {hi}]")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    primes = []
    for _ in range(20 * count):
        if len(primes) == count:
            break
        prime = _draw_prime(lo, hi, rng)
        if prime is None:
            raise RangeTooNarrowException(f"no prime found in [{lo}, {hi}]")
        if prime not in primes:
            primes.append(prime)
    if len(primes) < count:
        raise RangeTooNarrowException(f"fewer than {count} distinct primes in [{lo}, {hi}]")
    return primes


def jacobian(sys: SystemInput):
    """det(df_i/dX_j) in the system ring"""
    if len(sys.gens) != sys.n:
        raise StructuralException(f"expected {sys.n} generators, got {len(sys.gens)}")
    xs = sys.ring.gens[sys.m:]
    matrix = [[g.diff(x) for x in xs] for g in sys.gens]
    return determinant(matrix, sys.ring.to_domain())


def jacobian_check(sys: SystemInput) -> tuple:
    """(True, None) when J is invertible modulo the triangular set, else (False, witness)"""
    tset = triangularize(sys)
    j = to_xring(jacobian(sys), sys.m, tset.base, tset.ring)
    reduced = normal_form(j, tset)
    if not reduced:
        return False, tset.ring.one
    try:
        invert_modulo(reduced, tset)
    except ZeroDivisorException as e:
        log('Modular', f"Jacobian is a zero-divisor, witness {format_poly(e.witness)}")
        return False, e.witness
    return True, None


def localize_jacobian(sys: SystemInput) -> SystemInput:
    """Adjoin X_{n+1} and the generator 1 - X_{n+1}*J"""
    j = jacobian(sys)
    ring = system_ring(sys.m, sys.n + 1)
    s = ring.gens[-1]
    gens = [embed(g, ring) for g in sys.gens]
    gens.append(ring.one - s * embed(j, ring))
    return SystemInput(sys.m, sys.n + 1, tuple(gens), ring)


def restrict_to_line(sys: SystemInput, seed: int = None) -> SystemInput:
    """Substitute Y_i <- a_i + b_i*Y1 (i >= 2) with seeded small integers"""
    if sys.m <= 1:
        return sys
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    ring = system_ring(1, sys.n)
    y1 = ring.gens[0]
    images = {f"Y{i}": rng.randint(1, 9) + rng.randint(1, 9) * y1 for i in range(2, sys.m + 1)}
    gens = [substitute(g, images, ring) for g in sys.gens]
    if any(not g for g in gens):
        raise DomainException("a generator vanishes on the chosen line")
    return SystemInput(1, sys.n, tuple(gens), ring)


def reduce_set_mod_p(t: TriangularSet, p: int) -> TriangularSet:
    """Coefficientwise reduction of an exact triangular set into GF(p)(Y)[X]"""
    _require_prime(p)
    target = CoefficientField(t.base.m, p)
    ring = target.xring(t.ring.ngens)
    polys = []
    for level, poly in enumerate(t.polys, start=1):
        terms = {}
        for monom, coeff in poly.items():
            value = t.base.reduce(coeff, p)
            if value is None:
                raise BadPrimeException(f"a denominator of T_{level} vanishes modulo {p}",
                                        'DenominatorVanishesModP')
            if value:
                terms[monom] = value
        polys.append(ring.from_dict(terms))
    return TriangularSet(target, ring, tuple(polys))


def _integer_coefficients(poly) -> list:
    if isinstance(poly, int):
        return [poly]
    return [int(c) for c in poly.itercoeffs()]


def explain_mismatch(t: TriangularSet, p: int) -> Optional[dict]:
    """Certificate that p is special for t: a content, leading coefficient or gcd divisible by p"""
    base = t.base
    for level, poly in enumerate(t.polys, start=1):
        for c in poly.itercoeffs():
            num, den = base.parts(c)
            for role, part in (('numerator', num), ('denominator', den)):
                coeffs = _integer_coefficients(part)
                if all(v % p == 0 for v in coeffs):
                    return {'kind': 'content', 'level': level, 'role': role,
                            'witness': format_poly(part) if base.m else str(part)}
                if base.m and int(leading_coefficient(part)) % p == 0:
                    return {'kind': 'leading', 'level': level, 'role': role,
                            'witness': format_poly(part)}
            if base.m:
                reduced = CoefficientField(base.m, p)
                num_p = reduced.yring.from_dict({mo: int(v) % p for mo, v in num.items()})
                den_p = reduced.yring.from_dict({mo: int(v) % p for mo, v in den.items()})
                common = num_p.gcd(den_p) if num_p else reduced.yring.one
                if any(sum(mo) for mo in common.itermonoms()):
                    return {'kind': 'gcd', 'level': level, 'role': 'coefficient',
                            'witness': format_poly(common)}
    for level, e in enumerate(iterated_resultants(t).resultants, start=1):
        num, den = base.parts(e)
        for part in (num, den):
            if all(v % p == 0 for v in _integer_coefficients(part)):
                return {'kind': 'resultant', 'level': level,
                        'witness': format_poly(part) if base.m else str(part)}
    return None


def cross_check(sys: SystemInput, primes, workers: int = None) -> dict:
    """Compare degree_profile at each prime with the exact profile over QQ(Y)"""
    primes = list(primes)
    if not primes:
        return {'exact': None, 'primes': {}, 'agree': 0, 'disagree': 0, 'failure': 0}
    for p in primes:
        _require_prime(p)
    exact_set = triangularize(sys)
    exact = tuple(delta_measure(exact_set))
    workers = workers or WORKERS
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(lambda p: degree_profile(sys, p), primes))
    else:
        runs = [degree_profile(sys, p) for p in primes]
    entries = {}
    counts = {'agree': 0, 'disagree': 0, 'failure': 0}
    for run in runs:
        entry = run.to_dict()
        if not run.ok:
            entry['status'] = 'failure'
        elif run.profile == exact:
            entry['status'] = 'agree'
        else:
            entry['status'] = 'disagree'
            entry['explanation'] = explain_mismatch(exact_set, run.prime)
            log('Modular', f"p={run.prime} disagrees: {entry['explanation']}")
        counts[entry['status']] += 1
        entries[str(run.prime)] = entry
    return {'exact': list(exact), 'primes': entries, **counts}
