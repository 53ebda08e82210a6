"""
Modular handler - modular-delta
"""
from config import (
    EXIT_ASSUMPTION,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_UNEXPECTED,
    WORKERS,
    failure,
    log,
    response,
)
from algebra.bounds import modular_prime_bound
from algebra.exceptions import DomainException, RangeTooNarrowException
from algebra.modular import cross_check, random_primes
from handlers.system_file import ParseException, load_system
from handlers.systems import ASSUMPTION_ERRORS


def modular_delta(args):
    """delta profiles modulo chosen or drawn primes - modular-delta FILE (--prime P | --auto)"""
    try:
        sys = load_system(args.file)
    except ParseException as e:
        return failure(EXIT_PARSE, e)
    trials = args.trials or 1
    if trials < 1:
        return response(EXIT_PARSE, {'error': 'trials must be positive'})
    body = {}
    try:
        if args.prime is not None:
            primes = [args.prime]
        else:
            bound = modular_prime_bound(sys.m, sys.n, sys.degree, sys.height)
            lower = bound['prime_range_lower']['value']
            upper = bound['prime_range_upper']['value']
            body['range'] = {'lower': lower, 'upper': upper, 'upper_bits': upper.bit_length()}
            primes = random_primes(lower, upper, trials, args.seed)
            log('Modular', f"{len(primes)} primes of about {upper.bit_length()} bits")
        report = cross_check(sys, primes, WORKERS)
    except DomainException as e:
        return failure(EXIT_PARSE, e)
    except ASSUMPTION_ERRORS as e:
        return failure(EXIT_ASSUMPTION, e)
    except RangeTooNarrowException as e:
        return failure(EXIT_UNEXPECTED, e)
    body.update(report)
    if len(primes) == 1:
        entry = report['primes'][str(primes[0])]
        body['status'] = entry['status']
        if 'delta' in entry:
            body['delta'] = entry['delta']
        else:
            body['failure'] = entry['failure']
    return response(EXIT_OK, body)
