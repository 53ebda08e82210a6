"""
Estimate handlers - bounds, prime-range
"""
import mpmath

from config import EXIT_OK, EXIT_PARSE, response
from algebra.bounds import bound_report, modular_prime_bound, serialize_entry, serialize_report


def height_argument(text):
    """int when integral, else the decimal string (iv.mpf encloses it exactly)"""
    try:
        value = int(text)
    except (TypeError, ValueError):
        try:
            value = mpmath.mpf(text)
        except (TypeError, ValueError):
            raise ValueError(f"not a number: {text}")
        if value < 0:
            raise ValueError(f"height must be non-negative, got {text}")
        return str(text)
    if value < 0:
        raise ValueError(f"height must be non-negative, got {text}")
    return value


def _check_sizes(args):
    if args.m < 0 or args.n < 1 or args.d < 1:
        return "need m >= 0, n >= 1 and d >= 1"
    if getattr(args, 'level', None) is not None and not 1 <= args.level <= args.n:
        return f"level must lie in 1..{args.n}"
    return None


def _prime_range(report):
    lower = report['prime_range_lower']['value']
    upper = report['prime_range_upper']['value']
    return {'lower': lower, 'upper': upper, 'upper_bits': upper.bit_length()}


def bounds(args):
    """Every closed-form estimate for (m, n, d, h) - bounds --m --n --d --h [--level]"""
    problem = _check_sizes(args)
    if problem:
        return response(EXIT_PARSE, {'error': problem})
    try:
        h = height_argument(args.h)
    except ValueError as e:
        return response(EXIT_PARSE, {'error': str(e)})
    report = bound_report(args.m, args.n, args.d, h, args.level)
    return response(EXIT_OK, {
        'report': serialize_report(report),
        'prime_range': _prime_range(report),
    })


def prime_range(args):
    """[6H_A, 12H_A] for (m, n, d, h) - prime-range --m --n --d --h"""
    problem = _check_sizes(args)
    if problem:
        return response(EXIT_PARSE, {'error': problem})
    try:
        h = height_argument(args.h)
    except ValueError as e:
        return response(EXIT_PARSE, {'error': str(e)})
    report = modular_prime_bound(args.m, args.n, args.d, h)
    body = _prime_range(report)
    body['H_A'] = serialize_entry(report['H_A'])
    return response(EXIT_OK, body)
