"""
System handlers - triangularize, chain, delta, chow, verify
"""
import mpmath

from config import (
    EXIT_ASSUMPTION,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VERIFICATION,
    failure,
    log,
    response,
)
from algebra.bounds import bezout_substitution, theorem1_N_bound, theorem1_T_bound
from algebra.chow import (
    denominator_check_levels,
    monic_chow,
    primitive_chow,
    root_residues,
    substitute_epsilon,
    substitute_kps,
)
from algebra.exceptions import (
    ContradictsTheoremException,
    DomainException,
    NonRadicalException,
    NotLazardShapeException,
    NotZeroDimException,
    StructuralException,
)
from algebra.poly_core import coefficient_heights, delta_of, format_poly
from algebra.solve import triangularize as solve_system, unreduced_set
from algebra.triangular import delta_measure, iterated_resultants, regular_chain
from handlers.system_file import (
    ParseException,
    is_multichow,
    load_system,
    load_text,
    parse_multichow,
    parse_system,
)

ASSUMPTION_ERRORS = (NotZeroDimException, NotLazardShapeException, NonRadicalException)


def _digits(value):
    return mpmath.nstr(value, 15)


def _solve_file(path):
    """Parse and triangularize; returns (system, tset) or raises"""
    sys = load_system(path)
    return sys, solve_system(sys)


def _unreduced_report(sys, tset):
    """Generators standing in for the reduced levels, with their delta profile"""
    polys = unreduced_set(sys, tset)
    return {'T': [format_poly(p) for p in polys], 'delta': [delta_of(p, tset.base) for p in polys]}


def triangularize(args):
    """Triangular set with per-level degrees - triangularize FILE"""
    try:
        sys, tset = _solve_file(args.file)
    except ParseException as e:
        return failure(EXIT_PARSE, e)
    except ASSUMPTION_ERRORS as e:
        return failure(EXIT_ASSUMPTION, e)
    return response(EXIT_OK, {
        'T': tset.format(),
        'degrees': list(tset.degrees),
        'unreduced': _unreduced_report(sys, tset),
    })


def chain(args):
    """Regular chain, iterated resultants and scaled set - chain FILE"""
    try:
        _, tset = _solve_file(args.file)
        regular = regular_chain(tset)
    except ParseException as e:
        return failure(EXIT_PARSE, e)
    except ASSUMPTION_ERRORS as e:
        return failure(EXIT_ASSUMPTION, e)
    scaled = iterated_resultants(tset)
    body = regular.format()
    body['e'] = [tset.base.format(e) for e in scaled.resultants]
    body['Ttilde'] = [format_poly(p) for p in scaled.polys]
    body['radical'] = scaled.radical
    return response(EXIT_OK, body)


def delta(args):
    """delta profile of the triangular set - delta FILE"""
    try:
        sys, tset = _solve_file(args.file)
    except ParseException as e:
        return failure(EXIT_PARSE, e)
    except ASSUMPTION_ERRORS as e:
        return failure(EXIT_ASSUMPTION, e)
    return response(EXIT_OK, {
        'delta': delta_measure(tset),
        'unreduced': _unreduced_report(sys, tset),
    })


def _multichow_report(text):
    form = parse_multichow(text)
    kps = substitute_kps(form)
    body = {'kps': format_poly(kps), 'dominant': bool(kps) or not form.body}
    try:
        full, lowest, valuation = substitute_epsilon(form)
    except ContradictsTheoremException as e:
        body['epsilon'] = {'error': str(e)}
        return response(EXIT_VERIFICATION, body)
    body['epsilon'] = {'C_eps': format_poly(full), 'C0': format_poly(lowest), 'valuation': valuation}
    return response(EXIT_OK, body)


def chow(args):
    """Monic and primitive Chow forms, or the substitutions of a MultiChow file - chow FILE"""
    try:
        text = load_text(args.file)
        if is_multichow(text):
            return _multichow_report(text)
        tset = solve_system(parse_system(text))
        monic = monic_chow(tset)
        primitive = primitive_chow(monic)
    except ParseException as e:
        return failure(EXIT_PARSE, e)
    except ASSUMPTION_ERRORS as e:
        return failure(EXIT_ASSUMPTION, e)
    a_n = format_poly(primitive.a_n) if tset.base.m else str(primitive.a_n)
    return response(EXIT_OK, {
        'monic': monic.format(),
        'primitive': primitive.format(),
        'a_n': a_n,
        'degree': monic.degree,
        'root_property': not root_residues(monic, tset),
    })


def _theorem1_levels(sys, tset, regular, d_V, h_V):
    levels = []
    for level in range(1, tset.n + 1):
        observed_n = coefficient_heights(regular.polys[level - 1], tset.base)
        observed_t = coefficient_heights(tset.polys[level - 1], tset.base)
        bound_n = theorem1_N_bound(sys.m, level, d_V, h_V)['value_ln']
        bound_t = theorem1_T_bound(sys.m, level, d_V, h_V)['value_ln']
        levels.append({
            'level': level,
            'N': {'observed': _digits(observed_n), 'bound': _digits(bound_n)},
            'T': {'observed': _digits(observed_t), 'bound': _digits(bound_t)},
            'pass': observed_n <= bound_n and observed_t <= bound_t,
        })
    return levels


def verify(args):
    """Integrality of a_l N_l and a_l^G T~_l and the N_l, T~_l height bounds - verify FILE"""
    try:
        sys, tset = _solve_file(args.file)
        regular = regular_chain(tset)
        d, h = sys.degree, sys.height
        bezout = bezout_substitution(sys.m, sys.n, d, h)
        d_V = bezout['bezout_degree']['value']
        h_V = bezout['bezout_height']['value_ln']
        dh_levels = denominator_check_levels(tset, d_V, h_V)
    except ParseException as e:
        return failure(EXIT_PARSE, e)
    except ASSUMPTION_ERRORS as e:
        return failure(EXIT_ASSUMPTION, e)
    except (DomainException, StructuralException) as e:
        return failure(EXIT_VERIFICATION, e)
    t1_levels = _theorem1_levels(sys, tset, regular, d_V, h_V)
    prop_ok = all(report['pass'] for report in dh_levels)
    t1_ok = all(report['pass'] for report in t1_levels)
    log('CLI', f"verify: propDH={prop_ok} theorem1={t1_ok}")
    body = {
        'propDH': 'pass' if prop_ok else 'fail',
        'theorem1': 'pass' if t1_ok else 'fail',
        'bezout': {'d_V': d_V, 'h_V': _digits(h_V), 'd': d, 'h': _digits(h)},
        'levels': {'propDH': dh_levels, 'theorem1': t1_levels},
    }
    return response(EXIT_OK if prop_ok and t1_ok else EXIT_VERIFICATION, body)
