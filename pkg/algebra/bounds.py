"""
Closed-form size estimates evaluated with upper-rounded interval arithmetic

Every estimate is returned as an entry dict:
    value_ln    upper endpoint of the natural-log size (mpf)
    value_bits  the same divided by ln 2
    value       exact integer, for counts (degrees, grid sizes, prime range ends)
    inputs      arguments the estimate was evaluated at
    formula_ref short identifier of the formula
"""
import math

import mpmath
from mpmath import iv

from config import BOUNDS_DPS, BOUNDS_GUARD_DPS, log


class working_precision:
    """Raise iv precision to BOUNDS_DPS + guard digits for the enclosed block"""

    def __enter__(self):
        self.saved = iv.prec
        iv.dps = max(BOUNDS_DPS, 30) + BOUNDS_GUARD_DPS
        return self

    def __exit__(self, *exc):
        iv.prec = self.saved
        return False


def _ln(x):
    return iv.log(iv.mpf(x))


def _upper(interval):
    """Upper endpoint as an mpf, kept at interval precision and rounded toward +inf"""
    return mpmath.mpf(interval.b, prec=iv.prec, rounding='c')


def _size(formula_ref, inputs, interval) -> dict:
    """Entry for a quantity already on the log scale (a height)"""
    return {
        'value_ln': _upper(interval),
        'value_bits': _upper(interval / _ln(2)),
        'inputs': inputs,
        'formula_ref': formula_ref,
    }


def _count(formula_ref, inputs, value: int) -> dict:
    """Entry for an exact positive integer; value_ln is ln(value)"""
    entry = {'value': int(value), 'inputs': inputs, 'formula_ref': formula_ref}
    if value > 0:
        entry['value_ln'] = _upper(_ln(value))
        entry['value_bits'] = _upper(_ln(value) / _ln(2))
    else:
        entry['value_ln'] = None
        entry['value_bits'] = None
    return entry


def constants(degrees, d_V=None) -> dict:
    """G_n, H_n, I_n of a degree profile, plus their majorants when d_V is given"""
    n = len(degrees)
    inputs = {'degrees': list(degrees)}
    with working_precision():
        g_n = 1 + 2 * sum(d - 1 for d in degrees[:-1])
        h_n = 5 * _ln(n + 3) * sum(degrees)
        i_n = h_n + 3 * _ln(2) * sum(d * (d - 1) for d in degrees[:-1])
        result = {
            'G_n': _count('G_n', inputs, g_n),
            'H_n': _size('H_n', inputs, h_n),
            'I_n': _size('I_n', inputs, i_n),
        }
        if d_V is not None:
            major = {'d_V': d_V, 'n': n}
            result['G_n_majorant'] = _count('G_n<=2d_V', major, 2 * d_V)
            result['H_n_majorant'] = _size('H_n<=5ln(n+3)(d_V+n)', major,
                                           5 * _ln(n + 3) * (d_V + n))
            result['I_n_majorant'] = _size('I_n<=3d_V^2+5ln(n+3)(d_V+n)', major,
                                           3 * iv.mpf(d_V) ** 2 + 5 * _ln(n + 3) * (d_V + n))
    return result


def _theorem1_N(m, level, d, h):
    return (2 * iv.mpf(h)
            + ((4 * m + 2) * d + 4 * m) * _ln(d + 1)
            + ((10 * m + 16) * d + 5 * level + 2 * m) * _ln(m + level + 3))


def _theorem1_T(m, level, d, h):
    return (4 * d * iv.mpf(h) + 3 * d ** 2
            + 4 * ((2 * m + 1) * d ** 2 + m * (d + 1)) * _ln(d + 1)
            + ((20 * m + 22) * d ** 2 + 5 * (d + level + m)) * _ln(m + level + 3))


def _theorem1_T_regrouped(m, level, d, h):
    """Same value as _theorem1_T, grouped as a polynomial in d"""
    a = _ln(d + 1)
    b = _ln(m + level + 3)
    quadratic = 3 + 4 * (2 * m + 1) * a + (20 * m + 22) * b
    linear = 4 * iv.mpf(h) + 4 * m * a + 5 * b
    constant = 4 * m * a + 5 * (level + m) * b
    return (quadratic * d + linear) * d + constant


def theorem1_N_bound(m, level, d_V, h_V) -> dict:
    """Height bound for the coefficients of N_level"""
    with working_precision():
        return _size('H_l', {'m': m, 'l': level, 'd_V': d_V, 'h_V': h_V},
                     _theorem1_N(m, level, d_V, h_V))


def theorem1_T_bound(m, level, d_V, h_V) -> dict:
    """Height bound for the coefficients of T_level"""
    with working_precision():
        return _size("H'_l", {'m': m, 'l': level, 'd_V': d_V, 'h_V': h_V},
                     _theorem1_T(m, level, d_V, h_V))


def regrouping_agrees(m, level, d_V, h_V, digits: int = 30) -> bool:
    """Direct and regrouped evaluations of the T bound agree to `digits` digits"""
    with working_precision():
        direct = _upper(_theorem1_T(m, level, d_V, h_V))
        regrouped = _upper(_theorem1_T_regrouped(m, level, d_V, h_V))
        with mpmath.workprec(iv.prec):
            scale = max(abs(direct), mpmath.mpf(1))
            return abs(direct - regrouped) <= scale * mpmath.mpf(10) ** (-digits)


def bezout_substitution(m, n, d, h) -> dict:
    """Degree d^n and height d^n(nh + (4m+2n+3)ln(m+n+1)) of the projections"""
    inputs = {'m': m, 'n': n, 'd': d, 'h': h}
    with working_precision():
        degree = d ** n
        return {
            'bezout_degree': _count('d_V<=d^n', inputs, degree),
            'bezout_height': _size('h_V<=d^n(nh+(4m+2n+3)ln(m+n+1))', inputs,
                                   degree * (n * iv.mpf(h) + (4 * m + 2 * n + 3) * _ln(m + n + 1))),
        }


def chow_height_bound(m, n, d_V, h_V) -> dict:
    with working_precision():
        return _size('h(C*)<=h_V+5(m+1)d_V ln(m+n+2)', {'m': m, 'n': n, 'd_V': d_V, 'h_V': h_V},
                     iv.mpf(h_V) + 5 * (m + 1) * d_V * _ln(m + n + 2))


def _specialized_core(m, n, d_V, h_V, M):
    log_m = _ln(M) if M > 1 else iv.mpf(0)
    return (2 * iv.mpf(h_V) + (6 * m + 5) * d_V * _ln(m + n + 2)
            + (m + 1) * d_V * log_m + m * _ln(d_V + 1))


def specialization_bounds(m, n, d_V, h_V, M, degrees) -> dict:
    """Heights of a_{n,y} N_{n,y} and a_{n,y}^{G_n} T~_{n,y} at a good point of [1, M]^m"""
    inputs = {'m': m, 'n': n, 'd_V': d_V, 'h_V': h_V, 'M': M, 'degrees': list(degrees)}
    consts = constants(degrees)
    g_n = consts['G_n']['value']
    with working_precision():
        core = _specialized_core(m, n, d_V, h_V, M)
        h_n = 5 * _ln(n + 3) * sum(degrees)
        i_n = h_n + 3 * _ln(2) * sum(d * (d - 1) for d in degrees[:-1])
        return {
            'specialized_N': _size('l(a_y N_y)', inputs, core + h_n),
            'specialized_T': _size('l(a_y^G T~_y)', inputs, g_n * core + i_n),
        }


def interpolated_bounds(m, n, d_V, h_V, degrees) -> dict:
    """Coefficient bounds of a_n N_n and a_n^G T~_n after interpolation on the L_i, M_i grids"""
    consts = constants(degrees)
    g_n = consts['G_n']['value']
    grids = grid_sizes(n, d_V, g_n)
    L1, L2 = grids['L1']['value'], grids['L2']['value']
    M1, M2 = grids['M1']['value'], grids['M2']['value']
    specialized_1 = specialization_bounds(m, n, d_V, h_V, M1, degrees)['specialized_N']
    specialized_2 = specialization_bounds(m, n, d_V, h_V, M2, degrees)['specialized_T']
    inputs = {'m': m, 'n': n, 'd_V': d_V, 'h_V': h_V, 'degrees': list(degrees)}
    with working_precision():
        spread_1 = m * L1 * _ln(M1 + 1) + m * _ln(L1)
        spread_2 = m * L2 * _ln(M2 + 1) + m * _ln(L2)
        return {
            'interpolated_N': _size('l(g_i)', inputs, iv.mpf(specialized_1['value_ln']) + spread_1),
            'interpolated_T': _size('l(b_i)', inputs, iv.mpf(specialized_2['value_ln']) + spread_2),
        }


def grid_sizes(n, d_V, g_n) -> dict:
    inputs = {'n': n, 'd_V': d_V, 'G_n': g_n}
    L1 = d_V + 1
    L2 = g_n * d_V + 1
    spread = (3 * n * d_V + n * n) * d_V
    with working_precision():
        return {
            'L1': _count('L1=d_V+1', inputs, L1),
            'L2': _count('L2=G_n d_V+1', inputs, L2),
            'M1': _count('M=(3n d_V+n^2)d_V+L1', inputs, spread + L1),
            'M2': _count('M=(3n d_V+n^2)d_V+L2', inputs, spread + L2),
        }


def specialized_denominator_bound(m, d_V, a_n_size, M) -> dict:
    """l(a_{n,y}) <= l(a_n) + d_V ln M + m ln(1 + d_V)"""
    with working_precision():
        log_m = _ln(M) if M > 1 else iv.mpf(0)
        return _size('l(a_y)<=l(a)+d_V ln M+m ln(1+d_V)',
                     {'m': m, 'd_V': d_V, 'l(a_n)': str(a_n_size), 'M': M},
                     iv.mpf(a_n_size) + d_V * log_m + m * _ln(1 + d_V))


def fiber_height_bound(m, n, d_V, h_V, M) -> dict:
    """h(V_y) <= h_V + m d_V ln M + m d_V ln(m+n+1)"""
    with working_precision():
        log_m = _ln(M) if M > 1 else iv.mpf(0)
        return _size('h(V_y)', {'m': m, 'n': n, 'd_V': d_V, 'h_V': h_V, 'M': M},
                     iv.mpf(h_V) + m * d_V * log_m + m * d_V * _ln(m + n + 1))


def modular_prime_bound(m, n, d, h) -> dict:
    """Height H_A of the integer whose prime factors may spoil reduction, and [6H_A, 12H_A]

    Args:
        m: number of parameters
        n: number of unknowns (and equations)
        d: degree bound of the generators
        h: height bound of the generators

    Returns:
        dict of entries, one per sub-formula, plus H_A and the prime range
    """
    inputs = {'m': m, 'n': n, 'd': d, 'h': h}
    with working_precision():
        hh = iv.mpf(h)
        h1 = n * (hh + _ln(n * d) + d * _ln(n + 1))
        d1 = n * d
        d2 = n * d ** (n + 1) + 1
        h2 = n * d ** (n + 1) * (2 * n * hh + (4 * m + 2 * n + 2) * _ln(m + n + 1)
                                 + n * _ln(n * d) + n * d * _ln(n + 1) + 2)
        nu = 2 * (m + n + 2) * _ln(d2 + 1)
        ell0 = hh + 3 * nu + _ln(6) + _ln(n + 2)
        ell1 = h1 + 2 * nu + _ln(2) + _ln(n + 2)
        ell2 = h2 + nu + _ln(n + 2)
        delta = d ** n * d1 * d2
        eta = d ** n * (d2 * d1 * ((n + 2) * ell0 + (m + 2 * n + 3) * _ln(m + n + 2))
                        + ell1 * d2 + ell2 * d1)
        s = m + n + 2
        h_a2 = s ** 2 * d2 * (2 * eta + (h2 + _ln(n + 2)) * delta
                              + 21 * s ** 2 * d2 * delta * _ln(d2 + 1))
        d_V = d ** n
        h_V = d_V * (n * hh + (4 * m + 2 * n + 3) * _ln(m + n + 1))
        t_bounds = [_theorem1_T(m, level, d_V, h_V) for level in range(1, n + 1)]
        h_a0 = sum(t_bounds[1:], t_bounds[0])
        h_a1 = h2
        h_a3 = iv.mpf(0)
        for bound in t_bounds:
            h_a3 += 2 * d ** (2 * n) * m * (bound + m * _ln(2 * d ** (2 * n) + 1)) + 2 * bound
        total = h_a0 + h_a1 + h_a2 + h_a3
        with mpmath.workdps(max(BOUNDS_DPS, 30) + BOUNDS_GUARD_DPS):
            upper = _upper(total)
            low = int(mpmath.ceil(6 * upper))
            high = int(mpmath.floor(12 * upper))
        report = {
            "h'": _size("h'=n(h+ln(nd)+d ln(n+1))", inputs, h1),
            "d'": _count("d'=nd", inputs, d1),
            'd"': _count('d"=nd^(n+1)+1', inputs, d2),
            'h"': _size('h"', inputs, h2),
            'nu': _size('nu=2(m+n+2)ln(d"+1)', inputs, nu),
            'ell': _size('ell=h+3nu+ln6+ln(n+2)', inputs, ell0),
            "ell'": _size("ell'=h'+2nu+ln2+ln(n+2)", inputs, ell1),
            'ell"': _size('ell"=h"+nu+ln(n+2)', inputs, ell2),
            'delta': _count("delta=d^n d' d\"", inputs, delta),
            'eta': _size('eta', inputs, eta),
            'h(A0)': _size("sum_l H'_l(d^n, h_bezout)", inputs, h_a0),
            'h(A1)': _size('h"', inputs, h_a1),
            'h(A2)': _size('(m+n+2)^2 d"(2eta+(h"+ln(n+2))delta+21(m+n+2)^2 d" delta ln(d"+1))',
                           inputs, h_a2),
            'h(A3)': _size("sum_l 2d^2n m(H'_l+m ln(2d^2n+1))+2H'_l", inputs, h_a3),
            'H_A': _size('H_A=h(A0)+h(A1)+h(A2)+h(A3)', inputs, total),
            'prime_range_lower': _count('6H_A', inputs, low),
            'prime_range_upper': _count('12H_A', inputs, high),
        }
    log('Bounds', f"prime range upper end has {high.bit_length()} bits")
    return report


def bound_report(m, n, d, h, level=None) -> dict:
    """Every estimate for a system of n generators of degree <= d and height <= h

    Per-level degrees are unknown from (m, n, d, h); the profile (d^n, 1, ..., 1)
    maximizes G_n, H_n and I_n among profiles with product d^n and is used instead.
    """
    report = {}
    bezout = bezout_substitution(m, n, d, h)
    report.update(bezout)
    d_V = bezout['bezout_degree']['value']
    h_V = bezout['bezout_height']['value_ln']
    levels = [level] if level is not None else list(range(1, n + 1))
    for lev in levels:
        report[f'theorem1_N_{lev}'] = theorem1_N_bound(m, lev, d_V, h_V)
        report[f'theorem1_T_{lev}'] = theorem1_T_bound(m, lev, d_V, h_V)
    degrees = [d_V] + [1] * (n - 1)
    consts = constants(degrees, d_V)
    report.update(consts)
    g_n = consts['G_n']['value']
    grids = grid_sizes(n, d_V, g_n)
    report.update(grids)
    report['chow_height'] = chow_height_bound(m, n, d_V, h_V)
    report.update(specialization_bounds(m, n, d_V, h_V, grids['M1']['value'], degrees))
    report.update(interpolated_bounds(m, n, d_V, h_V, degrees))
    report['fiber_height'] = fiber_height_bound(m, n, d_V, h_V, grids['M1']['value'])
    report['specialized_denominator'] = specialized_denominator_bound(
        m, d_V, report['chow_height']['value_ln'], grids['M1']['value'])
    report.update(modular_prime_bound(m, n, d, h))
    return report


def serialize_entry(entry: dict) -> dict:
    """JSON-ready entry; floats rounded upward so bounds are never under-reported"""
    out = {'inputs': _plain(entry['inputs']), 'formula_ref': entry['formula_ref']}
    for key in ('value_ln', 'value_bits'):
        value = entry.get(key)
        out[key] = None if value is None else math.nextafter(float(value), math.inf)
    if entry.get('value_ln') is not None:
        out['value_ln_digits'] = mpmath.nstr(entry['value_ln'], max(BOUNDS_DPS, 30))
    if 'value' in entry:
        out['value'] = entry['value']
    return out


def _plain(value):
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, max(BOUNDS_DPS, 30))
    return value


def serialize_report(report: dict) -> dict:
    return {key: serialize_entry(entry) for key, entry in report.items()}
