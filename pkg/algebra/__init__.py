"""
Algebra package - export the library operations
"""
from algebra.poly_core import (
    CoefficientField,
    Valuation,
    content_primpart,
    delta_of,
    format_poly,
    gcd_mpoly,
    height,
    log_abs,
    resultant,
    system_ring,
)

from algebra.triangular import (
    TriangularSet,
    delta_measure,
    invert_modulo,
    iterated_resultants,
    normal_form,
    regular_chain,
    specialize,
)

from algebra.solve import SystemInput, eliminate_oracle, triangularize

from algebra.chow import (
    MultiChow,
    denominator_check,
    denominator_check_levels,
    monic_chow,
    primitive_chow,
    substitute_epsilon,
    substitute_kps,
)

from algebra.interp import (
    build_equiprojectable,
    evaluate_at_set,
    interpolate,
    reconstruct_scaled_chain,
    vandermonde_solve,
)

from algebra.bounds import (
    bezout_substitution,
    bound_report,
    chow_height_bound,
    constants,
    modular_prime_bound,
    theorem1_N_bound,
    theorem1_T_bound,
)

from algebra.modular import (
    cross_check,
    degree_profile,
    jacobian_check,
    random_prime_in_range,
    reduce_mod_p,
)

__all__ = [
    # Polynomial kernel
    'CoefficientField',
    'Valuation',
    'content_primpart',
    'delta_of',
    'format_poly',
    'gcd_mpoly',
    'height',
    'log_abs',
    'resultant',
    'system_ring',
    # Triangular sets
    'TriangularSet',
    'delta_measure',
    'invert_modulo',
    'iterated_resultants',
    'normal_form',
    'regular_chain',
    'specialize',
    # Solving
    'SystemInput',
    'eliminate_oracle',
    'triangularize',
    # Chow forms
    'MultiChow',
    'denominator_check',
    'denominator_check_levels',
    'monic_chow',
    'primitive_chow',
    'substitute_epsilon',
    'substitute_kps',
    # Interpolation
    'build_equiprojectable',
    'evaluate_at_set',
    'interpolate',
    'reconstruct_scaled_chain',
    'vandermonde_solve',
    # Bounds
    'bezout_substitution',
    'bound_report',
    'chow_height_bound',
    'constants',
    'modular_prime_bound',
    'theorem1_N_bound',
    'theorem1_T_bound',
    # Modular
    'cross_check',
    'degree_profile',
    'jacobian_check',
    'random_prime_in_range',
    'reduce_mod_p',
]
