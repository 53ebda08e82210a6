"""
Handlers package - export all command handlers
"""
from handlers.systems import (
    triangularize,
    chain,
    delta,
    chow,
    verify,
)

from handlers.estimates import (
    bounds,
    prime_range,
)

from handlers.modular_runs import modular_delta

from handlers.system_file import (
    ParseException,
    parse_system,
    format_system,
    parse_multichow,
)

__all__ = [
    # Systems
    'triangularize',
    'chain',
    'delta',
    'chow',
    'verify',
    # Estimates
    'bounds',
    'prime_range',
    # Modular
    'modular_delta',
    # System files
    'ParseException',
    'parse_system',
    'format_system',
    'parse_multichow',
]
