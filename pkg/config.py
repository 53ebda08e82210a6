"""
Configuration and shared utilities for the triangular-set toolkit
"""
import json
import os
import sys

# Configuration - Read from environment variables
DEFAULT_SEED = int(os.environ.get('TRIANGULAR_SEED', '0'))
BOUNDS_DPS = int(os.environ.get('TRIANGULAR_BOUNDS_DPS', '30'))
# Guard digits on top of BOUNDS_DPS so integer prime ranges stay exact
BOUNDS_GUARD_DPS = 60
MILLER_RABIN_ROUNDS = int(os.environ.get('TRIANGULAR_MR_ROUNDS', '40'))
MAX_DRAWS_FACTOR = int(os.environ.get('TRIANGULAR_MAX_DRAWS_FACTOR', '10'))
WORKERS = int(os.environ.get('TRIANGULAR_WORKERS', '1'))
INTERP_TRIALS = int(os.environ.get('TRIANGULAR_INTERP_TRIALS', '200'))
VERBOSE = os.environ.get('TRIANGULAR_VERBOSE', '') == '1'

# Exit codes
EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2
EXIT_ASSUMPTION = 3
EXIT_VERIFICATION = 4


def response(exit_code, body):
    """Helper to return a CLI response with key-sorted JSON body"""
    return {
        'exitCode': exit_code,
        'body': json.dumps(body, sort_keys=True, default=str)
    }


def log(tag, message):
    """Print a tagged progress line on stderr (stdout carries the JSON)"""
    if VERBOSE:
        print(f"[{tag}] {message}", file=sys.stderr)


def failure(exit_code, error):
    """Helper to return an error response naming the exception type"""
    body = {'error': str(error), 'type': type(error).__name__}
    if hasattr(error, 'to_dict'):
        body.update(error.to_dict())
    return response(exit_code, body)
