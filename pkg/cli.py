"""
Command-line entry point - routes commands to the appropriate handlers
"""
import argparse
import json
import sys

from config import DEFAULT_SEED, EXIT_PARSE, EXIT_UNEXPECTED, log, response

from handlers import (
    # Systems
    triangularize,
    chain,
    delta,
    chow,
    verify,
    # Estimates
    bounds,
    prime_range,
    # Modular
    modular_delta,
)

# Route mapping
routes = {
    'triangularize': triangularize,
    'chain': chain,
    'delta': delta,
    'chow': chow,
    'verify': verify,
    'bounds': bounds,
    'prime-range': prime_range,
    'modular-delta': modular_delta,
}


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors get exit code 2 as JSON"""

    def error(self, message):
        raise ValueError(message)


def build_parser():
    parser = _ArgumentParser(prog='triangular', description='Triangular sets, Chow forms and height bounds')
    parser.add_argument('--format', choices=('json', 'text'), default='json')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    for name in ('triangularize', 'chain', 'delta', 'chow', 'verify'):
        command = commands.add_parser(name)
        command.add_argument('file')

    for name in ('bounds', 'prime-range'):
        command = commands.add_parser(name)
        command.add_argument('--m', type=int, required=True)
        command.add_argument('--n', type=int, required=True)
        command.add_argument('--d', type=int, required=True)
        command.add_argument('--h', required=True)
        if name == 'bounds':
            command.add_argument('--level', type=int)

    command = commands.add_parser('modular-delta')
    command.add_argument('file')
    choice = command.add_mutually_exclusive_group(required=True)
    choice.add_argument('--prime', type=int)
    choice.add_argument('--auto', action='store_true')
    command.add_argument('--seed', type=int, default=DEFAULT_SEED)
    command.add_argument('--trials', type=int)
    return parser


def render_text(body, indent=0) -> str:
    """Indented key: value lines for --format text"""
    pad = '  ' * indent
    lines = []
    if isinstance(body, dict):
        for key in sorted(body):
            value = body[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(body, list):
        for item in body:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{body}")
    return '\n'.join(lines)


def dispatch(argv) -> tuple:
    """Parse argv and run the matching handler; returns (response dict, output format)"""
    try:
        args = build_parser().parse_args(argv)
    except ValueError as e:
        return response(EXIT_PARSE, {'error': str(e)}), 'json'
    log('CLI', f"ROUTING: {args.command}")
    handler = routes.get(args.command)
    if handler is None:
        return response(EXIT_PARSE, {'error': f"unknown command {args.command}"}), args.format
    try:
        return handler(args), args.format
    except Exception as e:
        print(f"[CLI] {args.command} error: {e}", file=sys.stderr)
        import traceback
        traceback.print_exc()
        return response(EXIT_UNEXPECTED, {'error': str(e), 'type': type(e).__name__}), args.format


def run_command(argv, out=None) -> int:
    """Run one command, print its body on stdout and return the exit code"""
    out = out or sys.stdout
    result, output_format = dispatch(list(argv))
    if output_format == 'text':
        print(render_text(json.loads(result['body'])), file=out)
    else:
        print(result['body'], file=out)
    return result['exitCode']


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == '__main__':
    main()
