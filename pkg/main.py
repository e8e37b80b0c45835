# Copyright 2025 MomentBound Contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Main entry point for MomentBound - moment uncertainty bounds from Renyi entropies
Subcommands: bound, moments, sweep, verify
"""

import io
import csv
import sys
import json
import logging
import argparse
from typing import Dict, List, Optional

import moment_bounds
from config import OPTIMIZER_CONFIG, OUTPUT_CONFIG
from exceptions import DivergentMomentError, DomainError, UncertaintyError
from moment_bounds import DimensionContext, MomentOrders
from systems import SYSTEMS, make_state, state_moments, uncertainty_product
from verification.presets import PRESETS, run_preset
from verification.suite import SuiteConfig, run_invariant_suite
from verification.sweeps import OrderRange, sweep_bounds, sweep_state_orders, sweep_states

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DIVERGENT = 3
EXIT_IO = 4

FORMATS = ('csv', 'json', 'text')


def _fmt(value: float) -> str:
    return format(value, OUTPUT_CONFIG['float_format'])


def _record_csv(record: Dict) -> str:
    """One header line and one data line, floats at full precision"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(list(record))
    writer.writerow([_fmt(v) if isinstance(v, float) else str(v) for v in record.values()])
    return buffer.getvalue()


def _record_json(record: Dict) -> str:
    return json.dumps(record, indent=OUTPUT_CONFIG['json_indent']) + '\n'


def _require(args, *names: str):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError(f"{args.command} needs {', '.join(missing)}")


def _emit(text: str, output_path: Optional[str]):
    if output_path:
        with open(output_path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.info("Wrote %s", output_path)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    """C(a, b) and D(a, b) for one pair of orders"""
    _require(args, 'a', 'b')
    orders = MomentOrders(args.a, args.b, DimensionContext(args.dim))
    result = moment_bounds.bound_C(orders, grid_points=args.grid, tol=args.tol)
    bound_D = moment_bounds.classical_bound_D(orders)
    lo, hi = result.search_interval

    fmt = args.output_format or 'text'
    if fmt == 'json':
        text = _record_json({
            'a': orders.a, 'b': orders.b, 'd': orders.ctx.d,
            'C': result.value, 'D': bound_D,
            'alpha_opt': result.alpha_opt.value,
            'search_interval': [lo, hi],
        })
    elif fmt == 'csv':
        text = _record_csv({
            'a': orders.a, 'b': orders.b, 'd': orders.ctx.d,
            'C': result.value, 'D': bound_D,
            'alpha_opt': result.alpha_opt.value,
            'search_lo': lo, 'search_hi': hi,
        })
    else:
        lines = [
            '=' * 70,
            f"Moment bound for a={orders.a:g}, b={orders.b:g}, d={orders.ctx.d}",
            '=' * 70,
            f"  C(a,b)     = {_fmt(result.value)}",
            f"  D(a,b)     = {_fmt(bound_D)}",
            f"  alpha_opt  = {_fmt(result.alpha_opt.value)}",
            f"  search     = ({lo:.12g}, {hi:.12g}]" + (" on the swapped pair" if result.swapped else ''),
            f"  evaluations: {result.evaluations}",
        ]
        if result.value >= bound_D:
            lines.append(f"  ✓ C improves on D by {result.value / bound_D - 1.0:.3%}")
        else:
            lines.append("  ✗ C below D")
        lines.append('=' * 70)
        text = '\n'.join(lines) + '\n'
    _emit(text, args.output_path)
    return EXIT_OK


def cmd_moments(args) -> int:
    """<r^a>, <p^b> and their product for one eigenstate, compared with C(a, b)"""
    _require(args, 'a', 'b', 'system', 'n')
    l = args.l if args.l is not None else 0
    state = make_state(args.system, args.dim, args.n, l)
    r_moment, p_moment = state_moments(state, args.a, args.b)
    product = uncertainty_product(r_moment, p_moment, args.a, args.b)
    result = moment_bounds.bound_C(MomentOrders(args.a, args.b, state.ctx), grid_points=args.grid, tol=args.tol)
    ratio = product / result.value
    record = {
        'system': args.system, 'd': state.d, 'n': state.n, 'l': state.l,
        'r_moment': r_moment, 'p_moment': p_moment,
        'product': product, 'C': result.value, 'ratio': ratio,
    }

    fmt = args.output_format or 'text'
    if fmt == 'json':
        text = _record_json(record)
    elif fmt == 'csv':
        text = _record_csv(record)
    else:
        mark = '✓' if ratio >= OUTPUT_CONFIG['ratio_floor'] else '✗'
        lines = [
            '=' * 70,
            f"{args.system} d={state.d} n={state.n} l={state.l}, a={args.a:g}, b={args.b:g}",
            '=' * 70,
            f"  <r^a>      = {_fmt(r_moment)}",
            f"  <p^b>      = {_fmt(p_moment)}",
            f"  product    = {_fmt(product)}",
            f"  C(a,b)     = {_fmt(result.value)}",
            f"  {mark} ratio    = {_fmt(ratio)}",
            '=' * 70,
        ]
        text = '\n'.join(lines) + '\n'
    _emit(text, args.output_path)
    return EXIT_OK


def _a_values(args) -> List[float]:
    if args.a_list:
        return [float(x) for x in args.a_list.split(',') if x.strip()]
    _require(args, 'a')
    return [args.a]


def _b_values(args) -> List[float]:
    if args.b_range:
        return OrderRange.parse(args.b_range).values()
    _require(args, 'b')
    return [args.b]


def cmd_sweep(args) -> int:
    """Preset, state-list, single-state or bound-only sweeps"""
    common = dict(threads=args.threads, grid_points=args.grid, tol=args.tol)
    if args.preset:
        table = run_preset(args.preset, **common)
    elif args.system and args.n_max is not None:
        _require(args, 'a', 'b')
        table = sweep_states(args.system, args.dim, args.n_max, (args.a, args.b), l_max=args.l_max, **common)
    elif args.system:
        _require(args, 'n')
        l = args.l if args.l is not None else 0
        table = sweep_state_orders(args.system, args.dim, args.n, l, _a_values(args), _b_values(args), **common)
    else:
        table = sweep_bounds(_a_values(args), _b_values(args), DimensionContext(args.dim), **common)

    for problem in table.validate():
        logger.warning("✗ %s", problem)
    _emit(table.emit(args.output_format or 'csv'), args.output_path)
    return EXIT_OK


def cmd_verify(args) -> int:
    fmt = args.output_format or 'text'
    if fmt == 'csv':
        raise DomainError("verify reports are written as text or json")
    overrides = dict(grid_points=args.grid, tol=args.tol, threads=args.threads)
    config = SuiteConfig.quick_run(**overrides) if args.quick else SuiteConfig.full(**overrides)
    report = run_invariant_suite(config)
    _emit(report.to_json() + '\n' if fmt == 'json' else report.to_text(), args.output_path)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


COMMAND_HELP = {
    'bound': 'Optimized bound C(a,b) and classical D(a,b)',
    'moments': 'Eigenstate moments against C(a,b)',
    'sweep': 'Tables over order grids, state lists or presets',
    'verify': 'Run the invariant suite',
}

COMMANDS = {
    'bound': cmd_bound,
    'moments': cmd_moments,
    'sweep': cmd_sweep,
    'verify': cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--a', type=float, help='Position moment order a > 0')
    common.add_argument('--b', type=float, help='Momentum moment order b > 0')
    common.add_argument('--dim', type=int, default=3, help='Spatial dimension d (default: 3)')
    common.add_argument('--system', choices=SYSTEMS, help='Quantum system')
    common.add_argument('--n', type=int, help='Principal (hydrogen) or radial (oscillator) quantum number')
    common.add_argument('--l', type=int, help='Angular quantum number (default: 0)')
    common.add_argument('--n-max', type=int, help='Largest n in a state sweep')
    common.add_argument('--l-max', type=int, help='Largest l in a state sweep')
    common.add_argument('--preset', choices=sorted(PRESETS), help='Named figure configuration')
    common.add_argument('--a-list', help='Comma-separated position orders, e.g. 0.5,1,2')
    common.add_argument('--b-range', help='Momentum orders as lo:hi:steps, e.g. 0.5:4:8')
    common.add_argument('--out', '--output-path', dest='output_path', help='Write output to this file')
    common.add_argument('--output-format', choices=FORMATS,
                        help='csv, json or text (default: csv for sweep, text otherwise)')
    common.add_argument('--tol', type=float, default=OPTIMIZER_CONFIG['tolerance'],
                        help='Optimizer bracket width (default: %(default)g)')
    common.add_argument('--grid', type=int, default=OPTIMIZER_CONFIG['grid_points'],
                        help='Coarse optimizer grid points, at least 16 (default: %(default)d)')
    common.add_argument('--quick', action='store_true', help='Reduced grids for verify')
    common.add_argument('--threads', type=int, help='Sweep worker threads (default: available CPUs)')
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', action='store_true', help='Debug logging on stderr')
    verbosity.add_argument('--quiet', action='store_true', help='Warnings only on stderr')

    parser = argparse.ArgumentParser(
        description='Moment-based position-momentum uncertainty bounds of arbitrary order',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Optimized bound C(a,b) against the classical D(a,b)
  python main.py bound --a 1 --b 2 --dim 3

  # Hydrogen ground state against the bound
  python main.py moments --system hydrogen --dim 3 --n 1 --l 0 --a 1 --b 2

  # Figure data as CSV
  python main.py sweep --preset fig1 --out fig1.csv
  python main.py sweep --a-list 2 --b-range 0.5:4:8 --dim 5

  # Run every invariant check
  python main.py verify --quick

Exit codes: 0 ok, 1 verification failed, 2 bad arguments,
3 divergent moment, 4 I/O error
        """
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[common], help=COMMAND_HELP[name])
    return parser


def _configure_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and map errors onto exit codes
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    _configure_logging(args)

    try:
        if args.grid < OPTIMIZER_CONFIG['min_grid_points']:
            raise DomainError(f"--grid must be at least {OPTIMIZER_CONFIG['min_grid_points']}")
        if not args.tol > 0.0:
            raise DomainError("--tol must be positive")
        if args.threads is not None and args.threads < 1:
            raise DomainError("--threads must be at least 1")
        return COMMANDS[args.command](args)
    except DivergentMomentError as e:
        print(f"✗ Divergent moment: {e}", file=sys.stderr)
        return EXIT_DIVERGENT
    except (DomainError, ValueError) as e:
        print(f"✗ Invalid arguments: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"✗ I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except UncertaintyError as e:
        print(f"✗ Computation failed: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
