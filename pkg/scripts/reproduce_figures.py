#!/usr/bin/env python3
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
Figure data reproduction script

Writes every preset (fig1..fig8) as CSV into one directory and reports
the invariant violations found in each table.

Usage:
    # All presets into ./figures
    python scripts/reproduce_figures.py

    # Selected presets, JSON, explicit directory
    python scripts/reproduce_figures.py --out-dir data --presets fig1 fig3 --output-format json
"""

import sys
import time
import logging
import argparse
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from verification.presets import PRESETS, run_preset


def reproduce(out_dir: Path, names, output_format: str = 'csv', threads=None) -> int:
    """
    Run the presets and write one file per preset

    Returns:
        Number of presets whose table failed validation
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in names:
        start = time.time()
        table = run_preset(name, threads=threads)
        path = out_dir / f"{name}.{output_format}"
        path.write_text(table.emit(output_format), encoding='utf-8')
        problems = table.validate()
        elapsed = time.time() - start
        if problems:
            failed += 1
            print(f"  ✗ {name}: {len(problems)} violations ({elapsed:.1f}s) -> {path}")
            for p in problems[:5]:
                print(f"      {p}")
        else:
            print(f"  ✓ {name}: {len(table)} rows, {len(table.skipped)} skipped ({elapsed:.1f}s) -> {path}")
    return failed


def main():
    parser = argparse.ArgumentParser(
        description='Write the data behind every figure preset',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python scripts/reproduce_figures.py --out-dir figures
  python scripts/reproduce_figures.py --presets fig5 fig8 --threads 4
        """
    )
    parser.add_argument('--out-dir', default='figures', help='Output directory (default: figures)')
    parser.add_argument('--presets', nargs='+', choices=sorted(PRESETS), default=sorted(PRESETS),
                        help='Presets to run (default: all)')
    parser.add_argument('--output-format', choices=['csv', 'json', 'text'], default='csv')
    parser.add_argument('--threads', type=int, help='Worker threads (default: available CPUs)')
    args = parser.parse_args()

    logging.basicConfig(level=logging.WARNING, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')

    print(f"\n{'='*70}")
    print(f"Reproducing {len(args.presets)} presets into {args.out_dir}")
    print(f"{'='*70}")
    try:
        failed = reproduce(Path(args.out_dir), args.presets, args.output_format, args.threads)
    except OSError as e:
        print(f"✗ I/O error: {e}", file=sys.stderr)
        return 4
    print(f"{'='*70}")
    print(f"Done: {len(args.presets) - failed}/{len(args.presets)} presets valid")
    print(f"{'='*70}\n")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
