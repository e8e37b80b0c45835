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
Sweep engine
Builds tables of (a, b, product, C, D, alpha_opt) rows over order grids
and state lists, and emits them as CSV, JSON or text
"""

import io
import csv
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

import moment_bounds
from config import OUTPUT_CONFIG
from exceptions import DomainError
from moment_bounds import DimensionContext, MomentOrders
from systems import CentralState, HydrogenState, OscillatorState, make_state, state_moments, uncertainty_product

logger = logging.getLogger(__name__)


class OrderRange(NamedTuple):
    """Inclusive linear range lo:hi with `steps` points"""
    lo: float
    hi: float
    steps: int

    @classmethod
    def parse(cls, text: str) -> 'OrderRange':
        parts = text.split(':')
        if len(parts) != 3:
            raise DomainError(f"range must look like lo:hi:steps, got {text!r}")
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        if steps < 1:
            raise DomainError(f"range needs at least one step, got {steps}")
        if lo <= 0.0 or hi <= 0.0:
            raise DomainError(f"moment orders must be positive, got {text!r}")
        return cls(lo, hi, steps)

    def values(self) -> List[float]:
        if self.steps == 1:
            return [float(self.lo)]
        return [float(x) for x in np.linspace(self.lo, self.hi, self.steps)]


@dataclass
class SweepRow:
    a: float
    b: float
    d: int
    bound_C: float
    bound_D: float
    alpha_opt: float
    system: Optional[str] = None
    n: Optional[int] = None
    l: Optional[int] = None
    product: Optional[float] = None
    ratio: Optional[float] = None

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class SkippedRow:
    a: float
    b: float
    d: int
    system: Optional[str]
    n: Optional[int]
    l: Optional[int]
    reason: str


@dataclass
class SweepTable:
    """
    Ordered sweep rows plus the rows that could not be computed

    Row order depends only on the inputs, never on thread scheduling.
    """
    rows: List[SweepRow] = field(default_factory=list)
    skipped: List[SkippedRow] = field(default_factory=list)
    name: str = ''

    def __len__(self) -> int:
        return len(self.rows)

    def validate(self) -> List[str]:
        """Invariant violations: ratio >= 1 on physical rows, C >= D everywhere"""
        problems = []
        floor = OUTPUT_CONFIG['ratio_floor']
        slack = OUTPUT_CONFIG['dominance_slack']
        for row in self.rows:
            if row.bound_C < row.bound_D - slack:
                problems.append(f"C < D at a={row.a:g}, b={row.b:g}, d={row.d}: {row.bound_C!r} < {row.bound_D!r}")
            if row.system is not None and row.ratio is not None and row.ratio < floor:
                problems.append(
                    f"product below C for {row.system} n={row.n} l={row.l} at a={row.a:g}, b={row.b:g}: ratio {row.ratio!r}"
                )
        return problems

    def to_csv(self) -> str:
        fmt = OUTPUT_CONFIG['float_format']
        header = OUTPUT_CONFIG['csv_header']
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        for row in self.rows:
            record = row.to_dict()
            cells = []
            for key in header:
                value = record[key]
                if value is None:
                    cells.append('')
                elif isinstance(value, float):
                    cells.append(format(value, fmt))
                else:
                    cells.append(str(value))
            writer.writerow(cells)
        return buffer.getvalue()

    def to_json(self) -> str:
        return json.dumps([row.to_dict() for row in self.rows], indent=OUTPUT_CONFIG['json_indent'])

    def to_text(self) -> str:
        lines = []
        title = f"Sweep {self.name}" if self.name else "Sweep"
        lines.append('=' * 70)
        lines.append(f"{title}: {len(self.rows)} rows, {len(self.skipped)} skipped")
        lines.append('=' * 70)
        lines.append(f"{'a':>7} {'b':>7} {'d':>3} {'system':<10} {'n':>2} {'l':>2} "
                     f"{'product':>12} {'C':>12} {'D':>12} {'alpha':>10} {'ratio':>9}")
        lines.append('-' * 95)
        for r in self.rows:
            n = '' if r.n is None else str(r.n)
            l = '' if r.l is None else str(r.l)
            product = '' if r.product is None else f"{r.product:.8g}"
            ratio = '' if r.ratio is None else f"{r.ratio:.6f}"
            lines.append(f"{r.a:>7.4g} {r.b:>7.4g} {r.d:>3d} {r.system or '':<10} {n:>2} {l:>2} "
                         f"{product:>12} {r.bound_C:>12.8g} {r.bound_D:>12.8g} {r.alpha_opt:>10.6f} {ratio:>9}")
        for s in self.skipped:
            lines.append(f"  ⊘ skipped {s.system} n={s.n} l={s.l} a={s.a:g} b={s.b:g}: {s.reason}")
        return '\n'.join(lines) + '\n'

    def emit(self, output_format: str) -> str:
        if output_format == 'csv':
            return self.to_csv()
        if output_format == 'json':
            return self.to_json() + '\n'
        if output_format == 'text':
            return self.to_text()
        raise DomainError(f"unknown output format {output_format!r}")


def default_threads() -> int:
    return os.cpu_count() or 1


def _ordered_map(fn: Callable, items: Sequence, threads: Optional[int]) -> List:
    threads = threads or default_threads()
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _bound_row(a: float, b: float, ctx: DimensionContext,
               grid_points: Optional[int], tol: Optional[float]) -> SweepRow:
    orders = MomentOrders(a, b, ctx)
    result = moment_bounds.bound_C(orders, grid_points=grid_points, tol=tol)
    return SweepRow(
        a=orders.a, b=orders.b, d=ctx.d,
        bound_C=result.value,
        bound_D=moment_bounds.classical_bound_D(orders),
        alpha_opt=result.alpha_opt.value,
    )


def sweep_bounds(a_values: Iterable[float], b_range, ctx: DimensionContext,
                 threads: Optional[int] = None, grid_points: Optional[int] = None,
                 tol: Optional[float] = None, include_diagonal: bool = False,
                 name: str = '') -> SweepTable:
    """
    C, D and alpha_opt over a grid of (a, b)

    Args:
        a_values: position orders
        b_range: OrderRange or explicit sequence of momentum orders
        ctx: dimension context
        include_diagonal: also evaluate b = a for every a

    Returns:
        SweepTable with one row per (a, b), a-major
    """
    b_values = b_range.values() if isinstance(b_range, OrderRange) else [float(b) for b in b_range]
    pairs = []
    for a in a_values:
        bs = set(b_values)
        if include_diagonal:
            bs.add(float(a))
        pairs.extend((float(a), b) for b in sorted(bs))

    logger.info("Sweeping %d (a, b) pairs in d=%d", len(pairs), ctx.d)
    rows = _ordered_map(lambda ab: _bound_row(ab[0], ab[1], ctx, grid_points, tol), pairs, threads)
    return SweepTable(rows=rows, name=name)


def enumerate_states(system: str, d: int, n_max: int, l_max: Optional[int] = None) -> List[CentralState]:
    """Hydrogen: 1 <= n <= n_max, l < n. Oscillator: 0 <= n <= n_max, l <= l_max"""
    states: List[CentralState] = []
    if system == 'hydrogen':
        for n in range(1, n_max + 1):
            for l in range(0, n if l_max is None else min(n, l_max + 1)):
                states.append(HydrogenState(d, n, l))
    elif system == 'oscillator':
        top = n_max if l_max is None else l_max
        for n in range(0, n_max + 1):
            for l in range(0, top + 1):
                states.append(OscillatorState(d, n, l))
    else:
        raise DomainError(f"unknown system {system!r}")
    return states


def _state_rows(states: Sequence[CentralState], pairs: Sequence[Tuple[float, float]], ctx: DimensionContext,
                threads: Optional[int], grid_points: Optional[int], tol: Optional[float],
                name: str) -> SweepTable:
    bounds = {}
    unique = sorted(set(pairs))
    for bound in _ordered_map(lambda ab: _bound_row(ab[0], ab[1], ctx, grid_points, tol), unique, threads):
        bounds[(bound.a, bound.b)] = bound

    table = SweepTable(name=name)
    for state in states:
        for a, b in pairs:
            try:
                r_moment, p_moment = state_moments(state, a, b)
            except DomainError as e:
                logger.warning("Skipping %s n=%d l=%d (a=%g, b=%g): %s", state.system, state.n, state.l, a, b, e)
                table.skipped.append(SkippedRow(a, b, ctx.d, state.system, state.n, state.l, str(e)))
                continue
            bound = bounds[(a, b)]
            product = uncertainty_product(r_moment, p_moment, a, b)
            table.rows.append(SweepRow(
                a=a, b=b, d=ctx.d,
                bound_C=bound.bound_C, bound_D=bound.bound_D, alpha_opt=bound.alpha_opt,
                system=state.system, n=state.n, l=state.l,
                product=product, ratio=product / bound.bound_C,
            ))
    return table


def sweep_states(system: str, d: int, n_max: int, orders: Tuple[float, float],
                 l_max: Optional[int] = None, threads: Optional[int] = None,
                 grid_points: Optional[int] = None, tol: Optional[float] = None,
                 name: str = '') -> SweepTable:
    """
    One row per state of the system at fixed (a, b)

    Inadmissible (state, b) combinations are recorded in table.skipped.
    """
    ctx = DimensionContext(d)
    a, b = float(orders[0]), float(orders[1])
    states = enumerate_states(system, d, n_max, l_max)
    logger.info("Sweeping %d %s states in d=%d at (a, b) = (%g, %g)", len(states), system, d, a, b)
    return _state_rows(states, [(a, b)], ctx, threads, grid_points, tol, name)


def sweep_state_orders(system: str, d: int, n: int, l: int, a_values: Iterable[float],
                       b_values: Iterable[float], threads: Optional[int] = None,
                       grid_points: Optional[int] = None, tol: Optional[float] = None,
                       name: str = '') -> SweepTable:
    """Product and C versus (a, b) for a single state"""
    state = make_state(system, d, n, l)
    ctx = DimensionContext(d)
    pairs = [(float(a), float(b)) for a in a_values for b in b_values]
    return _state_rows([state], pairs, ctx, threads, grid_points, tol, name)
