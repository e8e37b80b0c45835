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
Invariant suite
Runs every structural property of the bounds and the quantum systems
as one pass/fail gate with per-check residuals and timings
"""

import math
import time
import json
import logging
import itertools
from dataclasses import dataclass, field, asdict
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

import specfun
import entropic_bounds
import moment_bounds
from config import OPTIMIZER_CONFIG, SUITE_CONFIG
from exceptions import DomainError, UncertaintyError
from moment_bounds import DimensionContext, MomentOrders
from systems import (
    HydrogenState, OscillatorState, hydrogen_moment_p, hydrogen_moment_r, hydrogen_radial_momentum,
    hydrogen_radial_position, oscillator_moment, oscillator_radial, quadrature_moment,
    state_moments, uncertainty_product,
)
from verification.presets import run_preset
from verification.sweeps import OrderRange, enumerate_states, sweep_bounds

logger = logging.getLogger(__name__)

CheckOutcome = Tuple[bool, float, str]


@dataclass
class SuiteConfig:
    """Grids and optimizer settings for one suite run"""
    order_grid: List[float]
    dimensions: List[int]
    state_dimensions: List[int]
    n_max: int
    moment_orders: List[float]
    monotone_points: int
    random_pairs: int
    curve_grid: int
    seed: int
    quick: bool = False
    grid_points: int = OPTIMIZER_CONFIG['grid_points']
    tol: float = OPTIMIZER_CONFIG['tolerance']
    threads: Optional[int] = None

    @classmethod
    def full(cls, **overrides) -> 'SuiteConfig':
        return cls(**{**SUITE_CONFIG['full'], **overrides})

    @classmethod
    def quick_run(cls, **overrides) -> 'SuiteConfig':
        return cls(**{**SUITE_CONFIG['quick'], 'quick': True, **overrides})


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst_residual: float
    runtime: float
    detail: str = ''
    advisory: bool = False


@dataclass
class SuiteReport:
    checks: List[CheckResult] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.advisory)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed and not c.advisory]

    def to_dict(self) -> Dict:
        return {
            'passed': self.passed,
            'runtime': self.runtime,
            'checks': [asdict(c) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = ['=' * 70, 'INVARIANT SUITE', '=' * 70]
        for c in self.checks:
            if c.passed:
                mark = '✓'
            elif c.advisory:
                mark = '⚠️ '
            else:
                mark = '✗'
            lines.append(f"  {mark} {c.name:<40} worst={c.worst_residual:.3e}  {c.runtime:7.3f}s")
            if c.detail and not c.passed:
                lines.append(f"      {c.detail}")
        lines.append('-' * 70)
        passed = sum(1 for c in self.checks if c.passed)
        lines.append(f"  {passed}/{len(self.checks)} checks passed in {self.runtime:.2f}s")
        lines.append(f"  Overall: {'PASS' if self.passed else 'FAIL'}")
        lines.append('=' * 70)
        return '\n'.join(lines) + '\n'


class _BoundCache:
    """C(a, b, d) memo shared by the checks of one run"""

    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self._cache: Dict[Tuple[float, float, int], moment_bounds.BoundResult] = {}

    def get(self, a: float, b: float, d: int) -> moment_bounds.BoundResult:
        key = (float(a), float(b), int(d))
        if key not in self._cache:
            self._cache[key] = moment_bounds.bound_C(
                MomentOrders(a, b, DimensionContext(d)),
                grid_points=self.cfg.grid_points, tol=self.cfg.tol,
            )
        return self._cache[key]


def _relative(x: float, y: float) -> float:
    return abs(x - y) / max(abs(y), 1e-300)


# ---------------------------------------------------------------- specfun

def check_gamma_recurrence(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for x in rng.uniform(0.1, 50.0, 100):
        x = float(x)
        ratio = math.exp(specfun.log_gamma(x + 1.0) - specfun.log_gamma(x))
        worst = max(worst, _relative(ratio, x))
    return worst <= 1e-12, worst, ''


def check_digamma_consistency(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    h = 1e-6
    worst = 0.0
    for x in np.linspace(0.5, 40.0, 60):
        x = float(x)
        fd = (specfun.log_gamma(x + h) - specfun.log_gamma(x - h)) / (2.0 * h)
        worst = max(worst, abs(specfun.digamma(x) - fd))
    return worst <= 1e-6, worst, ''


def _random_terminating_spec(rng, max_k: int) -> specfun.HypergeometricSpec:
    K = int(rng.integers(0, max_k + 1))
    upper = [-float(K)] + [float(u) for u in rng.uniform(0.1, 5.0, int(rng.integers(1, 4)))]
    lower = [float(v) for v in rng.uniform(0.5, 5.0, int(rng.integers(1, 4)))]
    return specfun.HypergeometricSpec(upper=upper, lower=lower)


def _naive_terms(spec: specfun.HypergeometricSpec) -> List[float]:
    K = spec.termination_index or 0
    terms = []
    for k in range(K + 1):
        num = math.prod(specfun.pochhammer(a, k) for a in spec.upper)
        den = math.prod(specfun.pochhammer(b, k) for b in spec.lower) * math.factorial(k)
        terms.append(num / den)
    return terms


def check_pfq_permutation(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    rng = np.random.default_rng(cfg.seed + 1)
    worst = 0.0
    for _ in range(50):
        spec = _random_terminating_spec(rng, 8)
        permuted = specfun.HypergeometricSpec(
            upper=[spec.upper[i] for i in rng.permutation(len(spec.upper))],
            lower=[spec.lower[i] for i in rng.permutation(len(spec.lower))],
        )
        scale = math.fsum(abs(t) for t in _naive_terms(spec))
        diff = abs(specfun.hyp_pfq_unit(spec) - specfun.hyp_pfq_unit(permuted))
        worst = max(worst, diff / scale)
    return worst <= 1e-14, worst, 'relative to the sum of |terms|'


def check_pfq_bruteforce(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    rng = np.random.default_rng(cfg.seed + 2)
    worst = 0.0
    for _ in range(50):
        spec = _random_terminating_spec(rng, 20)
        terms = _naive_terms(spec)
        scale = math.fsum(abs(t) for t in terms)
        diff = abs(specfun.hyp_pfq_unit(spec) - math.fsum(terms))
        worst = max(worst, diff / scale)
    return worst <= 1e-12, worst, 'relative to the sum of |terms|'


# ---------------------------------------------------------------- entropic bounds

def check_B_shape(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    rising = np.geomspace(0.5, 1.0, cfg.monotone_points)
    falling = np.geomspace(1.0, 20.0, cfg.monotone_points)
    up = [entropic_bounds.bound_B(float(x)) for x in rising]
    down = [entropic_bounds.bound_B(float(x)) for x in falling]
    bad_up = [i for i in range(len(up) - 1) if not up[i + 1] > up[i]]
    bad_down = [i for i in range(len(down) - 1) if not down[i + 1] < down[i]]
    ok = not bad_up and not bad_down
    return ok, float(len(bad_up) + len(bad_down)), f"{len(bad_up)} rising / {len(bad_down)} falling violations"


def check_B_conjugation(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    rng = np.random.default_rng(cfg.seed + 3)
    worst = 0.0
    for alpha in rng.uniform(0.5 + 1e-9, 10.0, 100):
        alpha = float(alpha)
        b = entropic_bounds.bound_B(alpha)
        worst = max(worst, _relative(entropic_bounds.bound_B(entropic_bounds.conjugate(alpha)), b))
    return worst <= 1e-13, worst, ''


def check_gaussian_sharpness(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    rng = np.random.default_rng(cfg.seed + 4)
    worst = 0.0
    for alpha, sigma, d in zip(rng.uniform(0.51, 10.0, 50), rng.uniform(0.05, 20.0, 50),
                               rng.integers(1, 8, 50)):
        product = entropic_bounds.gaussian_power_product(float(alpha), float(sigma), int(d))
        worst = max(worst, _relative(product, entropic_bounds.bound_B(float(alpha))))
    return worst <= 1e-12, worst, ''


def check_Z_structure(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    """
    Z never exceeds B(1) = 1/4, equals B on the conjugation curve, and
    equals B(alpha*) for every admissible beta once alpha >= 1
    """
    worst = 0.0
    problems = 0
    for alpha in np.linspace(0.05, 4.0, 40):
        alpha = float(alpha)
        star = entropic_bounds.conjugate(alpha).value if alpha > 0.5 else math.inf
        for beta in np.linspace(0.05, 4.0, 40):
            beta = float(beta)
            if beta > star or (beta > 0.5 and alpha > entropic_bounds.conjugate(beta).value):
                continue
            z = entropic_bounds.bound_Z(alpha, beta)
            if z > 0.25 * (1.0 + 1e-15):
                problems += 1
            if alpha >= 1.0:
                err = _relative(z, entropic_bounds.bound_B(star))
                worst = max(worst, err)
                if err > 1e-13:
                    problems += 1
        if alpha > 0.5:
            err = _relative(entropic_bounds.bound_Z(alpha, star), entropic_bounds.bound_B(alpha))
            worst = max(worst, err)
            if err > 1e-13:
                problems += 1
    return problems == 0, worst, f"{problems} violations"


# ---------------------------------------------------------------- moment bounds

def check_M_monotone(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    violations = 0
    for l in (0.5, 1.0, 2.0, 4.0):
        for d in cfg.dimensions:
            ctx = DimensionContext(d)
            lo = moment_bounds.moment_threshold(l, ctx) + 1e-6
            values = [moment_bounds.bound_M(l, float(x), ctx)
                      for x in np.linspace(lo, 5.0, cfg.monotone_points)]
            violations += sum(1 for i in range(len(values) - 1) if not values[i + 1] > values[i])
    return violations == 0, float(violations), f"{violations} non-increasing steps"


def check_dlogM(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    rng = np.random.default_rng(cfg.seed + 5)
    h = 1e-6
    worst = 0.0
    for _ in range(60):
        l = float(rng.uniform(0.3, 6.0))
        d = int(rng.choice(cfg.dimensions))
        ctx = DimensionContext(d)
        lo = moment_bounds.moment_threshold(l, ctx)
        lam = float(rng.uniform(lo + 0.02, 4.0))
        if abs(lam - 1.0) < 1e-3:
            continue
        fd = (moment_bounds.log_bound_M(l, lam + h, ctx) - moment_bounds.log_bound_M(l, lam - h, ctx)) / (2.0 * h)
        worst = max(worst, abs(moment_bounds.dlogM_dlambda(l, lam, ctx) - fd))
    return worst <= 1e-5, worst, ''


MAXENT_CASES = [
    # (l, lambda, d, <r^l>)
    (2.0, 1.0, 3, 3.0), (1.0, 1.0, 2, 0.5), (4.0, 1.0, 5, 2.0), (3.0, 1.0, 1, 1.0),
    (2.0, 1.5, 3, 1.0), (1.0, 2.0, 3, 2.0), (3.0, 1.25, 5, 0.7), (2.0, 2.5, 1, 1.5),
    (1.0, 0.9, 2, 1.0), (2.0, 0.8, 3, 3.0), (4.0, 0.7, 5, 1.2), (2.0, 0.9, 1, 0.4),
]


def check_maxent_saturation(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    cases = MAXENT_CASES[::3] if cfg.quick else MAXENT_CASES
    worst = 0.0
    ok = True
    for l, lam, d, moment in cases:
        report = moment_bounds.maxent_verify(l, lam, DimensionContext(d), moment)
        worst = max(worst, report.residual, report.residual_closed_form)
        if max(report.residual, report.residual_closed_form) > 1e-8:
            ok = False
        if report.normalization_error > 1e-10 or report.moment_error > 1e-10:
            ok = False
    return ok, worst, ''


def check_heisenberg_reduction(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    worst = 0.0
    ok = True
    for d in (1, 2, 3, 5, 10):
        result = cache.get(2.0, 2.0, d)
        worst = max(worst, _relative(result.value, d * d / 4.0))
        ok = ok and abs(result.alpha_opt.value - 1.0) <= 10 * cfg.tol
    return ok and worst <= 1e-10, worst, ''


def check_C_dominates_D(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    worst = 0.0
    for a, b in itertools.product(cfg.order_grid, repeat=2):
        for d in cfg.dimensions:
            c = cache.get(a, b, d).value
            dd = moment_bounds.classical_bound_D(MomentOrders(a, b, DimensionContext(d)))
            worst = max(worst, dd - c)
    return worst <= 1e-12, max(worst, 0.0), 'max(D - C)'


def check_diagonal_equality(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    worst = 0.0
    ok = True
    for a in cfg.order_grid:
        for d in cfg.dimensions:
            result = cache.get(a, a, d)
            dd = moment_bounds.classical_bound_D(MomentOrders(a, a, DimensionContext(d)))
            worst = max(worst, _relative(result.value, dd))
            ok = ok and abs(result.alpha_opt.value - 1.0) <= 10 * cfg.tol
    return ok and worst <= 1e-8, worst, ''


def check_symmetry(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    rng = np.random.default_rng(cfg.seed + 6)
    worst = 0.0
    ok = True
    for _ in range(cfg.random_pairs):
        a, b = (float(x) for x in rng.uniform(0.1, 8.0, 2))
        d = int(rng.choice(cfg.dimensions))
        ab = cache.get(a, b, d)
        ba = cache.get(b, a, d)
        worst = max(worst, _relative(ab.value, ba.value))
        star = entropic_bounds.conjugate(ab.alpha_opt).value
        ok = ok and abs(ba.alpha_opt.value - star) <= 10 * cfg.tol
    return ok and worst <= 1e-10, worst, ''


def curve_argmax(a: float, b: float, d: int, points: int, upper: float = 6.0) -> Tuple[float, float, float, float]:
    """
    Grid argmax of Z(alpha, beta) M(a, alpha) M(b, beta)

    Returns (alpha, beta, d_alpha, d_beta) with the grid spacings.
    """
    ctx = DimensionContext(d)
    alphas = np.linspace(moment_bounds.moment_threshold(a, ctx), upper, points + 1)[1:]
    betas = np.linspace(moment_bounds.moment_threshold(b, ctx), upper, points + 1)[1:]
    best = (-math.inf, 0.0, 0.0)
    for x in alphas:
        x = float(x)
        for y in betas:
            y = float(y)
            try:
                value = math.log(moment_bounds.bound_product_2d(a, b, x, y, ctx))
            except DomainError:
                continue
            if value > best[0]:
                best = (value, x, y)
    return best[1], best[2], float(alphas[1] - alphas[0]), float(betas[1] - betas[0])


def check_curve_maximality(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    worst = 0.0
    for a, b, d in ((1.0, 2.0, 3), (2.0, 1.0, 3), (0.5, 4.0, 5)):
        alpha, beta, da, db = curve_argmax(a, b, d, cfg.curve_grid)
        cells = math.inf
        if alpha > 0.5:
            cells = min(cells, abs(beta - entropic_bounds.conjugate(alpha).value) / db)
        if beta > 0.5:
            cells = min(cells, abs(alpha - entropic_bounds.conjugate(beta).value) / da)
        worst = max(worst, cells)
    return worst <= 1.0, worst, 'distance to beta = alpha* in grid cells'


def check_off_optimum_decrease(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    violations = 0
    for a, b in itertools.product(cfg.order_grid, repeat=2):
        if a < b:
            continue
        for d in cfg.dimensions:
            ctx = DimensionContext(d)
            top = 3.0
            thr_b = moment_bounds.moment_threshold(b, ctx)
            if thr_b > 0.5:
                top = min(top, entropic_bounds.conjugate(thr_b).value)
            grid = np.linspace(1.0, top, 61)[1:-1]
            values = [moment_bounds.objective(a, b, float(x), ctx) for x in grid]
            violations += sum(1 for i in range(len(values) - 1)
                              if values[i + 1] > values[i] * (1.0 + 1e-12))
    return violations == 0, float(violations), f"{violations} increasing steps for alpha > 1"


# ---------------------------------------------------------------- quantum systems

def _hydrogen_states(cfg: SuiteConfig, d: int) -> List[HydrogenState]:
    return enumerate_states('hydrogen', d, cfg.n_max)


def _oscillator_states(cfg: SuiteConfig, d: int) -> List[OscillatorState]:
    return enumerate_states('oscillator', d, cfg.n_max)


def check_closed_vs_quadrature(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    worst = 0.0
    norm_worst = 0.0
    for d in cfg.state_dimensions:
        for s in _hydrogen_states(cfg, d):
            position = hydrogen_radial_position(s)
            momentum = hydrogen_radial_momentum(s)
            norm_worst = max(norm_worst, abs(position.normalization - 1.0), abs(momentum.normalization - 1.0))
            for order in cfg.moment_orders:
                q = quadrature_moment(position, position.ctx, order).value
                worst = max(worst, _relative(q, hydrogen_moment_r(s, order)))
                if order < s.momentum_frontier:
                    q = quadrature_moment(momentum, momentum.ctx, order).value
                    worst = max(worst, _relative(q, hydrogen_moment_p(s, order)))
        for s in _oscillator_states(cfg, d):
            radial = oscillator_radial(s)
            norm_worst = max(norm_worst, abs(radial.normalization - 1.0))
            for order in cfg.moment_orders:
                q = quadrature_moment(radial, radial.ctx, order).value
                worst = max(worst, _relative(q, oscillator_moment(s, order)))
    ok = worst <= 1e-8 and norm_worst <= 1e-10
    return ok, max(worst, norm_worst), f"moments {worst:.2e}, normalization {norm_worst:.2e}"


def check_virial(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    worst = 0.0
    for d in cfg.state_dimensions:
        for s in _hydrogen_states(cfg, d):
            worst = max(worst, _relative(hydrogen_moment_p(s, 2.0), 1.0 / s.eta ** 2))
        for s in _oscillator_states(cfg, d):
            worst = max(worst, _relative(oscillator_moment(s, 2.0), s.energy))
    quad_worst = 0.0
    for s in (HydrogenState(3, 1, 0), HydrogenState(3, 2, 1), HydrogenState(5, 2, 0)):
        momentum = hydrogen_radial_momentum(s)
        q = quadrature_moment(momentum, momentum.ctx, 2.0).value
        quad_worst = max(quad_worst, _relative(q, 1.0 / s.eta ** 2))
    ok = worst <= 1e-10 and quad_worst <= 1e-8
    return ok, max(worst, quad_worst), f"closed form {worst:.2e}, quadrature <p^2> {quad_worst:.2e}"


def check_zeroth_moment(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    order = 1e-6
    worst = 0.0
    for d in cfg.state_dimensions:
        for s in _hydrogen_states(cfg, d):
            worst = max(worst, abs(hydrogen_moment_r(s, order) - 1.0), abs(hydrogen_moment_p(s, order) - 1.0))
        for s in _oscillator_states(cfg, d):
            worst = max(worst, abs(oscillator_moment(s, order) - 1.0))
    return worst <= 1e-4, worst, ''


def check_physical_inequality(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    worst = math.inf
    skipped = 0
    for d in cfg.state_dimensions:
        states = _hydrogen_states(cfg, d) + _oscillator_states(cfg, d)
        for s in states:
            for a, b in itertools.product(cfg.order_grid, repeat=2):
                try:
                    r_moment, p_moment = state_moments(s, a, b)
                except DomainError:
                    skipped += 1
                    continue
                product = uncertainty_product(r_moment, p_moment, a, b)
                worst = min(worst, product / cache.get(a, b, d).value)
    return worst >= 1.0 - 1e-10, worst, f"min ratio, {skipped} divergent combinations skipped"


def check_oscillator_saturation(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    worst = 0.0
    for d in sorted(set(cfg.dimensions) | set(cfg.state_dimensions)):
        s = OscillatorState(d, 0, 0)
        r2, p2 = state_moments(s, 2.0, 2.0)
        product = uncertainty_product(r2, p2, 2.0, 2.0)
        worst = max(worst, _relative(product, d * d / 4.0), _relative(cache.get(2.0, 2.0, d).value, product))
    return worst <= 1e-10, worst, ''


def check_hydrogen_trend(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    c = cache.get(1.0, 2.0, 3).value
    gaps = []
    for n in range(1, 6):
        r_moment, p_moment = state_moments(HydrogenState(3, n, 0), 1.0, 2.0)
        gaps.append(uncertainty_product(r_moment, p_moment, 1.0, 2.0) - c)
    ok = all(gaps[i + 1] > gaps[i] for i in range(len(gaps) - 1))
    return ok, gaps[0], 'gap product - C for n = 1..5: ' + ', '.join(f"{g:.4g}" for g in gaps)


def check_oscillator_levels(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    """Products group by energy level 2n + l at (a, b) = (1, 2), d = 3"""
    levels: Dict[int, List[float]] = {}
    for s in enumerate_states('oscillator', 3, 3, 3):
        if s.level > 3:
            continue
        r_moment, p_moment = state_moments(s, 1.0, 2.0)
        levels.setdefault(s.level, []).append(uncertainty_product(r_moment, p_moment, 1.0, 2.0))
    spread = max(max(v) / min(v) - 1.0 for v in levels.values())
    ordered = [levels[k] for k in sorted(levels)]
    separated = all(max(ordered[i]) < min(ordered[i + 1]) for i in range(len(ordered) - 1))
    return spread <= 0.15 and separated, spread, 'largest within-level relative spread'


# ---------------------------------------------------------------- sweeps

def check_sweep_bounds(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    a_values = [0.5, 2.0] if cfg.quick else [0.1, 0.5, 1.0, 2.0, 4.0]
    b_range = OrderRange(0.1, 8.0, 10 if cfg.quick else 50)
    table = sweep_bounds(a_values, b_range, DimensionContext(5), threads=cfg.threads,
                         grid_points=cfg.grid_points, tol=cfg.tol, include_diagonal=True)
    problems = table.validate()
    worst = 0.0
    for row in table.rows:
        if row.a == row.b:
            worst = max(worst, _relative(row.bound_C, row.bound_D))
            if abs(row.alpha_opt - 1.0) > 10 * cfg.tol:
                problems.append(f"alpha_opt({row.a:g}, {row.b:g}) = {row.alpha_opt!r}")
    if worst > 1e-8:
        problems.append(f"C != D on the diagonal ({worst:.2e})")
    return not problems, worst, '; '.join(problems[:3])


def check_strict_improvement(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    worst = math.inf
    for a in cfg.order_grid:
        c = cache.get(a, 4.0 * a, 5).value
        dd = moment_bounds.classical_bound_D(MomentOrders(a, 4.0 * a, DimensionContext(5)))
        worst = min(worst, c / dd - 1.0)
    gap = []
    for b in (0.55, 2.0):
        orders = MomentOrders(0.5, b, DimensionContext(5))
        gap.append(cache.get(0.5, b, 5).value - moment_bounds.classical_bound_D(orders))
    ok = worst >= 0.01 and gap[1] > gap[0]
    detail = f"min relative improvement at b = 4a is {worst:.3e}; gap C - D at a=0.5: b=0.55 {gap[0]:.3e}, b=2 {gap[1]:.3e}"
    return ok, worst, detail


def check_determinism(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    ctx = DimensionContext(3)
    serial = sweep_bounds([0.5, 2.0], OrderRange(0.2, 3.0, 6), ctx, threads=1,
                          grid_points=cfg.grid_points, tol=cfg.tol)
    parallel = sweep_bounds([0.5, 2.0], OrderRange(0.2, 3.0, 6), ctx, threads=4,
                            grid_points=cfg.grid_points, tol=cfg.tol)
    same = serial.to_csv() == parallel.to_csv()
    return same, 0.0 if same else 1.0, 'serial and threaded CSV must be byte-identical'


def check_ground_state_proximity(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    s = HydrogenState(3, 1, 0)
    ratios = []
    for a, b in ((1.0, 2.0), (1.0, 4.0)):
        r_moment, p_moment = state_moments(s, a, b)
        ratios.append(uncertainty_product(r_moment, p_moment, a, b) / cache.get(a, b, 3).value)
    return ratios[0] < ratios[1], ratios[0], f"ratio(1,2)={ratios[0]:.6f}, ratio(1,4)={ratios[1]:.6f}"


def check_presets(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    names = ['fig3'] if cfg.quick else ['fig3', 'fig4', 'fig5', 'fig6', 'fig7', 'fig8']
    problems = []
    worst = math.inf
    for name in names:
        table = run_preset(name, threads=cfg.threads, grid_points=cfg.grid_points, tol=cfg.tol)
        problems.extend(f"{name}: {p}" for p in table.validate())
        worst = min([worst] + [r.ratio for r in table.rows if r.ratio is not None])
    return not problems, worst, '; '.join(problems[:3])


def _second_differences(values: List[float]) -> List[float]:
    return [values[i + 1] - 2.0 * values[i] + values[i - 1] for i in range(1, len(values) - 1)]


CURVATURE_PRESETS = {
    # preset: product convex in b
    'fig5': True,
    # oscillator ground-state product is nearly linear and slightly concave in b
    'fig8': False,
}


def check_ground_state_curvature(cfg: SuiteConfig, cache: _BoundCache) -> CheckOutcome:
    """Bound concave in b on both ground-state figures, hydrogen product convex in b"""
    names = ['fig8'] if cfg.quick else ['fig5', 'fig8']
    violations = 0
    for name in names:
        table = run_preset(name, threads=cfg.threads, grid_points=cfg.grid_points, tol=cfg.tol)
        by_a: Dict[float, List] = {}
        for row in table.rows:
            by_a.setdefault(row.a, []).append(row)
        for rows in by_a.values():
            rows.sort(key=lambda r: r.b)
            violations += sum(1 for x in _second_differences([r.bound_C for r in rows]) if x > 1e-12)
            if CURVATURE_PRESETS[name]:
                violations += sum(1 for x in _second_differences([r.product for r in rows]) if x < -1e-12)
    return violations == 0, float(violations), f"{violations} curvature sign violations"


CHECKS: List[Tuple[str, Callable[[SuiteConfig, _BoundCache], CheckOutcome], bool]] = [
    ('specfun: gamma recurrence', check_gamma_recurrence, False),
    ('specfun: digamma vs finite difference', check_digamma_consistency, False),
    ('specfun: pFq permutation symmetry', check_pfq_permutation, False),
    ('specfun: pFq brute force', check_pfq_bruteforce, False),
    ('entropic: B rise and fall', check_B_shape, False),
    ('entropic: B conjugation symmetry', check_B_conjugation, False),
    ('entropic: Gaussian sharpness', check_gaussian_sharpness, False),
    ('entropic: Z structure', check_Z_structure, False),
    ('moments: M increasing in lambda', check_M_monotone, False),
    ('moments: dlogM vs finite difference', check_dlogM, False),
    ('moments: maximizer saturation', check_maxent_saturation, False),
    ('moments: Heisenberg reduction', check_heisenberg_reduction, False),
    ('moments: C >= D', check_C_dominates_D, False),
    ('moments: C = D on the diagonal', check_diagonal_equality, False),
    ('moments: C symmetry', check_symmetry, False),
    ('moments: conjugation-curve maximality', check_curve_maximality, False),
    ('moments: decrease for alpha > 1', check_off_optimum_decrease, False),
    ('systems: closed form vs quadrature', check_closed_vs_quadrature, False),
    ('systems: virial identities', check_virial, False),
    ('systems: zeroth moment limit', check_zeroth_moment, False),
    ('systems: product >= C', check_physical_inequality, False),
    ('systems: oscillator saturation', check_oscillator_saturation, False),
    ('systems: hydrogen gap grows with n', check_hydrogen_trend, False),
    ('systems: oscillator energy levels', check_oscillator_levels, False),
    ('sweeps: bound sweep invariants', check_sweep_bounds, False),
    ('sweeps: determinism', check_determinism, False),
    ('sweeps: ground-state proximity', check_ground_state_proximity, False),
    ('sweeps: preset tables', check_presets, False),
    ('sweeps: 1% improvement at b = 4a', check_strict_improvement, True),
    ('sweeps: ground-state curvature', check_ground_state_curvature, True),
]


def run_invariant_suite(config: Optional[SuiteConfig] = None) -> SuiteReport:
    """
    Run every check and collect a report

    A check that raises is recorded as failed with the exception text.
    Advisory checks are reported but never fail the suite.
    """
    cfg = config or SuiteConfig.full()
    cache = _BoundCache(cfg)
    report = SuiteReport()
    start = time.perf_counter()
    for name, fn, advisory in CHECKS:
        t0 = time.perf_counter()
        try:
            passed, worst, detail = fn(cfg, cache)
        except (UncertaintyError, ArithmeticError, ValueError) as e:
            passed, worst, detail = False, math.nan, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - t0
        result = CheckResult(name, bool(passed), float(worst), elapsed, detail, advisory)
        report.checks.append(result)
        if passed:
            logger.info("✓ %s (%.3fs)", name, elapsed)
        elif advisory:
            logger.warning("⚠️  %s (advisory): %s", name, detail)
        else:
            logger.warning("✗ %s: %s", name, detail)
    report.runtime = time.perf_counter() - start
    return report
