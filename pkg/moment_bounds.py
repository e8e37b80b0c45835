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
Moment uncertainty bounds
M(l, lambda), the classical bound D(a, b), the optimized bound C(a, b)
and the maximum-entropy density that saturates M
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from config import NUMERIC_CONFIG, OPTIMIZER_CONFIG, QUADRATURE_CONFIG
from exceptions import DomainError, DivergentMomentError, OptimizerError
from entropic_bounds import (
    IndexLike, RenyiIndex, as_index, bound_Z, conjugate, log_bound_B,
)
from specfun import digamma_minus_log, log_beta, log_gamma
from quadrature import integrate_radial

logger = logging.getLogger(__name__)

LOG_TWO_PI_E = math.log(2.0 * math.pi * math.e)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


@dataclass(frozen=True)
class DimensionContext:
    """
    Spatial dimension d with the unit-sphere surface
    Omega = 2 pi^{d/2} / Gamma(d/2), evaluated in log space
    """
    d: int
    log_omega: float = field(init=False)
    omega: float = field(init=False)

    def __post_init__(self):
        if isinstance(self.d, bool) or int(self.d) != self.d or self.d < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.d!r}")
        object.__setattr__(self, 'd', int(self.d))
        log_omega = math.log(2.0) + 0.5 * self.d * math.log(math.pi) - log_gamma(0.5 * self.d)
        object.__setattr__(self, 'log_omega', log_omega)
        object.__setattr__(self, 'omega', math.exp(log_omega))


@dataclass(frozen=True)
class MomentOrders:
    """Position order a, momentum order b, both positive"""
    a: float
    b: float
    ctx: DimensionContext

    def __post_init__(self):
        for name in ('a', 'b'):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise DomainError(f"moment order {name} must be positive, got {value!r}")
            object.__setattr__(self, name, value)

    def swapped(self) -> 'MomentOrders':
        return MomentOrders(self.b, self.a, self.ctx)


@dataclass(frozen=True)
class BoundResult:
    """
    Optimized bound C(a, b)

    search_interval is the canonical domain (max(1/2, d/(d+a')), 1] with
    a' = max(a, b). When b > a the search ran on the swapped pair and
    alpha_opt is the conjugate of the maximizer found there.
    """
    value: float
    alpha_opt: RenyiIndex
    search_interval: Tuple[float, float]
    evaluations: int
    swapped: bool = False

    @property
    def canonical_alpha(self) -> float:
        """The maximizer inside search_interval"""
        return conjugate(self.alpha_opt).value if self.swapped else self.alpha_opt.value

    def to_dict(self) -> Dict:
        return {
            'C': self.value,
            'alpha_opt': self.alpha_opt.value,
            'search_interval': list(self.search_interval),
            'evaluations': self.evaluations,
            'swapped': self.swapped,
        }


def _context(ctx) -> DimensionContext:
    if isinstance(ctx, DimensionContext):
        return ctx
    return DimensionContext(int(ctx))


def _require_order(name: str, l: float) -> float:
    l = float(l)
    if not math.isfinite(l) or l <= 0.0:
        raise DomainError(f"{name} must be positive, got {l!r}")
    return l


def moment_threshold(l: float, ctx: DimensionContext) -> float:
    """Smallest admissible Renyi order d/(d+l) for a constraint of order l"""
    return ctx.d / (ctx.d + l)


def _check_admissible(l: float, lam: float, ctx: DimensionContext):
    threshold = moment_threshold(l, ctx)
    if lam <= threshold:
        raise DivergentMomentError(
            f"M(l={l!r}, lambda={lam!r}) needs lambda > d/(d+l) = {threshold!r} for d={ctx.d}"
        )


def _log_bound_M_unit(l: float, ctx: DimensionContext) -> float:
    d = ctx.d
    c = d / l
    return (LOG_TWO_PI_E
            + (2.0 / d) * (math.log(l) - ctx.log_omega - log_gamma(c))
            + (2.0 / l) * (math.log(c) - 1.0))


def log_bound_M(l: float, lam: IndexLike, ctx) -> float:
    """ln M(l, lambda), see bound_M"""
    ctx = _context(ctx)
    l = _require_order('l', l)
    v = as_index(lam).value
    _check_admissible(l, v, ctx)

    if abs(v - 1.0) <= NUMERIC_CONFIG['moment_unit_band']:
        # d ln M / d lambda = 1/l at lambda = 1
        return _log_bound_M_unit(l, ctx) + (v - 1.0) / l

    d = ctx.d
    c = d / l
    m = v / (v - 1.0)
    if v > 1.0:
        log_b1 = log_beta(c, m)
        middle = -math.log1p(l * m / d)
    else:
        log_b1 = log_beta(c, 1.0 - m - c)
        middle = math.log(-d / (d + l * m))
    return (LOG_TWO_PI_E
            + (2.0 / d) * (math.log(l) - ctx.log_omega - log_b1)
            + (2.0 / l) * middle
            - (2.0 * (m - 1.0) / d) * math.log1p(c / m))


def bound_M(l: float, lam: IndexLike, ctx) -> float:
    """
    Maximal factor M(l, lambda) with <r^l>^{2/l} >= M(l, lambda) N_lambda

    Three branches: heavy-tailed maximizer for d/(d+l) < lambda < 1,
    stretched Gaussian at lambda = 1, compact support for lambda > 1.

    Raises:
        DivergentMomentError: lambda <= d/(d+l)
    """
    return math.exp(log_bound_M(l, lam, ctx))


def dlogM_dlambda(l: float, lam: IndexLike, ctx) -> float:
    """
    d ln M(l, lambda) / d lambda from the digamma closed forms

    Returns 1/l within the lambda = 1 band.
    """
    ctx = _context(ctx)
    l = _require_order('l', l)
    v = as_index(lam).value
    _check_admissible(l, v, ctx)
    if abs(v - 1.0) <= NUMERIC_CONFIG['moment_derivative_band']:
        return 1.0 / l

    d = ctx.d
    c = d / l
    m = v / (v - 1.0)
    scale = 2.0 / (d * (v - 1.0) ** 2)
    if v > 1.0:
        g_m = digamma_minus_log(m) + 1.0 / m
        g_mc = digamma_minus_log(m + c) + 1.0 / (m + c)
        return scale * (g_m - g_mc)
    x = -m
    return scale * (digamma_minus_log(x) - digamma_minus_log(x - c))


def _log_D_factor(order: float, d: int) -> float:
    return (1.0
            + (2.0 / order) * (math.log(d) - math.log(order) - 1.0)
            + (2.0 / d) * (log_gamma(1.0 + 0.5 * d) - log_gamma(1.0 + d / order)))


def classical_bound_D(m: MomentOrders) -> float:
    """
    Shannon-based moment bound D(a, b), valid for all a, b > 0

    Product of one factor per order; each factor is d/2 at order 2.
    """
    d = m.ctx.d
    return math.exp(_log_D_factor(m.a, d) + _log_D_factor(m.b, d))


def search_domain(a: float, ctx) -> Tuple[float, float]:
    """(max(1/2, d/(d+a)), 1], open below"""
    ctx = _context(ctx)
    a = _require_order('a', a)
    return max(0.5, moment_threshold(a, ctx)), 1.0


def log_objective(a: float, b: float, alpha: IndexLike, ctx) -> float:
    ctx = _context(ctx)
    lam = as_index(alpha)
    star = conjugate(lam)
    return log_bound_B(lam) + log_bound_M(a, lam, ctx) + log_bound_M(b, star, ctx)


def objective(a: float, b: float, alpha: IndexLike, ctx) -> float:
    """B(alpha) M(a, alpha) M(b, alpha*)"""
    return math.exp(log_objective(a, b, alpha, ctx))


def _golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                        tol: float, max_iterations: int) -> Tuple[float, float, int]:
    """
    Golden-section search for the maximum of f on [lo, hi]

    Returns (x, f(x), evaluations); ties move the bracket right.
    """
    h = hi - lo
    if h <= tol:
        x = lo
        return x, f(x), 1

    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    n = min(n, max_iterations)

    c = lo + INV_PHI_SQUARE * h
    e = lo + INV_PHI * h
    yc = f(c)
    ye = f(e)
    evaluations = 2

    for _ in range(n - 1):
        if yc > ye:
            hi = e
            e = c
            ye = yc
            h = INV_PHI * h
            c = lo + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            lo = c
            c = e
            yc = ye
            h = INV_PHI * h
            e = lo + INV_PHI * h
            ye = f(e)
        evaluations += 1

    if yc > ye:
        return c, yc, evaluations
    return e, ye, evaluations


def _maximize_canonical(a: float, b: float, ctx: DimensionContext,
                        grid_points: int, tol: float) -> Tuple[float, float, Tuple[float, float], int]:
    lo, hi = search_domain(a, ctx)
    width = hi - lo
    start = lo + OPTIMIZER_CONFIG['edge_shrink'] * width
    grid = np.linspace(start, hi, grid_points)
    grid[-1] = hi

    values = np.empty(grid_points)
    for i, x in enumerate(grid):
        values[i] = log_objective(a, b, float(x), ctx)
    evaluations = grid_points

    if not np.all(np.isfinite(values)):
        raise OptimizerError(f"non-finite objective on the grid for a={a!r}, b={b!r}", evaluations)

    # np.argmax returns the first maximum, i.e. the smallest alpha on ties
    best = int(np.argmax(values))
    best_x, best_y = float(grid[best]), float(values[best])

    left = float(grid[max(best - 1, 0)])
    right = float(grid[min(best + 1, grid_points - 1)])
    x, y, used = _golden_section_max(
        lambda t: log_objective(a, b, t, ctx), left, right, tol,
        OPTIMIZER_CONFIG['max_iterations'],
    )
    evaluations += used
    logger.debug("C(%g, %g): grid argmax %.12g, bracket [%.12g, %.12g], golden %.12g",
                 a, b, best_x, left, right, x)

    if y > best_y + OPTIMIZER_CONFIG['improvement_margin']:
        best_x, best_y = x, y
    return best_x, best_y, (lo, hi), evaluations


def bound_C(m: MomentOrders, grid_points: Optional[int] = None,
            tol: Optional[float] = None) -> BoundResult:
    """
    Optimized moment bound C(a, b) = max over the search domain of
    B(alpha) M(a, alpha) M(b, alpha*)

    For b > a the pair is swapped: C(b, a) = C(a, b) and the maximizer
    is conjugated.

    Args:
        m: moment orders with dimension context
        grid_points: coarse grid size (default OPTIMIZER_CONFIG['grid_points'])
        tol: final golden-section bracket width

    Returns:
        BoundResult
    """
    grid_points = OPTIMIZER_CONFIG['grid_points'] if grid_points is None else int(grid_points)
    tol = OPTIMIZER_CONFIG['tolerance'] if tol is None else float(tol)
    if grid_points < OPTIMIZER_CONFIG['min_grid_points']:
        raise DomainError(f"grid needs at least {OPTIMIZER_CONFIG['min_grid_points']} points")
    if not tol > 0.0:
        raise DomainError(f"optimizer tolerance must be positive, got {tol!r}")

    swapped = m.b > m.a
    big, small = (m.b, m.a) if swapped else (m.a, m.b)
    alpha, log_value, interval, evaluations = _maximize_canonical(
        big, small, m.ctx, grid_points, tol,
    )
    alpha_opt = conjugate(alpha) if swapped else RenyiIndex(alpha)
    return BoundResult(
        value=math.exp(log_value),
        alpha_opt=alpha_opt,
        search_interval=interval,
        evaluations=evaluations,
        swapped=swapped,
    )


def bound_product_2d(a: float, b: float, alpha: IndexLike, beta: IndexLike, ctx) -> float:
    """Unoptimized two-index bound Z(alpha, beta) M(a, alpha) M(b, beta)"""
    ctx = _context(ctx)
    z = bound_Z(alpha, beta)
    return z * bound_M(a, alpha, ctx) * bound_M(b, beta, ctx)


def beta_constraints(l: float, lam: IndexLike, ctx) -> Tuple[float, float, float]:
    """
    ln B_1, ln B_m, ln B_h of the maximizer: normalization, moment and
    entropy integrals

    lambda > 1:  B(c, mu), B(c+1, mu), B(c, mu+1)
    lambda < 1:  B(c, 1-mu-c), B(c+1, -mu-c), B(c, -mu-c)
    with c = d/l and mu = lambda/(lambda-1).
    """
    ctx = _context(ctx)
    l = _require_order('l', l)
    v = as_index(lam).value
    _check_admissible(l, v, ctx)
    if v == 1.0:
        raise DomainError("beta constraints are undefined at lambda = 1")
    c = ctx.d / l
    m = v / (v - 1.0)
    if v > 1.0:
        return log_beta(c, m), log_beta(c + 1.0, m), log_beta(c, m + 1.0)
    return log_beta(c, 1.0 - m - c), log_beta(c + 1.0, -m - c), log_beta(c, -m - c)


@dataclass(frozen=True)
class MaxEntDensity:
    """
    Stretched q-Gaussian f(r) = C (1 - (lambda-1)(r/delta)^l)_+^{1/(lambda-1)}

    Maximizes the Renyi entropy power under a fixed <r^l>; reduces to
    C exp(-(r/delta)^l) at lambda = 1.
    """
    l: float
    lam: RenyiIndex
    ctx: DimensionContext
    scale_delta: float
    norm_C: float

    @classmethod
    def solve(cls, l: float, lam: IndexLike, ctx, moment_value: float) -> 'MaxEntDensity':
        """Fix C and delta from the normalization and moment constraints"""
        ctx = _context(ctx)
        l = _require_order('l', l)
        lam = as_index(lam)
        v = lam.value
        _check_admissible(l, v, ctx)
        moment_value = _require_order('moment_value', moment_value)
        d = ctx.d
        c = d / l

        if v == 1.0:
            log_delta = (math.log(moment_value) + math.log(l) - math.log(d)) / l
            log_C = math.log(l) - ctx.log_omega - d * log_delta - log_gamma(c)
        else:
            log_b1, log_bm, _ = beta_constraints(l, lam, ctx)
            log_gap = math.log(abs(v - 1.0))
            log_delta = (math.log(moment_value) + log_gap + log_b1 - log_bm) / l
            log_C = math.log(l) + c * log_gap - ctx.log_omega - d * log_delta - log_b1
        return cls(l=l, lam=lam, ctx=ctx, scale_delta=math.exp(log_delta), norm_C=math.exp(log_C))

    @property
    def support_radius(self) -> float:
        v = self.lam.value
        if v > 1.0:
            return self.scale_delta / (v - 1.0) ** (1.0 / self.l)
        return math.inf

    def log_pdf(self, r: float) -> float:
        v = self.lam.value
        x = (r / self.scale_delta) ** self.l
        log_C = math.log(self.norm_C)
        if v == 1.0:
            return log_C - x
        if v > 1.0:
            base = 1.0 - (v - 1.0) * x
            if base <= 0.0:
                return -math.inf
            return log_C + math.log(base) / (v - 1.0)
        return log_C - math.log1p((1.0 - v) * x) / (1.0 - v)

    def pdf(self, r: float) -> float:
        return math.exp(self.log_pdf(r))

    def entropy_power_closed_form(self) -> float:
        """N_lambda(f) from B_h (Shannon form at lambda = 1)"""
        d = self.ctx.d
        v = self.lam.value
        log_C = math.log(self.norm_C)
        if v == 1.0:
            entropy = -log_C + d / self.l
            return math.exp(2.0 * entropy / d - LOG_TWO_PI_E)
        _, _, log_bh = beta_constraints(self.l, self.lam, self.ctx)
        log_norm = (v * log_C + self.ctx.log_omega + d * math.log(self.scale_delta)
                    + log_bh - math.log(self.l) - (d / self.l) * math.log(abs(v - 1.0)))
        return math.exp(2.0 * log_norm / (d * (1.0 - v)) - LOG_TWO_PI_E)


@dataclass(frozen=True)
class MaxEntReport:
    """Saturation check of M(l, lambda) by its maximizer"""
    l: float
    lam: float
    d: int
    moment_value: float
    scale_delta: float
    norm_C: float
    support_radius: float
    normalization: float
    moment: float
    entropy_power: float
    entropy_power_closed_form: float
    bound_M: float
    residual: float
    residual_closed_form: float

    @property
    def normalization_error(self) -> float:
        return abs(self.normalization - 1.0)

    @property
    def moment_error(self) -> float:
        return abs(self.moment - self.moment_value) / self.moment_value

    @property
    def worst(self) -> float:
        return max(self.residual, self.residual_closed_form,
                   self.normalization_error, self.moment_error)


def maxent_verify(l: float, lam: IndexLike, ctx, moment_value: float) -> MaxEntReport:
    """
    Build the maximizer for (l, lambda, d, <r^l>) and compare
    <r^l>^{2/l} against N_lambda(f) M(l, lambda)

    The entropy power is integrated numerically on the radial axis and
    also evaluated from B_h; both residuals are reported.

    Raises:
        DivergentMomentError: lambda <= d/(d+l)
        OracleError: quadrature did not converge
    """
    ctx = _context(ctx)
    density = MaxEntDensity.solve(l, lam, ctx, moment_value)
    v = density.lam.value
    d = ctx.d
    upper = density.support_radius
    scale = density.scale_delta
    log_omega = ctx.log_omega

    def radial(log_weight: Callable[[float], float]) -> float:
        def integrand(r: float) -> float:
            if r <= 0.0:
                return 0.0
            lf = density.log_pdf(r)
            if lf == -math.inf:
                return 0.0
            return math.exp(log_omega + (d - 1) * math.log(r) + log_weight(r))
        value, _ = integrate_radial(integrand, scale=scale, upper=upper)
        return value

    normalization = radial(lambda r: density.log_pdf(r))
    moment = radial(lambda r: density.log_pdf(r) + density.l * math.log(r))

    if v == 1.0:
        def shannon(r: float) -> float:
            if r <= 0.0:
                return 0.0
            lf = density.log_pdf(r)
            if lf == -math.inf:
                return 0.0
            return -lf * math.exp(log_omega + (d - 1) * math.log(r) + lf)
        entropy, _ = integrate_radial(shannon, scale=scale, upper=upper)
        n_quad = math.exp(2.0 * entropy / d - LOG_TWO_PI_E)
    else:
        power = radial(lambda r: v * density.log_pdf(r))
        n_quad = math.exp(2.0 * math.log(power) / (d * (1.0 - v)) - LOG_TWO_PI_E)

    n_closed = density.entropy_power_closed_form()
    m_value = bound_M(l, density.lam, ctx)
    target = moment_value ** (2.0 / density.l)
    report = MaxEntReport(
        l=density.l, lam=v, d=d, moment_value=moment_value,
        scale_delta=density.scale_delta, norm_C=density.norm_C,
        support_radius=upper,
        normalization=normalization, moment=moment,
        entropy_power=n_quad, entropy_power_closed_form=n_closed,
        bound_M=m_value,
        residual=abs(target - n_quad * m_value) / target,
        residual_closed_form=abs(target - n_closed * m_value) / target,
    )
    logger.debug("maxent l=%g lambda=%g d=%d residual=%.3e", l, v, d, report.residual)
    return report
