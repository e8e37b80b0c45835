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
d-dimensional hydrogenic states
Closed-form radial moments in position and momentum space, plus the
radial wavefunctions used as their quadrature oracle
"""

import math
from dataclasses import dataclass

from exceptions import DomainError, DivergentMomentError
from moment_bounds import DimensionContext
from specfun import HypergeometricSpec, hyp_pfq_unit, log_gamma
from systems.radial import RadialFunction, gegenbauer, laguerre

LOG_TWO = math.log(2.0)


@dataclass(frozen=True)
class HydrogenState:
    """
    Hydrogenic eigenstate (d, n, l), atomic units

    eta = n + (d-3)/2 and L = l + (d-3)/2 are the grand principal and
    grand orbital quantum numbers; E = -1/(2 eta^2).
    """
    d: int
    n: int
    l: int

    system = 'hydrogen'

    def __post_init__(self):
        for name in ('d', 'n', 'l'):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise DomainError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.d < 2:
            raise DomainError(f"hydrogen needs d >= 2, got d={self.d}")
        if self.n < 1:
            raise DomainError(f"hydrogen needs n >= 1, got n={self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise DomainError(f"hydrogen needs 0 <= l <= n-1, got n={self.n}, l={self.l}")

    @property
    def eta(self) -> float:
        return self.n + 0.5 * (self.d - 3)

    @property
    def L(self) -> float:
        return self.l + 0.5 * (self.d - 3)

    @property
    def energy(self) -> float:
        return -0.5 / self.eta ** 2

    @property
    def momentum_frontier(self) -> float:
        """Momentum moments exist only for b < 2L + 5"""
        return 2.0 * self.L + 5.0

    @property
    def ctx(self) -> DimensionContext:
        return DimensionContext(self.d)


def hydrogen_radial_position(s: HydrogenState) -> RadialFunction:
    """R(r) with reduced radius 2r/eta and Laguerre L^{2L+1}_{n-l-1}"""
    eta, L, l, d = s.eta, s.L, s.l, s.d
    degree = s.n - s.l - 1
    log_norm = (0.5 * d * (LOG_TWO - math.log(eta))
                + 0.5 * (log_gamma(eta - L) - LOG_TWO - math.log(eta) - log_gamma(eta + L + 1.0)))

    def evaluator(r: float) -> float:
        x = 2.0 * r / eta
        poly = laguerre(degree, 2.0 * L + 1.0, x)
        if poly == 0.0 or x == 0.0 and l > 0:
            return 0.0
        log_abs = log_norm - 0.5 * x + math.log(abs(poly))
        if l > 0:
            log_abs += l * math.log(x)
        return math.copysign(math.exp(log_abs), poly)

    return RadialFunction(evaluator, s.ctx, scale=eta * eta,
                          label=f"hydrogen position d={d} n={s.n} l={l}")


def hydrogen_radial_momentum(s: HydrogenState) -> RadialFunction:
    """M(p) with reduced momentum eta p and Gegenbauer C^{L+1}_{n-l-1}"""
    eta, L, l, d = s.eta, s.L, s.l, s.d
    degree = s.n - s.l - 1
    log_norm = ((2.0 * L + 3.0) * LOG_TWO
                + 0.5 * (log_gamma(eta - L) - LOG_TWO - math.log(math.pi) - log_gamma(eta + L + 1.0))
                + log_gamma(L + 1.0)
                + 0.5 * (d + 1) * math.log(eta))

    def evaluator(p: float) -> float:
        x = eta * p
        x2 = x * x
        poly = gegenbauer(degree, L + 1.0, (1.0 - x2) / (1.0 + x2))
        if poly == 0.0 or x == 0.0 and l > 0:
            return 0.0
        log_abs = log_norm - (L + 2.0) * math.log1p(x2) + math.log(abs(poly))
        if l > 0:
            log_abs += l * math.log(x)
        return math.copysign(math.exp(log_abs), poly)

    return RadialFunction(evaluator, s.ctx, scale=1.0 / eta,
                          label=f"hydrogen momentum d={d} n={s.n} l={l}")


def hydrogen_moment_r(s: HydrogenState, a: float) -> float:
    """
    <r^a> from the terminating 3F2 closed form

    Raises:
        DomainError: a <= 0
    """
    a = float(a)
    if not math.isfinite(a) or a <= 0.0:
        raise DomainError(f"hydrogen position moments need a > 0, got {a!r}")
    eta, L = s.eta, s.L
    log_prefactor = ((a - 1.0) * math.log(eta)
                     + log_gamma(2.0 * L + a + 3.0)
                     - (a + 1.0) * LOG_TWO
                     - log_gamma(2.0 * L + 2.0))
    series = hyp_pfq_unit(HypergeometricSpec(
        upper=[-eta + L + 1.0, -a - 1.0, a + 2.0],
        lower=[2.0 * L + 2.0, 1.0],
    ))
    return math.exp(log_prefactor) * series


def hydrogen_moment_p(s: HydrogenState, b: float) -> float:
    """
    <p^b> from the terminating 5F4 closed form

    Raises:
        DomainError: b <= 0
        DivergentMomentError: b >= 2L + 5
    """
    b = float(b)
    if not math.isfinite(b) or b <= 0.0:
        raise DomainError(f"hydrogen momentum moments need b > 0, got {b!r}")
    if b >= s.momentum_frontier:
        raise DivergentMomentError(
            f"<p^{b:g}> diverges for hydrogen d={s.d} n={s.n} l={s.l}: needs b < 2L+5 = {s.momentum_frontier:g}"
        )
    eta, L = s.eta, s.L
    log_prefactor = (2.0 * LOG_TWO
                     + log_gamma(eta + L + 1.0)
                     + log_gamma(L + 0.5 * (b + 3.0))
                     + log_gamma(L + 0.5 * (5.0 - b))
                     - (b - 1.0) * math.log(eta)
                     - log_gamma(eta - L)
                     - 2.0 * log_gamma(L + 1.5)
                     - log_gamma(2.0 * L + 4.0))
    series = hyp_pfq_unit(HypergeometricSpec(
        upper=[L - eta + 1.0, L + eta + 1.0, L + 1.0, L + 0.5 * (b + 3.0), L + 0.5 * (5.0 - b)],
        lower=[2.0 * L + 2.0, L + 1.5, L + 2.0, L + 2.5],
    ))
    return math.exp(log_prefactor) * series
