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
d-dimensional isotropic harmonic oscillator (unit frequency)
The momentum radial function equals the position one, so a single
moment formula serves both spaces
"""

import math
from dataclasses import dataclass

from exceptions import DomainError
from moment_bounds import DimensionContext
from specfun import HypergeometricSpec, hyp_pfq_unit, log_gamma
from systems.radial import RadialFunction, laguerre


@dataclass(frozen=True)
class OscillatorState:
    """Oscillator eigenstate (d, n, l) with E = 2n + l + d/2"""
    d: int
    n: int
    l: int

    system = 'oscillator'

    def __post_init__(self):
        for name in ('d', 'n', 'l'):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise DomainError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.d < 1:
            raise DomainError(f"oscillator needs d >= 1, got d={self.d}")
        if self.n < 0 or self.l < 0:
            raise DomainError(f"oscillator needs n, l >= 0, got n={self.n}, l={self.l}")

    @property
    def energy(self) -> float:
        return 2.0 * self.n + self.l + 0.5 * self.d

    @property
    def level(self) -> int:
        """2n + l, the degeneracy label"""
        return 2 * self.n + self.l

    @property
    def ctx(self) -> DimensionContext:
        return DimensionContext(self.d)


def oscillator_radial(s: OscillatorState) -> RadialFunction:
    n, l, d = s.n, s.l, s.d
    q = l + 0.5 * d - 1.0
    log_norm = 0.5 * (math.log(2.0) + log_gamma(n + 1.0) - log_gamma(n + l + 0.5 * d))

    def evaluator(r: float) -> float:
        x = r * r
        poly = laguerre(n, q, x)
        if poly == 0.0 or r == 0.0 and l > 0:
            return 0.0
        log_abs = log_norm - 0.5 * x + math.log(abs(poly))
        if l > 0:
            log_abs += l * math.log(r)
        return math.copysign(math.exp(log_abs), poly)

    return RadialFunction(evaluator, s.ctx, scale=math.sqrt(s.energy),
                          label=f"oscillator d={d} n={n} l={l}")


def oscillator_moment(s: OscillatorState, order: float) -> float:
    """
    <r^k> = <p^k> = Gamma(l + (d+k)/2) / Gamma(l + d/2)
                    * 3F2(-n, -k/2, k/2 + 1; l + d/2, 1; 1)

    Raises:
        DomainError: order <= -d - 2l
    """
    k = float(order)
    n, l, d = s.n, s.l, s.d
    if not math.isfinite(k) or k <= -d - 2 * l:
        raise DomainError(
            f"oscillator moment of order {k!r} diverges for d={d}, l={l}: needs order > {-d - 2 * l}"
        )
    log_prefactor = log_gamma(l + 0.5 * (d + k)) - log_gamma(l + 0.5 * d)
    series = hyp_pfq_unit(HypergeometricSpec(
        upper=[-float(n), -0.5 * k, 0.5 * k + 1.0],
        lower=[l + 0.5 * d, 1.0],
    ))
    return math.exp(log_prefactor) * series
