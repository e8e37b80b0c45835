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
Radial wavefunctions, orthogonal polynomials and the quadrature oracle
for radial moments
"""

import math
import logging
from functools import cached_property
from typing import Callable, NamedTuple

import numpy as np
from scipy import special

from exceptions import DomainError
from moment_bounds import DimensionContext
from quadrature import integrate_radial

logger = logging.getLogger(__name__)


def _require_degree(p: int) -> int:
    if isinstance(p, bool) or int(p) != p or p < 0:
        raise DomainError(f"polynomial degree must be a non-negative integer, got {p!r}")
    return int(p)


def laguerre(p: int, q: float, x: float) -> float:
    """Generalized Laguerre polynomial L_p^q(x), q > -1"""
    p = _require_degree(p)
    if q <= -1.0:
        raise DomainError(f"Laguerre parameter must exceed -1, got {q!r}")
    return float(special.eval_genlaguerre(p, q, x))


def gegenbauer(p: int, q: float, x: float) -> float:
    """Gegenbauer polynomial C_p^q(x), q > -1/2"""
    p = _require_degree(p)
    if q <= -0.5:
        raise DomainError(f"Gegenbauer parameter must exceed -1/2, got {q!r}")
    if p == 0:
        return 1.0
    return float(special.eval_gegenbauer(p, q, x))


class QuadratureMoment(NamedTuple):
    value: float
    abserr: float


class RadialFunction:
    """
    Radial part R(r) of a d-dimensional wavefunction

    Args:
        evaluator: r -> R(r)
        ctx: dimension of the ambient space
        scale: characteristic width, used to map [0, inf) for quadrature
        label: short description for logs and reports
    """

    def __init__(self, evaluator: Callable[[float], float], ctx: DimensionContext,
                 scale: float = 1.0, label: str = ''):
        self.evaluator = evaluator
        self.ctx = ctx
        self.scale = scale
        self.label = label

    def __call__(self, r: float) -> float:
        return self.evaluator(r)

    def __repr__(self) -> str:
        return f"RadialFunction({self.label or 'unnamed'}, d={self.ctx.d})"

    @cached_property
    def normalization(self) -> float:
        """int_0^inf r^{d-1} |R(r)|^2 dr, expected to be 1"""
        return quadrature_moment(self, self.ctx, 0.0).value

    def count_nodes(self, r_max: float, points: int = 20001) -> int:
        """Sign changes of R on (0, r_max]"""
        grid = np.linspace(r_max / points, r_max, points)
        values = np.array([self.evaluator(float(r)) for r in grid])
        peak = np.max(np.abs(values))
        significant = values[np.abs(values) > 1e-10 * peak]
        return int(np.count_nonzero(np.diff(np.sign(significant))))


def quadrature_moment(f: RadialFunction, ctx: DimensionContext, order: float) -> QuadratureMoment:
    """
    int_0^inf r^{d+order-1} |f(r)|^2 dr by adaptive quadrature

    Convergence of the integral is the caller's responsibility.

    Raises:
        OracleError: quadrature error estimate above tolerance
    """
    power = ctx.d + order - 1.0

    def integrand(r: float) -> float:
        if r <= 0.0:
            return 0.0
        amplitude = f(r)
        if amplitude == 0.0:
            return 0.0
        return math.exp(power * math.log(r) + 2.0 * math.log(abs(amplitude)))

    value, abserr = integrate_radial(integrand, scale=f.scale)
    logger.debug("quadrature moment %s order=%g: %.15g +- %.2e", f.label, order, value, abserr)
    return QuadratureMoment(value, abserr)
