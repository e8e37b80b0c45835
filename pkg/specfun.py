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
Special-function kernel
Log-gamma, digamma, log-beta and terminating pFq sums at unit argument
"""

import math
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from scipy import special

from config import NUMERIC_CONFIG
from exceptions import DomainError, UnsupportedSeriesError, SeriesPoleError

logger = logging.getLogger(__name__)


def _require_positive(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} requires a positive finite argument, got {x!r}")
    return x


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0"""
    return float(special.gammaln(_require_positive('log_gamma', x)))


def digamma(x: float) -> float:
    """psi(x) = d/dx ln Gamma(x) for x > 0"""
    return float(special.psi(_require_positive('digamma', x)))


def _stirling_tail(z: float) -> float:
    inv = 1.0 / z
    inv2 = inv * inv
    return inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (
        1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 / 1188.0))))


def log_gamma_ratio(y: float, c: float) -> float:
    """
    ln Gamma(y + c) - ln Gamma(y) from the Stirling series

    Only valid for y >= NUMERIC_CONFIG['log_beta_asymptotic_min'].
    """
    y = _require_positive('log_gamma_ratio', y)
    c = _require_positive('log_gamma_ratio', c)
    return ((y - 0.5) * math.log1p(c / y) - c + c * math.log(y + c)
            + _stirling_tail(y + c) - _stirling_tail(y))


def log_beta(x: float, y: float) -> float:
    """
    ln B(x, y) = ln Gamma(x) + ln Gamma(y) - ln Gamma(x + y)

    betaln loses about 1e-10 once one argument reaches 1e5; above
    NUMERIC_CONFIG['log_beta_asymptotic_min'] the large-argument gamma
    ratio is taken from its asymptotic series instead.
    """
    x = _require_positive('log_beta', x)
    y = _require_positive('log_beta', y)
    small, large = min(x, y), max(x, y)
    if large < NUMERIC_CONFIG['log_beta_asymptotic_min']:
        return float(special.betaln(x, y))
    return float(special.gammaln(small)) - log_gamma_ratio(large, small)


def digamma_minus_log(x: float) -> float:
    """
    psi(x) - ln(x), accurate for large x

    The direct difference cancels badly once x grows, so above
    NUMERIC_CONFIG['digamma_asymptotic_min'] the asymptotic series is used.
    """
    x = _require_positive('digamma_minus_log', x)
    if x < NUMERIC_CONFIG['digamma_asymptotic_min']:
        return float(special.psi(x)) - math.log(x)

    inv = 1.0 / x
    inv2 = inv * inv
    series = inv2 * (-1.0 / 12.0 + inv2 * (1.0 / 120.0 + inv2 * (
        -1.0 / 252.0 + inv2 * (1.0 / 240.0 - inv2 / 132.0))))
    return -0.5 * inv + series


def pochhammer_log(x: float, k: int) -> Tuple[int, float]:
    """
    Rising factorial (x)_k as (sign, log|value|)

    Returns (0, -inf) when a factor is exactly zero.
    """
    sign = 1
    total = 0.0
    for i in range(int(k)):
        factor = x + i
        if factor == 0.0:
            return 0, -math.inf
        if factor < 0.0:
            sign = -sign
        total += math.log(abs(factor))
    return sign, total


def pochhammer(x: float, k: int) -> float:
    sign, log_abs = pochhammer_log(x, k)
    if sign == 0:
        return 0.0
    return sign * math.exp(log_abs)


def _nonpositive_integer(value: float, tol: float) -> Optional[int]:
    """Return m if value is within tol of -m (m >= 0), else None"""
    nearest = round(value)
    if nearest <= 0 and abs(value - nearest) <= tol:
        return -int(nearest)
    return None


@dataclass
class HypergeometricSpec:
    """
    Parameter lists of a terminating pFq at argument 1

    Args:
        upper: numerator parameters a_1..a_p
        lower: denominator parameters b_1..b_q
        integer_tolerance: distance below which a parameter counts as an integer
    """
    upper: List[float]
    lower: List[float]
    integer_tolerance: float = field(default_factory=lambda: NUMERIC_CONFIG['integer_tolerance'])

    @property
    def termination_index(self) -> Optional[int]:
        """K = smallest |a_i| over non-positive integer upper parameters"""
        orders = [
            m for m in (_nonpositive_integer(a, self.integer_tolerance) for a in self.upper)
            if m is not None
        ]
        return min(orders) if orders else None

    def validate(self) -> int:
        """Check both invariants and return the termination index"""
        K = self.termination_index
        if K is None:
            raise UnsupportedSeriesError(
                f"no terminating upper parameter in {self.upper!r}"
            )
        for b in self.lower:
            m = _nonpositive_integer(b, self.integer_tolerance)
            if m is not None and m < K:
                raise SeriesPoleError(
                    f"lower parameter {b!r} reaches a pole at k={m + 1} before termination at k={K}"
                )
        return K


def hyp_pfq_unit(spec: HypergeometricSpec) -> float:
    """
    Terminating pFq(upper; lower; 1)

    Sums k = 0..K with the term-ratio recurrence
        t_{k+1} = t_k * prod(a_i + k) / (prod(b_j + k) * (k + 1))
    and compensated summation. The terminating parameter is snapped to its
    integer so that the series stops exactly.
    """
    K = spec.validate()
    tol = spec.integer_tolerance

    upper = []
    for a in spec.upper:
        m = _nonpositive_integer(a, tol)
        upper.append(float(-m) if m is not None else float(a))
    lower = []
    for b in spec.lower:
        m = _nonpositive_integer(b, tol)
        lower.append(float(-m) if m is not None else float(b))

    terms = [1.0]
    term = 1.0
    for k in range(K):
        num = math.prod(a + k for a in upper)
        den = math.prod(b + k for b in lower) * (k + 1)
        term *= num / den
        terms.append(term)

    logger.debug("pFq %r;%r terminated at K=%d", upper, lower, K)
    return math.fsum(terms)
