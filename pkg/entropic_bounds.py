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
Renyi index algebra and entropic uncertainty bounds
B(alpha) on the conjugation curve, Z(alpha, beta) off it, and the
Gaussian witness that attains B
"""

import math
import logging
from dataclasses import dataclass
from typing import Union

from config import NUMERIC_CONFIG
from exceptions import DomainError, NoUncertaintyRelationError

logger = logging.getLogger(__name__)

LOG_FOUR = math.log(4.0)
INV_E2 = math.exp(-2.0)


@dataclass(frozen=True)
class RenyiIndex:
    """
    A Renyi order lambda > 0

    Conjugation lambda* = lambda / (2 lambda - 1) pairs orders with
    1/lambda + 1/lambda* = 2, defined for lambda > 1/2.
    """
    value: float

    def __post_init__(self):
        v = float(self.value)
        if not math.isfinite(v) or v <= 0.0:
            raise DomainError(f"Renyi order must be positive and finite, got {self.value!r}")
        object.__setattr__(self, 'value', v)

    def conjugate(self) -> 'RenyiIndex':
        return conjugate(self)

    @property
    def mu(self) -> float:
        return mu(self)

    def __float__(self) -> float:
        return self.value


IndexLike = Union[RenyiIndex, float, int]


def as_index(lam: IndexLike) -> RenyiIndex:
    if isinstance(lam, RenyiIndex):
        return lam
    return RenyiIndex(lam)


@dataclass(frozen=True)
class EntropyPower:
    """Renyi entropy power N = exp(2H/d) / (2 pi e)"""
    value: float

    def __post_init__(self):
        if not self.value > 0.0:
            raise DomainError(f"entropy power must be positive, got {self.value!r}")


def conjugate(alpha: IndexLike) -> RenyiIndex:
    """
    alpha* = alpha / (2 alpha - 1)

    Raises:
        DomainError: alpha <= 1/2
    """
    lam = as_index(alpha).value
    if lam <= 0.5:
        raise DomainError(f"conjugate index needs alpha > 1/2, got {lam!r}")
    return RenyiIndex(lam / (2.0 * lam - 1.0))


def mu(lam: IndexLike) -> float:
    """mu = lambda / (lambda - 1); mu(lambda*) = -mu(lambda)"""
    v = as_index(lam).value
    if v == 1.0:
        raise DomainError("mu is undefined at lambda = 1")
    return v / (v - 1.0)


def _log_ratio(x: float) -> float:
    """ln(x) / (x - 1), with its limit 1 at x = 1"""
    if x == 1.0:
        return 1.0
    return math.log1p(x - 1.0) / (x - 1.0)


def log_bound_B(alpha: IndexLike) -> float:
    lam = as_index(alpha).value
    if lam < 0.5:
        raise DomainError(f"bound_B needs alpha >= 1/2, got {lam!r}")
    if abs(lam - 1.0) <= NUMERIC_CONFIG['renyi_unit_band']:
        return -LOG_FOUR
    if lam == 0.5:
        # alpha* -> infinity, its factor tends to 1
        return _log_ratio(0.5) - LOG_FOUR - 2.0
    star = lam / (2.0 * lam - 1.0)
    return _log_ratio(lam) + _log_ratio(star) - LOG_FOUR - 2.0


def bound_B(alpha: IndexLike) -> float:
    """
    Sharp entropy-power product bound on the conjugation curve

        B(alpha) = alpha^{1/(alpha-1)} alpha*^{1/(alpha*-1)} / (4 e^2)

    with B(1) = 1/4 and B(1/2) = 1/e^2.
    """
    return math.exp(log_bound_B(alpha))


def bound_Z(alpha: IndexLike, beta: IndexLike) -> float:
    """
    Entropic bound for an arbitrary pair (alpha, beta) with beta <= alpha*

    1/e^2 on [0, 1/2]^2 and B(max(alpha, beta)) elsewhere.

    Raises:
        NoUncertaintyRelationError: alpha > 1/2 and beta > alpha*
    """
    a = as_index(alpha).value
    b = as_index(beta).value
    if a <= 0.5 and b <= 0.5:
        return INV_E2
    # beta <= alpha* already implies alpha <= beta*; points on the curve
    # get a few ulps of slack from the rounded conjugation
    if a > 0.5 and b > conjugate(a).value * (1.0 + NUMERIC_CONFIG['conjugation_slack']):
        raise NoUncertaintyRelationError(
            f"no uncertainty relation for (alpha, beta) = ({a!r}, {b!r}): beta exceeds alpha*"
        )
    return bound_B(max(a, b))


def gaussian_renyi_entropy(lam: IndexLike, variance: float, d: int = 1) -> float:
    """H_lambda of an isotropic Gaussian with per-axis variance"""
    v = as_index(lam).value
    if variance <= 0.0:
        raise DomainError(f"variance must be positive, got {variance!r}")
    return 0.5 * d * math.log(2.0 * math.pi * variance) + 0.5 * d * _log_ratio(v)


def entropy_power(entropy: float, d: int = 1) -> EntropyPower:
    return EntropyPower(math.exp(2.0 * entropy / d) / (2.0 * math.pi * math.e))


def gaussian_power_product(alpha: IndexLike, sigma: float, d: int = 1) -> float:
    """
    N_alpha(rho) * N_alpha*(gamma) for a minimum-uncertainty Gaussian

    Args:
        alpha: Renyi order, > 1/2
        sigma: per-axis standard deviation of the position density
        d: dimension

    Returns:
        The product, equal to bound_B(alpha) for every sigma and d
    """
    a = as_index(alpha)
    if sigma <= 0.0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    star = conjugate(a)
    var_x = sigma * sigma
    var_p = 1.0 / (4.0 * var_x)
    n_x = entropy_power(gaussian_renyi_entropy(a, var_x, d), d)
    n_p = entropy_power(gaussian_renyi_entropy(star, var_p, d), d)
    return n_x.value * n_p.value


def renyi_sum_bound(alpha: IndexLike, d: int = 1) -> float:
    """
    Lower bound on H_alpha(rho) + H_alpha*(gamma)

        d (ln pi + ln(alpha)/(2(alpha-1)) + ln(alpha*)/(2(alpha*-1)))

    At alpha = 1 this is the Shannon bound d (1 + ln pi).
    """
    lam = as_index(alpha).value
    if lam <= 0.5:
        raise DomainError(f"renyi_sum_bound needs alpha > 1/2, got {lam!r}")
    star = lam / (2.0 * lam - 1.0)
    return d * (math.log(math.pi) + 0.5 * _log_ratio(lam) + 0.5 * _log_ratio(star))


def babenko_beckner_constant(s: float) -> float:
    """
    Sharp constant of the L^s -> L^q Fourier norm inequality, q = s/(s-1)

    Valid for s in [1, 2] with the unitary Fourier convention; equals 1
    at s = 2 and (2 pi)^{-1/2} at s = 1.
    """
    if not 1.0 <= s <= 2.0:
        raise DomainError(f"Babenko-Beckner constant needs s in [1, 2], got {s!r}")
    two_pi = 2.0 * math.pi
    log_c = -math.log(two_pi / s) / (2.0 * s)
    if s > 1.0:
        q = s / (s - 1.0)
        log_c += math.log(two_pi / q) / (2.0 * q)
    return math.exp(log_c)


def dlogB_dlambda(alpha: IndexLike) -> float:
    """d ln B / d alpha = (2 - 2/alpha - ln(2 alpha - 1)) / (alpha - 1)^2"""
    lam = as_index(alpha).value
    if lam <= 0.5:
        raise DomainError(f"dlogB_dlambda needs alpha > 1/2, got {lam!r}")
    eps = lam - 1.0
    if abs(eps) < 1e-3:
        return eps * (-2.0 / 3.0 + eps * (2.0 - 4.4 * eps))
    return (2.0 - 2.0 / lam - math.log(2.0 * lam - 1.0)) / (eps * eps)


def heisenberg_bound(d: int) -> float:
    """<r^2><p^2> >= d^2/4"""
    return d * d / 4.0


def shannon_sum_bound(d: int) -> float:
    return d * (1.0 + math.log(math.pi))
