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
Adaptive quadrature on the radial half-line
Wraps scipy.integrate.quad (QUADPACK Gauss-Kronrod) and turns poor
error estimates into OracleError
"""

import math
import logging
from typing import Callable, Optional, Tuple

from scipy import integrate

from config import QUADRATURE_CONFIG
from exceptions import OracleError

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi


def _safe(integrand: Callable[[float], float], r: float) -> float:
    # Far tails of the mapped integrand may overflow; their contribution is zero
    try:
        value = integrand(r)
    except (OverflowError, ZeroDivisionError):
        return 0.0
    if not math.isfinite(value):
        return 0.0
    return value


def integrate_radial(integrand: Callable[[float], float], scale: float = 1.0,
                     upper: Optional[float] = None, epsabs: Optional[float] = None,
                     epsrel: Optional[float] = None, limit: Optional[int] = None) -> Tuple[float, float]:
    """
    Integrate integrand(r) over [0, upper] (upper=None or inf: [0, inf))

    The half-line is mapped by r = scale * tan(t), t in [0, pi/2], so the
    integrand only needs to decay faster than 1/r. scale should be close
    to the width of the integrand.

    Args:
        integrand: function of the radius
        scale: characteristic length of the integrand
        upper: finite support end, if any
        epsabs, epsrel, limit: QUADPACK settings (defaults from QUADRATURE_CONFIG)

    Returns:
        (value, estimated absolute error)

    Raises:
        OracleError: estimated error above the accepted tolerance
    """
    epsabs = QUADRATURE_CONFIG['epsabs'] if epsabs is None else epsabs
    epsrel = QUADRATURE_CONFIG['epsrel'] if epsrel is None else epsrel
    limit = QUADRATURE_CONFIG['limit'] if limit is None else limit

    if upper is not None and math.isfinite(upper):
        out = integrate.quad(lambda r: _safe(integrand, r), 0.0, upper,
                             epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)
    else:
        def mapped(t: float) -> float:
            c = math.cos(t)
            if c <= 0.0:
                return 0.0
            return _safe(integrand, scale * math.tan(t)) * scale / (c * c)

        out = integrate.quad(mapped, 0.0, HALF_PI,
                             epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)

    value, abserr = float(out[0]), float(out[1])
    accepted = max(epsabs, QUADRATURE_CONFIG['accept_relative'] * abs(value))
    if not math.isfinite(value) or abserr > accepted:
        message = out[3] if len(out) > 3 else 'no message'
        raise OracleError(
            f"quadrature did not converge: value={value!r}, abserr={abserr!r} ({message})",
            estimate=value, abserr=abserr,
        )
    if len(out) > 3:
        logger.debug("quad accepted with warning: %s (abserr=%.3e)", out[3], abserr)
    return value, abserr
