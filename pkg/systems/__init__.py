"""
Central-potential quantum systems: hydrogenic and oscillator eigenstates
"""

import math
from typing import Tuple, Union

from exceptions import DomainError
from systems.radial import (
    RadialFunction, QuadratureMoment, laguerre, gegenbauer, quadrature_moment,
)
from systems.hydrogen import (
    HydrogenState, hydrogen_radial_position, hydrogen_radial_momentum,
    hydrogen_moment_r, hydrogen_moment_p,
)
from systems.oscillator import OscillatorState, oscillator_radial, oscillator_moment

CentralState = Union[HydrogenState, OscillatorState]

SYSTEMS = ('hydrogen', 'oscillator')


def make_state(system: str, d: int, n: int, l: int) -> CentralState:
    if system == 'hydrogen':
        return HydrogenState(d, n, l)
    if system == 'oscillator':
        return OscillatorState(d, n, l)
    raise DomainError(f"unknown system {system!r}, expected one of {SYSTEMS}")


def state_moments(state: CentralState, a: float, b: float) -> Tuple[float, float]:
    """(<r^a>, <p^b>) for either system"""
    if isinstance(state, HydrogenState):
        return hydrogen_moment_r(state, a), hydrogen_moment_p(state, b)
    return oscillator_moment(state, a), oscillator_moment(state, b)


def uncertainty_product(r_moment: float, p_moment: float, a: float, b: float) -> float:
    """<r^a>^{2/a} <p^b>^{2/b}"""
    return math.exp((2.0 / a) * math.log(r_moment) + (2.0 / b) * math.log(p_moment))


__all__ = [
    'CentralState', 'SYSTEMS', 'make_state', 'state_moments', 'uncertainty_product',
    'RadialFunction', 'QuadratureMoment', 'laguerre', 'gegenbauer', 'quadrature_moment',
    'HydrogenState', 'hydrogen_radial_position', 'hydrogen_radial_momentum',
    'hydrogen_moment_r', 'hydrogen_moment_p',
    'OscillatorState', 'oscillator_radial', 'oscillator_moment',
]
