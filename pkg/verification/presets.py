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
Named sweep configurations, one per published figure
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional

from exceptions import DomainError
from moment_bounds import DimensionContext
from verification.sweeps import OrderRange, SweepTable, sweep_bounds, sweep_state_orders, sweep_states

logger = logging.getLogger(__name__)

FIGURE_A_VALUES = [0.1, 0.5, 1.0, 2.0, 4.0]


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    runner: Callable[..., SweepTable]

    def run(self, threads: Optional[int] = None, grid_points: Optional[int] = None,
            tol: Optional[float] = None) -> SweepTable:
        logger.info("Running preset %s: %s", self.name, self.description)
        table = self.runner(threads=threads, grid_points=grid_points, tol=tol)
        table.name = self.name
        return table


def _bounds_d5(**kwargs) -> SweepTable:
    return sweep_bounds(FIGURE_A_VALUES, OrderRange(0.1, 8.0, 50), DimensionContext(5),
                        include_diagonal=True, **kwargs)


def _states(system: str, orders, n_max: int, l_max: Optional[int] = None):
    def runner(**kwargs) -> SweepTable:
        return sweep_states(system, 3, n_max, orders, l_max=l_max, **kwargs)
    return runner


def _ground_state(system: str, n: int, b_range: OrderRange):
    def runner(**kwargs) -> SweepTable:
        return sweep_state_orders(system, 3, n, 0, FIGURE_A_VALUES, b_range.values(), **kwargs)
    return runner


PRESETS: Dict[str, Preset] = {
    'fig1': Preset('fig1', "C(a,b) and D(a,b) versus b, a in {0.1,0.5,1,2,4}, d=5", _bounds_d5),
    'fig2': Preset('fig2', "alpha_opt(a,b) versus b, a in {0.1,0.5,1,2,4}, d=5", _bounds_d5),
    'fig3': Preset('fig3', "hydrogen d=3, (a,b)=(1,2), n <= 4", _states('hydrogen', (1.0, 2.0), 4)),
    'fig4': Preset('fig4', "hydrogen d=3, (a,b)=(1,4), n <= 4", _states('hydrogen', (1.0, 4.0), 4)),
    'fig5': Preset('fig5', "hydrogen ground state d=3, product versus b < 5",
                   _ground_state('hydrogen', 1, OrderRange(0.1, 4.9, 25))),
    'fig6': Preset('fig6', "oscillator d=3, (a,b)=(1,2), n <= 3, l <= 3", _states('oscillator', (1.0, 2.0), 3, 3)),
    'fig7': Preset('fig7', "oscillator d=3, (a,b)=(1,4), n <= 3, l <= 3", _states('oscillator', (1.0, 4.0), 3, 3)),
    'fig8': Preset('fig8', "oscillator ground state d=3, product versus b",
                   _ground_state('oscillator', 0, OrderRange(0.1, 8.0, 25))),
}


def run_preset(name: str, threads: Optional[int] = None, grid_points: Optional[int] = None,
               tol: Optional[float] = None) -> SweepTable:
    """
    Raises:
        DomainError: unknown preset name
    """
    preset = PRESETS.get(name)
    if preset is None:
        raise DomainError(f"unknown preset {name!r}, expected one of {', '.join(sorted(PRESETS))}")
    return preset.run(threads=threads, grid_points=grid_points, tol=tol)
