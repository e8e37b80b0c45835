"""
Sweeps, figure presets and the invariant suite
"""

from verification.sweeps import (
    OrderRange, SweepRow, SkippedRow, SweepTable,
    sweep_bounds, sweep_states, sweep_state_orders, enumerate_states,
)
from verification.presets import PRESETS, Preset, run_preset
from verification.suite import CheckResult, SuiteConfig, SuiteReport, run_invariant_suite

__all__ = [
    'OrderRange', 'SweepRow', 'SkippedRow', 'SweepTable',
    'sweep_bounds', 'sweep_states', 'sweep_state_orders', 'enumerate_states',
    'PRESETS', 'Preset', 'run_preset',
    'CheckResult', 'SuiteConfig', 'SuiteReport', 'run_invariant_suite',
]
