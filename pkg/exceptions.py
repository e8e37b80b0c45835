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
Exception hierarchy for moment uncertainty bounds
The CLI maps these onto exit codes
"""


class UncertaintyError(Exception):
    """Base class for every error raised by this package"""


class DomainError(UncertaintyError, ValueError):
    """Argument outside the domain of an operation"""


class DivergentMomentError(DomainError):
    """
    Requested moment (or moment-constraint integral) does not exist

    Raised for M(l, lambda) with lambda <= d/(d+l) and for hydrogen
    momentum moments with b >= 2L + 5
    """


class NoUncertaintyRelationError(DomainError):
    """(alpha, beta) above the conjugation curve: no entropic bound exists"""


class UnsupportedSeriesError(UncertaintyError):
    """Hypergeometric series without a terminating upper parameter"""


class SeriesPoleError(UncertaintyError):
    """Lower pFq parameter hits a pole before the series terminates"""


class OracleError(UncertaintyError):
    """Quadrature did not reach the requested accuracy"""

    def __init__(self, message: str, estimate: float = float('nan'), abserr: float = float('nan')):
        super().__init__(message)
        self.estimate = estimate
        self.abserr = abserr


class OptimizerError(UncertaintyError):
    """Maximizer could not bracket the optimum"""

    def __init__(self, message: str, evaluations: int = 0):
        super().__init__(f"{message} (after {evaluations} evaluations)")
        self.evaluations = evaluations
