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
Configuration module for moment uncertainty bounds
Numeric tolerances, optimizer settings and output formats
"""

# Special functions and branch switching
NUMERIC_CONFIG = {
    # Parameters this close to a non-positive integer terminate a pFq series
    'integer_tolerance': 1e-9,

    # Bands around lambda = 1 where the exact limit forms are used
    'renyi_unit_band': 1e-8,      # bound_B
    'conjugation_slack': 1e-13,   # relative, beta <= alpha* in bound_Z
    'moment_unit_band': 1e-9,     # bound_M
    'moment_derivative_band': 1e-6,  # dlogM_dlambda

    # psi(x) - log(x) switches to its asymptotic series above this
    'digamma_asymptotic_min': 50.0,

    # ln B(x, y) uses the Stirling gamma ratio once max(x, y) reaches this
    'log_beta_asymptotic_min': 50.0,
}

# Coarse grid + golden-section maximizer for C(a,b)
OPTIMIZER_CONFIG = {
    'grid_points': 256,
    'min_grid_points': 16,
    'tolerance': 1e-10,           # final bracket width
    'edge_shrink': 1e-9,          # fraction of the interval skipped at the open lower edge
    'max_iterations': 200,
    'improvement_margin': 1e-13, # log-objective gain needed to leave the grid point
}

# scipy.integrate.quad settings for every quadrature oracle
QUADRATURE_CONFIG = {
    'epsabs': 1e-12,
    'epsrel': 1e-12,
    'limit': 500,                 # max subintervals
    'accept_relative': 1e-9,      # reported error tolerated relative to the result
}

# Machine-readable output
OUTPUT_CONFIG = {
    'csv_header': [
        'a', 'b', 'd', 'system', 'n', 'l',
        'product', 'bound_C', 'bound_D', 'alpha_opt', 'ratio',
    ],
    'float_format': '.17g',
    'json_indent': 2,
    'ratio_floor': 1.0 - 1e-10,   # product / C for physical rows
    'dominance_slack': 1e-12,     # C >= D - slack
}

# Invariant suite grids (full run / --quick run)
SUITE_CONFIG = {
    'full': {
        'order_grid': [0.1, 0.5, 1.0, 2.0, 4.0],
        'dimensions': [1, 3, 5],
        'state_dimensions': [2, 3, 5],
        'n_max': 4,
        'moment_orders': [0.5, 1.0, 2.0, 3.0],
        'monotone_points': 200,
        'random_pairs': 20,
        'curve_grid': 100,
        'seed': 20250101,
    },
    'quick': {
        'order_grid': [0.5, 2.0],
        'dimensions': [3],
        'state_dimensions': [3],
        'n_max': 2,
        'moment_orders': [1.0, 2.0],
        'monotone_points': 40,
        'random_pairs': 4,
        'curve_grid': 30,
        'seed': 20250101,
    },
}
