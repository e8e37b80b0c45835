"""
Tests for the moment bounds
- M(l, lambda) branches, monotonicity and derivative
- optimized C(a, b) against D(a, b), symmetry and the Heisenberg case
- maximizer densities that saturate M
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import entropic_bounds as eb
import moment_bounds as mb
from config import NUMERIC_CONFIG, OPTIMIZER_CONFIG
from moment_bounds import DimensionContext, MomentOrders
from exceptions import DivergentMomentError, DomainError

CTX3 = DimensionContext(3)


def C(a, b, d=3, **kwargs):
    return mb.bound_C(MomentOrders(a, b, DimensionContext(d)), **kwargs)


def D(a, b, d=3):
    return mb.classical_bound_D(MomentOrders(a, b, DimensionContext(d)))


# ---------------------------------------------------------------- types

def test_dimension_context_sphere_surface():
    assert DimensionContext(1).omega == pytest.approx(2.0)
    assert DimensionContext(2).omega == pytest.approx(2.0 * math.pi)
    assert DimensionContext(3).omega == pytest.approx(4.0 * math.pi)


@pytest.mark.parametrize('d', [0, -2, 2.5, True])
def test_dimension_context_rejects_invalid(d):
    with pytest.raises(DomainError):
        DimensionContext(d)


def test_moment_orders_reject_non_positive():
    with pytest.raises(DomainError):
        MomentOrders(-1.0, 2.0, CTX3)
    with pytest.raises(DomainError):
        MomentOrders(1.0, 0.0, CTX3)
    assert MomentOrders(1, 2, CTX3).swapped() == MomentOrders(2.0, 1.0, CTX3)


# ---------------------------------------------------------------- M(l, lambda)

def test_threshold_and_divergence():
    assert mb.moment_threshold(1.0, CTX3) == pytest.approx(0.75)
    with pytest.raises(DivergentMomentError):
        mb.bound_M(1.0, 0.75, CTX3)
    with pytest.raises(DivergentMomentError):
        mb.bound_M(1.0, 0.6, CTX3)
    assert mb.bound_M(1.0, 0.76, CTX3) > 0.0


@pytest.mark.parametrize('d', [1, 2, 3, 5, 10])
def test_M_second_moment_at_one_is_dimension(d):
    # B(1) M(2,1)^2 = d^2/4
    assert mb.bound_M(2.0, 1.0, DimensionContext(d)) == pytest.approx(float(d), rel=1e-12)


def reference_log_M(l, lam, d):
    """ln M(l, lambda) at 50 digits"""
    with mpmath.workdps(50):
        l, v, d = mpmath.mpf(l), mpmath.mpf(lam), mpmath.mpf(d)
        c = d / l
        log_omega = mpmath.log(2) + d / 2 * mpmath.log(mpmath.pi) - mpmath.loggamma(d / 2)
        log_2pie = mpmath.log(2 * mpmath.pi * mpmath.e)
        if v == 1:
            value = (log_2pie + (2 / d) * (mpmath.log(l) - log_omega - mpmath.loggamma(c))
                     + (2 / l) * (mpmath.log(c) - 1))
            return float(value)
        m = v / (v - 1)
        if v > 1:
            log_b1 = mpmath.loggamma(c) + mpmath.loggamma(m) - mpmath.loggamma(m + c)
            middle = -mpmath.log1p(l * m / d)
        else:
            y = 1 - m - c
            log_b1 = mpmath.loggamma(c) + mpmath.loggamma(y) - mpmath.loggamma(c + y)
            middle = mpmath.log(-d / (d + l * m))
        value = (log_2pie + (2 / d) * (mpmath.log(l) - log_omega - log_b1)
                 + (2 / l) * middle - (2 * (m - 1) / d) * mpmath.log1p(c / m))
        return float(value)


@pytest.mark.parametrize('eps', [5e-10, -5e-10, 2e-6, -2e-6, 1e-5, -1e-5, 1e-4, -1e-4])
@pytest.mark.parametrize('l', [0.5, 1.0, 2.0, 4.0])
@pytest.mark.parametrize('d', [1, 3, 5])
def test_log_M_accurate_near_one(eps, l, d):
    lam = 1.0 + eps
    assert mb.log_bound_M(l, lam, DimensionContext(d)) == pytest.approx(reference_log_M(l, lam, d), abs=1e-12)


@pytest.mark.parametrize('l', [0.5, 1.0, 2.0, 4.0])
def test_M_continuous_across_one(l):
    at_one = mb.log_bound_M(l, 1.0, CTX3)
    assert at_one == pytest.approx(reference_log_M(l, 1.0, 3), abs=1e-13)
    band = NUMERIC_CONFIG['moment_unit_band']
    for eps in (band, 2.0 * band, -2.0 * band, 1e-7):
        assert mb.log_bound_M(l, 1.0 + eps, CTX3) == pytest.approx(at_one + eps / l, abs=1e-12)


@pytest.mark.parametrize('l', [0.5, 1.0, 2.0, 4.0])
@pytest.mark.parametrize('d', [1, 3, 5])
def test_M_increasing(l, d):
    ctx = DimensionContext(d)
    lo = mb.moment_threshold(l, ctx) + 1e-6
    values = [mb.bound_M(l, float(x), ctx) for x in np.linspace(lo, 5.0, 200)]
    assert all(b > a for a, b in zip(values, values[1:]))


@settings(max_examples=50, deadline=None)
@given(
    l=st.floats(min_value=0.3, max_value=6.0),
    d=st.sampled_from([1, 2, 3, 5]),
    frac=st.floats(min_value=0.0, max_value=1.0),
)
def test_dlogM_matches_finite_difference(l, d, frac):
    ctx = DimensionContext(d)
    lo = mb.moment_threshold(l, ctx) + 0.02
    lam = lo + frac * (4.0 - lo)
    if abs(lam - 1.0) < 1e-3:
        lam += 2e-3
    h = 1e-6
    fd = (mb.log_bound_M(l, lam + h, ctx) - mb.log_bound_M(l, lam - h, ctx)) / (2.0 * h)
    assert mb.dlogM_dlambda(l, lam, ctx) == pytest.approx(fd, abs=1e-5)


def test_dlogM_unit_band():
    assert mb.dlogM_dlambda(2.0, 1.0, CTX3) == 0.5


# ---------------------------------------------------------------- D(a, b)

@pytest.mark.parametrize('d', [1, 2, 3, 5, 10])
def test_D_heisenberg(d):
    assert D(2.0, 2.0, d) == pytest.approx(d * d / 4.0, rel=1e-12)


def test_D_term_by_term():
    # one factor per order: e (d / (e k))^{2/k} (Gamma(1 + d/2) / Gamma(1 + d/k))^{2/d}
    d = 3

    def factor(k):
        return math.e * (d / (math.e * k)) ** (2.0 / k) * math.exp(
            (2.0 / d) * (math.lgamma(1.0 + d / 2.0) - math.lgamma(1.0 + d / k)))

    assert factor(2.0) == pytest.approx(1.5, rel=1e-14)
    assert D(1.0, 2.0, d) == pytest.approx(factor(1.0) * factor(2.0), rel=1e-13)
    assert D(1.0, 2.0, d) == pytest.approx(1.8184, rel=1e-4)


# ---------------------------------------------------------------- C(a, b)

def test_search_domain():
    assert mb.search_domain(1.0, 3) == (0.75, 1.0)
    assert mb.search_domain(4.0, 3) == (0.5, 1.0)


@pytest.mark.parametrize('d', [1, 2, 3, 5, 10])
def test_C_heisenberg_reduction(d):
    result = C(2.0, 2.0, d)
    assert result.value == pytest.approx(d * d / 4.0, rel=1e-10)
    assert result.alpha_opt.value == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize('a', [0.1, 0.5, 1.0, 2.0, 4.0])
def test_C_equals_D_on_diagonal(a):
    result = C(a, a, 5)
    assert result.value == pytest.approx(D(a, a, 5), rel=1e-8)
    assert result.alpha_opt.value == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize('a', [0.1, 0.5, 1.0, 2.0, 4.0])
@pytest.mark.parametrize('b', [0.1, 0.5, 1.0, 2.0, 4.0])
def test_C_dominates_D(a, b):
    assert C(a, b, 3).value >= D(a, b, 3) - 1e-12


def test_C_strictly_above_D_off_diagonal():
    assert C(1.0, 2.0, 3).value > D(1.0, 2.0, 3) * (1.0 + 1e-6)


@settings(max_examples=15, deadline=None)
@given(
    a=st.floats(min_value=0.1, max_value=8.0),
    b=st.floats(min_value=0.1, max_value=8.0),
    d=st.sampled_from([1, 3, 5]),
)
def test_C_symmetry(a, b, d):
    ab = C(a, b, d, grid_points=64)
    ba = C(b, a, d, grid_points=64)
    assert ab.value == pytest.approx(ba.value, rel=1e-10)
    assert ba.alpha_opt.value == pytest.approx(eb.conjugate(ab.alpha_opt).value, abs=1e-8)


def test_alpha_opt_side_of_one():
    low = C(2.0, 1.0, 3)
    high = C(1.0, 2.0, 3)
    assert low.alpha_opt.value <= 1.0
    assert not low.swapped
    assert high.alpha_opt.value >= 1.0
    assert high.swapped
    lo, hi = high.search_interval
    assert lo < high.canonical_alpha <= hi


def test_C_is_maximum_of_objective():
    result = C(4.0, 1.0, 3)
    lo, hi = result.search_interval
    for alpha in np.linspace(lo, hi, 50)[1:]:
        assert mb.objective(4.0, 1.0, float(alpha), CTX3) <= result.value * (1.0 + 1e-12)


def test_objective_equals_two_index_product_on_curve():
    alpha = 0.9
    star = eb.conjugate(alpha).value
    assert mb.bound_product_2d(2.0, 1.0, alpha, star, CTX3) == pytest.approx(
        mb.objective(2.0, 1.0, alpha, CTX3), rel=1e-13)


def test_two_index_product_defined_along_whole_curve():
    lo, hi = mb.search_domain(2.0, CTX3)
    for alpha in np.linspace(lo, hi, 401)[1:]:
        alpha = float(alpha)
        star = eb.conjugate(alpha).value
        assert mb.bound_product_2d(2.0, 1.0, alpha, star, CTX3) == pytest.approx(
            mb.objective(2.0, 1.0, alpha, CTX3), rel=1e-12)


def test_objective_at_lower_edge():
    lo, hi = mb.search_domain(2.0, CTX3)
    alpha = lo + OPTIMIZER_CONFIG['edge_shrink'] * (hi - lo)
    value = mb.objective(2.0, 1.0, alpha, CTX3)
    assert math.isfinite(value)
    assert 0.0 < value < mb.objective(2.0, 1.0, 1.0, CTX3)


def test_objective_decreases_past_one_for_a_at_least_b():
    values = [mb.objective(2.0, 1.0, float(x), CTX3) for x in np.linspace(1.0, 1.4, 30)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_bound_C_rejects_bad_settings():
    with pytest.raises(DomainError):
        C(1.0, 2.0, grid_points=8)
    with pytest.raises(DomainError):
        C(1.0, 2.0, tol=0.0)


def test_bound_result_to_dict():
    record = C(1.0, 1.0).to_dict()
    assert set(record) == {'C', 'alpha_opt', 'search_interval', 'evaluations', 'swapped'}
    assert record['evaluations'] >= 256


# ---------------------------------------------------------------- maximizer densities

def test_beta_constraints_undefined_at_one():
    with pytest.raises(DomainError):
        mb.beta_constraints(2.0, 1.0, CTX3)


@pytest.mark.parametrize('l, lam, d, moment', [
    (2.0, 1.0, 3, 3.0),
    (1.0, 1.0, 2, 0.5),
    (2.0, 1.5, 3, 1.0),
    (1.0, 2.0, 3, 2.0),
    (2.0, 2.5, 1, 1.5),
    (1.0, 0.9, 2, 1.0),
    (2.0, 0.8, 3, 3.0),
    (4.0, 0.7, 5, 1.2),
])
def test_maxent_density_saturates_M(l, lam, d, moment):
    report = mb.maxent_verify(l, lam, DimensionContext(d), moment)
    assert report.normalization_error <= 1e-10
    assert report.moment_error <= 1e-10
    assert report.residual <= 1e-8
    assert report.residual_closed_form <= 1e-8


def test_maxent_support():
    compact = mb.MaxEntDensity.solve(2.0, 1.5, CTX3, 1.0)
    radius = compact.support_radius
    assert math.isfinite(radius)
    assert compact.pdf(radius * 1.01) == 0.0
    assert compact.pdf(radius * 0.5) > 0.0

    heavy = mb.MaxEntDensity.solve(2.0, 0.8, CTX3, 1.0)
    assert heavy.support_radius == math.inf
    assert heavy.pdf(100.0) > 0.0


def test_maxent_rejects_divergent_order():
    with pytest.raises(DivergentMomentError):
        mb.MaxEntDensity.solve(1.0, 0.7, CTX3, 1.0)
