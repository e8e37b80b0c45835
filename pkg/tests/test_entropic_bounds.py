"""
Tests for the Renyi entropy-power bounds
- conjugation and the B(alpha) curve
- Z(alpha, beta) on and off the conjugation curve
- Gaussian sharpness and the entropic sum form
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import entropic_bounds as eb
from entropic_bounds import RenyiIndex
from exceptions import DomainError, NoUncertaintyRelationError

orders_above_half = st.floats(min_value=0.5 + 1e-6, max_value=20.0)


@pytest.mark.parametrize('bad', [0.0, -1.0, float('nan'), float('inf')])
def test_renyi_index_rejects_invalid(bad):
    with pytest.raises(DomainError):
        RenyiIndex(bad)


def test_renyi_index_basics():
    lam = RenyiIndex(2)
    assert float(lam) == 2.0
    assert lam.conjugate().value == pytest.approx(2.0 / 3.0)
    assert lam.mu == pytest.approx(2.0)
    assert lam.conjugate().mu == pytest.approx(-2.0)


def test_conjugate_fixed_point_and_domain():
    assert eb.conjugate(1.0).value == 1.0
    with pytest.raises(DomainError):
        eb.conjugate(0.5)
    with pytest.raises(DomainError):
        eb.mu(1.0)


@given(orders_above_half)
def test_conjugation_is_an_involution(alpha):
    star = eb.conjugate(alpha).value
    assert eb.conjugate(star).value == pytest.approx(alpha, rel=1e-9)
    assert 1.0 / alpha + 1.0 / star == pytest.approx(2.0, rel=1e-12)


def test_B_endpoints():
    assert eb.bound_B(1.0) == 0.25
    assert eb.bound_B(1.0 + 5e-9) == 0.25
    assert eb.bound_B(0.5) == pytest.approx(math.exp(-2.0), rel=1e-14)
    with pytest.raises(DomainError):
        eb.bound_B(0.4)


@given(orders_above_half)
def test_B_conjugation_symmetry(alpha):
    assert eb.bound_B(eb.conjugate(alpha)) == pytest.approx(eb.bound_B(alpha), rel=1e-13)


def test_B_rises_then_falls():
    rising = [eb.bound_B(float(x)) for x in np.geomspace(0.5, 1.0, 200)]
    falling = [eb.bound_B(float(x)) for x in np.geomspace(1.0, 20.0, 200)]
    assert all(b > a for a, b in zip(rising, rising[1:]))
    assert all(b < a for a, b in zip(falling, falling[1:]))
    assert max(rising + falling) == 0.25


@given(st.floats(min_value=0.55, max_value=10.0))
def test_dlogB_matches_finite_difference(alpha):
    h = 1e-6
    fd = (eb.log_bound_B(alpha + h) - eb.log_bound_B(alpha - h)) / (2.0 * h)
    assert eb.dlogB_dlambda(alpha) == pytest.approx(fd, abs=1e-6)


def test_dlogB_sign():
    assert eb.dlogB_dlambda(1.0) == 0.0
    assert eb.dlogB_dlambda(0.7) > 0.0
    assert eb.dlogB_dlambda(3.0) < 0.0
    # series branch against the closed form just inside the switch
    a = 1.0 + 0.999e-3
    closed = (2.0 - 2.0 / a - math.log1p(2.0 * (a - 1.0))) / (a - 1.0) ** 2
    assert eb.dlogB_dlambda(a) == pytest.approx(closed, rel=1e-5)


def test_Z_lower_square_is_constant():
    assert eb.bound_Z(0.3, 0.4) == pytest.approx(math.exp(-2.0))
    assert eb.bound_Z(0.5, 0.5) == pytest.approx(math.exp(-2.0))


def test_Z_on_conjugation_curve_equals_B():
    for alpha in (0.6, 0.8, 1.0, 1.5, 4.0):
        star = eb.conjugate(alpha).value
        assert eb.bound_Z(alpha, star) == pytest.approx(eb.bound_B(alpha), rel=1e-13)


def test_Z_defined_everywhere_on_conjugation_curve():
    for alpha in np.linspace(0.51, 5.0, 2000):
        alpha = float(alpha)
        star = eb.conjugate(alpha).value
        assert eb.bound_Z(alpha, star) == pytest.approx(eb.bound_B(alpha), rel=1e-13)
        assert eb.bound_Z(star, alpha) == pytest.approx(eb.bound_B(alpha), rel=1e-13)


def test_Z_above_one_depends_on_alpha_only():
    alpha = 2.0
    star = eb.conjugate(alpha).value
    for beta in (0.1, 0.3, 0.55, star):
        assert eb.bound_Z(alpha, beta) == pytest.approx(eb.bound_B(star), rel=1e-13)


def test_Z_never_exceeds_quarter():
    for alpha in np.linspace(0.05, 4.0, 25):
        for beta in np.linspace(0.05, 4.0, 25):
            try:
                z = eb.bound_Z(float(alpha), float(beta))
            except NoUncertaintyRelationError:
                continue
            assert z <= 0.25


def test_Z_outside_curve_raises_in_both_directions():
    with pytest.raises(NoUncertaintyRelationError):
        eb.bound_Z(2.0, 0.7)
    with pytest.raises(NoUncertaintyRelationError):
        eb.bound_Z(0.7, 2.0)
    # also a DomainError, so callers can catch either
    with pytest.raises(DomainError):
        eb.bound_Z(0.7, 3.0)


@given(
    alpha=st.floats(min_value=0.51, max_value=10.0),
    sigma=st.floats(min_value=0.01, max_value=100.0),
    d=st.integers(min_value=1, max_value=6),
)
def test_gaussian_saturates_B(alpha, sigma, d):
    assert eb.gaussian_power_product(alpha, sigma, d) == pytest.approx(eb.bound_B(alpha), rel=1e-12)


def test_gaussian_renyi_entropy_shannon_limit():
    # Shannon entropy of a unit Gaussian in one dimension
    assert eb.gaussian_renyi_entropy(1.0, 1.0) == pytest.approx(0.5 * math.log(2.0 * math.pi * math.e))
    with pytest.raises(DomainError):
        eb.gaussian_renyi_entropy(1.0, 0.0)


def test_entropy_power_of_unit_gaussian_is_one():
    h = eb.gaussian_renyi_entropy(1.0, 1.0, d=3)
    assert eb.entropy_power(h, 3).value == pytest.approx(1.0)
    with pytest.raises(DomainError):
        eb.EntropyPower(0.0)


@given(orders_above_half, st.integers(min_value=1, max_value=6))
def test_sum_bound_is_log_form_of_B(alpha, d):
    bound = eb.renyi_sum_bound(alpha, d)
    product = math.exp(2.0 * bound / d) / (2.0 * math.pi * math.e) ** 2
    assert product == pytest.approx(eb.bound_B(alpha), rel=1e-11)


def test_sum_bound_shannon_limit():
    assert eb.renyi_sum_bound(1.0, 3) == pytest.approx(eb.shannon_sum_bound(3))
    assert eb.shannon_sum_bound(1) == pytest.approx(1.0 + math.log(math.pi))


def test_babenko_beckner_constant():
    assert eb.babenko_beckner_constant(2.0) == pytest.approx(1.0)
    assert eb.babenko_beckner_constant(1.0) == pytest.approx((2.0 * math.pi) ** -0.5)
    assert eb.babenko_beckner_constant(1.5) < 1.0
    with pytest.raises(DomainError):
        eb.babenko_beckner_constant(2.5)


def test_heisenberg_bound():
    assert eb.heisenberg_bound(3) == 2.25
    assert eb.heisenberg_bound(1) == 0.25
