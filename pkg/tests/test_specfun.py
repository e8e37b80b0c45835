"""
Tests for the special-function layer
- log-gamma / digamma wrappers and their domains
- Pochhammer helpers
- terminating pFq(1) summation
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

import specfun
from specfun import HypergeometricSpec, hyp_pfq_unit
from exceptions import DomainError, SeriesPoleError, UnsupportedSeriesError


@given(st.floats(min_value=0.1, max_value=50.0))
def test_gamma_recurrence(x):
    ratio = math.exp(specfun.log_gamma(x + 1.0) - specfun.log_gamma(x))
    assert ratio == pytest.approx(x, rel=1e-12)


def test_log_gamma_known_values():
    assert specfun.log_gamma(1.0) == 0.0
    assert specfun.log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
    assert specfun.log_gamma(11.0) == pytest.approx(math.log(3628800.0), rel=1e-14)


@pytest.mark.parametrize('x', [0.0, -1.0, -0.5, float('nan'), float('inf')])
def test_log_gamma_rejects_non_positive(x):
    with pytest.raises(DomainError):
        specfun.log_gamma(x)


def test_digamma_known_values():
    euler_gamma = 0.5772156649015329
    assert specfun.digamma(1.0) == pytest.approx(-euler_gamma, abs=1e-12)
    assert specfun.digamma(0.5) == pytest.approx(-euler_gamma - 2.0 * math.log(2.0), abs=1e-12)


@given(st.floats(min_value=0.5, max_value=40.0))
def test_digamma_is_derivative_of_log_gamma(x):
    h = 1e-6
    fd = (specfun.log_gamma(x + h) - specfun.log_gamma(x - h)) / (2.0 * h)
    assert specfun.digamma(x) == pytest.approx(fd, abs=1e-6)


def test_digamma_minus_log_continuous_at_switch():
    x = 50.0
    direct = specfun.digamma(x) - math.log(x)
    assert specfun.digamma_minus_log(x) == pytest.approx(direct, abs=1e-13)
    assert specfun.digamma_minus_log(1e8) == pytest.approx(-0.5e-8, rel=1e-6)


def test_log_beta_matches_gamma():
    x, y = 2.5, 3.25
    expected = specfun.log_gamma(x) + specfun.log_gamma(y) - specfun.log_gamma(x + y)
    assert specfun.log_beta(x, y) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize('x, y', [
    (1.5, 5e5), (1.5, 1e6), (0.75, 2e5), (6.0, 1e9), (2.5, 49.9), (2.5, 50.0), (30.0, 120.0), (5e5, 3.0),
])
def test_log_beta_large_argument(x, y):
    with mpmath.workdps(40):
        reference = float(mpmath.log(mpmath.beta(mpmath.mpf(x), mpmath.mpf(y))))
    assert specfun.log_beta(x, y) == pytest.approx(reference, rel=1e-14, abs=1e-13)


def test_log_gamma_ratio_matches_log_gamma():
    for y in (50.0, 75.0, 400.0):
        for c in (0.5, 1.5, 7.0):
            expected = specfun.log_gamma(y + c) - specfun.log_gamma(y)
            assert specfun.log_gamma_ratio(y, c) == pytest.approx(expected, abs=1e-11)


def test_pochhammer_values():
    assert specfun.pochhammer(1.0, 5) == pytest.approx(120.0)
    assert specfun.pochhammer(0.5, 0) == 1.0
    assert specfun.pochhammer(-2.5, 2) == pytest.approx(3.75)
    assert specfun.pochhammer(-3.0, 5) == 0.0
    assert specfun.pochhammer_log(-3.0, 5) == (0, -math.inf)
    sign, _ = specfun.pochhammer_log(-2.5, 3)
    assert sign == -1


def test_termination_index_takes_smallest():
    spec = HypergeometricSpec(upper=[-3.0, -5.0, 2.0], lower=[1.5])
    assert spec.termination_index == 3
    assert HypergeometricSpec(upper=[-2.0000000001, 1.0], lower=[1.0]).termination_index == 2
    assert HypergeometricSpec(upper=[0.5, 1.5], lower=[1.0]).termination_index is None


def test_zero_upper_parameter_gives_one():
    assert hyp_pfq_unit(HypergeometricSpec(upper=[0.0, 3.7], lower=[2.2])) == 1.0


@settings(max_examples=60)
@given(
    n=st.integers(min_value=0, max_value=20),
    b=st.floats(min_value=0.1, max_value=6.0),
    extra=st.floats(min_value=0.5, max_value=6.0),
)
def test_chu_vandermonde(n, b, extra):
    # 2F1(-n, b; c; 1) = (c - b)_n / (c)_n
    c = b + extra
    expected = specfun.pochhammer(c - b, n) / specfun.pochhammer(c, n)
    # alternating terms cancel; rounding scales with sum |terms|, not the result
    scale = math.fsum(
        abs(specfun.pochhammer(-float(n), k) * specfun.pochhammer(b, k)
            / (specfun.pochhammer(c, k) * math.factorial(k)))
        for k in range(n + 1)
    )
    value = hyp_pfq_unit(HypergeometricSpec(upper=[-float(n), b], lower=[c]))
    assert abs(value - expected) <= 1e-12 * scale


def test_chu_vandermonde_cancelling_case():
    # 2F1(-19, 1; 2; 1) = 1/20
    value = hyp_pfq_unit(HypergeometricSpec(upper=[-19.0, 1.0], lower=[2.0]))
    assert value == pytest.approx(1.0 / 20.0, rel=1e-8)


@settings(max_examples=40)
@given(
    K=st.integers(min_value=0, max_value=10),
    upper=st.lists(st.floats(min_value=0.1, max_value=5.0), min_size=1, max_size=3),
    lower=st.lists(st.floats(min_value=0.5, max_value=5.0), min_size=2, max_size=3),
)
def test_permutation_symmetry(K, upper, lower):
    spec = HypergeometricSpec(upper=[-float(K)] + upper, lower=lower)
    permuted = HypergeometricSpec(upper=list(reversed(upper)) + [-float(K)], lower=list(reversed(lower)))
    scale = sum(
        abs(math.prod(specfun.pochhammer(a, k) for a in spec.upper)
            / (math.prod(specfun.pochhammer(b, k) for b in spec.lower) * math.factorial(k)))
        for k in range(K + 1)
    )
    assert abs(hyp_pfq_unit(spec) - hyp_pfq_unit(permuted)) <= 1e-14 * scale


def test_brute_force_equivalence():
    spec = HypergeometricSpec(upper=[-7.0, 1.3, 2.9], lower=[0.7, 4.1])
    naive = math.fsum(
        math.prod(specfun.pochhammer(a, k) for a in spec.upper)
        / (math.prod(specfun.pochhammer(b, k) for b in spec.lower) * math.factorial(k))
        for k in range(8)
    )
    assert hyp_pfq_unit(spec) == pytest.approx(naive, rel=1e-12)


def test_non_terminating_series_rejected():
    with pytest.raises(UnsupportedSeriesError):
        hyp_pfq_unit(HypergeometricSpec(upper=[0.5, 1.5], lower=[2.0]))


def test_pole_before_termination_rejected():
    with pytest.raises(SeriesPoleError):
        hyp_pfq_unit(HypergeometricSpec(upper=[-3.0, 1.0], lower=[-1.0]))


def test_pole_after_termination_allowed():
    # lower -4 only hits zero at k = 5, past K = 2
    value = hyp_pfq_unit(HypergeometricSpec(upper=[-2.0, 1.0], lower=[-4.0]))
    assert value == pytest.approx(1.0 + (-2.0) / (-4.0) + (-2.0 * -1.0 * 1.0 * 2.0) / ((-4.0 * -3.0) * 2.0))
