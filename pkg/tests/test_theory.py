"""Tests for the closed-form theory module.

Frozen reference numbers in this file were computed through independent
routes before being pinned: fixed points by damped Newton iteration on
the drift, Lyapunov variances by adaptive quadrature of the
matrix-exponential integral, Jacobians by central differences.
"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from m2walk import theory
from m2walk.theory import (
    THRESHOLDS,
    P_BALLISTIC,
    P_CRITICAL_LOWER,
    P_CRITICAL_UPPER,
    AsymptoticConstants,
    MemoryParam,
    Regime,
    RegimeError,
    ballistic_fixed_point,
    ballistic_speed,
    classify_regime,
    clt_variance,
    critical_clt_variance,
    drift,
    drift_jacobian,
    eigen_at,
    eigen_weights,
    fixed_points,
    fluctuation_exponent,
    noise_covariance,
    variance_growth_exponent,
)


# ---------------------------------------------------------------------------
# memory parameter and regime partition
# ---------------------------------------------------------------------------

def test_memory_param_rejects_endpoints_and_outside():
    for bad in (0.0, 1.0, -0.25, 1.75):
        with pytest.raises(ValueError):
            MemoryParam(bad)
    assert MemoryParam(0.5).p == 0.5
    assert MemoryParam(0.5).regime is Regime.DIFFUSIVE


def test_threshold_constants():
    # the two rational thresholds are dyadic, hence exact binary floats
    assert P_CRITICAL_LOWER == 0.6875
    assert P_BALLISTIC == 0.875
    # frozen decimal of (113 + sqrt(97)) / 128
    assert abs(P_CRITICAL_UPPER - 0.959756701576532) < 1e-15
    assert THRESHOLDS == {"p1": 0.6875, "p2": 0.875, "p3": P_CRITICAL_UPPER}


@pytest.mark.parametrize(
    "p, expected",
    [
        (0.5, Regime.DIFFUSIVE),
        (11.0 / 16.0, Regime.CRITICAL_LOWER),
        (0.8, Regime.SUPERDIFFUSIVE),
        (7.0 / 8.0, Regime.OPEN_BOUNDARY),
        (0.9, Regime.BALLISTIC_SUPERDIFFUSIVE_FLUCT),
        (P_CRITICAL_UPPER, Regime.CRITICAL_UPPER),
        (0.98, Regime.BALLISTIC_GAUSSIAN_FLUCT),
    ],
)
def test_regime_partition(p, expected):
    assert classify_regime(p) is expected
    assert classify_regime(MemoryParam(p)) is expected


def test_regime_boundaries_are_knife_edge():
    eps = 1e-9
    assert classify_regime(0.6875 - eps) is Regime.DIFFUSIVE
    assert classify_regime(0.6875 + eps) is Regime.SUPERDIFFUSIVE
    assert classify_regime(0.875 - eps) is Regime.SUPERDIFFUSIVE
    assert classify_regime(0.875 + eps) is Regime.BALLISTIC_SUPERDIFFUSIVE_FLUCT
    # the irrational threshold is matched within 1e-15, not 1e-9
    assert classify_regime(P_CRITICAL_UPPER - eps) is Regime.BALLISTIC_SUPERDIFFUSIVE_FLUCT
    assert classify_regime(P_CRITICAL_UPPER + eps) is Regime.BALLISTIC_GAUSSIAN_FLUCT


# ---------------------------------------------------------------------------
# drift field: the step law shifted by the current state
# ---------------------------------------------------------------------------

def test_step_law_fair_memory_mixed_history():
    # after 3 plus steps and 1 minus step under p = 1/2 the next step is
    # +1 / -1 / 0 with probabilities 1/4, 1/4, 1/2
    x = np.array([0.75, 0.25])
    law = drift(0.5, x) + x
    assert_allclose(law, [0.25, 0.25], atol=1e-15)


@pytest.mark.parametrize("p", [0.2, 0.5, 0.8, 0.95])
def test_step_law_all_plus_history(p):
    # from an all-plus history the step is +1 w.p. p^2, -1 w.p. (1-p)^2
    x = np.array([1.0, 0.0])
    law = drift(p, x) + x
    assert_allclose(law, [p * p, (1.0 - p) * (1.0 - p)], atol=1e-15)


@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
def test_step_law_uniform_at_center(p):
    x = np.array([1.0 / 3.0, 1.0 / 3.0])
    law = drift(p, x) + x
    assert_allclose(law, [1.0 / 3.0, 1.0 / 3.0], atol=1e-15)
    # equivalently: the center is a drift zero for every p
    assert np.abs(drift(p, x)).max() < 1e-15


def test_step_law_is_a_probability_law_on_the_whole_simplex():
    rng = np.random.default_rng(11)
    for _ in range(500):
        p = rng.uniform(0.01, 0.99)
        a, b = rng.random(2)
        x = np.array([a * (1.0 - b), b])
        law = drift(p, x) + x
        assert law[0] >= -1e-15 and law[1] >= -1e-15
        assert law[0] + law[1] <= 1.0 + 1e-12


def test_drift_swap_symmetry_is_bit_exact():
    rng = np.random.default_rng(7)
    for _ in range(200):
        p = rng.uniform(0.01, 0.99)
        a, b = rng.random(2)
        x1, x2 = a * (1.0 - b), b
        h = drift(p, (x1, x2))
        h_swapped = drift(p, (x2, x1))
        assert h[0] == h_swapped[1] and h[1] == h_swapped[0]


def test_drift_rejects_points_outside_simplex():
    with pytest.raises(ValueError):
        drift(0.5, (0.8, 0.4))
    with pytest.raises(ValueError):
        drift(0.5, (-0.1, 0.2))


# ---------------------------------------------------------------------------
# Jacobian
# ---------------------------------------------------------------------------

def test_jacobian_matches_central_differences():
    rng = np.random.default_rng(3)
    h = 1e-6
    for _ in range(120):
        p = rng.uniform(0.02, 0.98)
        a, b = rng.random(2)
        x = np.array([a * (1.0 - b), b]) * 0.995
        jac = drift_jacobian(p, x)
        fd = np.empty((2, 2))
        for j in range(2):
            up, dn = x.copy(), x.copy()
            up[j] += h
            dn[j] -= h
            fd[:, j] = (drift(p, up) - drift(p, dn)) / (2.0 * h)
        assert_allclose(jac, fd, atol=1e-6)


@pytest.mark.parametrize("p", [0.1, 0.4, 0.6, 0.9])
def test_jacobian_eigenvalues_at_origin(p):
    vals = np.linalg.eigvalsh(drift_jacobian(p, (0.0, 0.0)))
    assert_allclose(sorted(vals), sorted([1.0, 4.0 * p - 3.0]), atol=1e-13)


def test_jacobian_eigenvalues_at_center_p06():
    vals, _ = eigen_at(0.6, (1.0 / 3.0, 1.0 / 3.0))
    assert_allclose(vals, [-(7.0 - 4.8) / 3.0, -1.0], atol=1e-13)


@pytest.mark.parametrize("p", [0.15, 0.5, 0.6875, 0.875, 0.96])
def test_jacobian_closed_form_at_center(p):
    # at the symmetric fixed point the Jacobian collapses to a symmetric
    # 2x2 with entries (4p-5)/3 on and (2-4p)/3 off the diagonal
    expected = np.array(
        [
            [(4.0 * p - 5.0) / 3.0, (2.0 - 4.0 * p) / 3.0],
            [(2.0 - 4.0 * p) / 3.0, (4.0 * p - 5.0) / 3.0],
        ]
    )
    assert_allclose(drift_jacobian(p, (1.0 / 3.0, 1.0 / 3.0)), expected, atol=1e-15)


# ---------------------------------------------------------------------------
# noise covariance
# ---------------------------------------------------------------------------

def test_noise_covariance_matches_categorical_enumeration():
    # one step contributes (1,0), (0,1) or (0,0) to the channel counters;
    # enumerate that three-point law directly and compare moments
    rng = np.random.default_rng(5)
    outcomes = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    for _ in range(300):
        a, b = rng.random(2)
        g = np.array([a * (1.0 - b), b])
        probs = np.array([g[0], g[1], 1.0 - g[0] - g[1]])
        mean = probs @ outcomes
        cov = np.einsum("k,ki,kj->ij", probs, outcomes, outcomes) - np.outer(mean, mean)
        assert_allclose(mean, g, atol=1e-15)
        assert_allclose(noise_covariance(g), cov, atol=1e-15)


def test_noise_covariance_positive_semidefinite():
    rng = np.random.default_rng(13)
    for _ in range(300):
        a, b = rng.random(2)
        g = np.array([a * (1.0 - b), b])
        assert np.linalg.eigvalsh(noise_covariance(g)).min() >= -1e-15


# ---------------------------------------------------------------------------
# fixed points
# ---------------------------------------------------------------------------

def test_fixed_points_below_ballistic_onset():
    reports = fixed_points(0.6)
    assert len(reports) == 2
    origin, center = reports
    assert_allclose(origin.location, [0.0, 0.0])
    assert origin.stability == "LinearlyUnstable"
    assert_allclose(center.location, [1.0 / 3.0, 1.0 / 3.0])
    assert center.stability == "LinearlyStable"
    assert not origin.boundary_open and not center.boundary_open


def test_fixed_points_above_ballistic_onset():
    reports = fixed_points(0.95)
    assert len(reports) == 4
    origin, center, plus, minus = reports
    assert origin.stability == "LinearlyUnstable"
    assert center.stability == "LinearlyUnstable"
    assert plus.stability == "LinearlyStable"
    assert minus.stability == "LinearlyStable"
    assert_allclose(plus.location, minus.location[::-1], atol=1e-15)
    # drift really vanishes at every reported point
    for rep in reports:
        assert np.abs(drift(0.95, rep.location)).max() < 1e-12


def test_fixed_points_at_open_boundary_are_flagged():
    reports = fixed_points(0.875)
    assert len(reports) == 2
    center = reports[1]
    assert center.boundary_open
    assert abs(center.eigenvalues[0]) < 1e-13  # leading eigenvalue vanishes
    assert not reports[0].boundary_open


def test_ballistic_fixed_point_against_newton_oracle():
    # frozen from damped Newton iteration on the drift at p = 0.95
    point = ballistic_fixed_point(0.95, +1)
    assert_allclose(point, [0.8721113105108338, 0.016777578378055016], atol=1e-12)
    assert_allclose(point, [0.87213, 0.01676], atol=1e-4)
    assert point[0] + point[1] <= 1.0
    assert_allclose(ballistic_fixed_point(0.95, -1), point[::-1], atol=0)


def test_ballistic_fixed_point_limit_toward_full_memory():
    assert_allclose(ballistic_fixed_point(1.0 - 1e-12, +1), [1.0, 0.0], atol=1e-5)


def test_ballistic_fixed_point_guards():
    with pytest.raises(RegimeError):
        ballistic_fixed_point(0.8)
    with pytest.raises(RegimeError):
        ballistic_fixed_point(0.875)
    with pytest.raises(ValueError):
        ballistic_fixed_point(0.95, branch=2)


# ---------------------------------------------------------------------------
# eigenstructure
# ---------------------------------------------------------------------------

def test_eigen_at_center_leading_direction_flips_at_half():
    # below p = 1/2 the symmetric direction (1,1) decays slower; above,
    # the antisymmetric one (1,-1) takes over
    _, vecs = eigen_at(0.3, (1.0 / 3.0, 1.0 / 3.0))
    assert_allclose(vecs, [[1.0, 1.0], [1.0, -1.0]], atol=1e-14)
    _, vecs = eigen_at(0.6, (1.0 / 3.0, 1.0 / 3.0))
    assert_allclose(vecs, [[1.0, 1.0], [-1.0, 1.0]], atol=1e-14)
    vals, vecs = eigen_at(0.5, (1.0 / 3.0, 1.0 / 3.0))
    assert_allclose(vals, [-1.0, -1.0], atol=1e-15)
    assert_allclose(vecs, [[1.0, 1.0], [1.0, -1.0]], atol=0)


def test_eigen_at_lower_critical_leading_eigenvalue_is_exactly_minus_half():
    vals, _ = eigen_at(11.0 / 16.0, (1.0 / 3.0, 1.0 / 3.0))
    assert vals[0] == -0.5


def test_eigen_at_upper_critical_leading_eigenvalue_is_minus_half():
    p3 = P_CRITICAL_UPPER
    vals, _ = eigen_at(p3, ballistic_fixed_point(p3, +1))
    assert abs(vals[0] + 0.5) < 1e-10


def test_eigen_residuals_everywhere():
    rng = np.random.default_rng(17)
    grid = np.concatenate([rng.uniform(0.02, 0.98, 40), [0.6875, 0.875, P_CRITICAL_UPPER]])
    for p in grid:
        for rep in fixed_points(float(p)):
            jac = drift_jacobian(float(p), rep.location)
            res = jac @ rep.eigenvectors - rep.eigenvectors * rep.eigenvalues
            assert np.abs(res).max() < 1e-10


@pytest.mark.parametrize("p", [0.9, 0.93, 0.97])
def test_eigenvectors_on_mirror_branches_are_component_reciprocals(p):
    vals_plus, vecs_plus = eigen_at(p, ballistic_fixed_point(p, +1))
    vals_minus, vecs_minus = eigen_at(p, ballistic_fixed_point(p, -1))
    # same spectrum (the two Jacobians are similar via the swap)...
    assert_allclose(vals_plus, vals_minus, atol=1e-13)
    # ...but genuinely different eigenvectors, linked by (1, v) -> (1, 1/v)
    assert_allclose(vecs_minus[1], 1.0 / vecs_plus[1], rtol=1e-10)
    assert not np.allclose(vecs_minus[1], vecs_plus[1], atol=0.05)


def test_eigen_frozen_values_at_p09():
    vals, vecs = eigen_at(0.9, ballistic_fixed_point(0.9, +1))
    assert_allclose(vals, [-0.13446457824128222, -1.1155354217587194], atol=1e-12)
    assert_allclose(vecs[1], [-0.5260970511113688, 0.44075008676989325], atol=1e-12)


def test_eigenvalues_collapse_to_double_minus_one_toward_full_memory():
    vals, _ = eigen_at(1.0 - 1e-9, ballistic_fixed_point(1.0 - 1e-9, +1))
    assert_allclose(vals, [-1.0, -1.0], atol=1e-4)


def test_eigen_at_rejects_non_fixed_points():
    with pytest.raises(ValueError):
        eigen_at(0.5, (0.2, 0.2))


# ---------------------------------------------------------------------------
# ballistic speed
# ---------------------------------------------------------------------------

def test_speed_is_zero_below_onset_and_undefined_at_it():
    assert ballistic_speed(0.6) == 0.0
    assert ballistic_speed(0.2) == 0.0
    with pytest.raises(RegimeError):
        ballistic_speed(0.875)


def test_speed_frozen_values():
    assert_allclose(ballistic_speed(0.9), 0.5412658773652682, atol=1e-15)
    assert_allclose(ballistic_speed(0.95), 0.8553337321327795, atol=1e-15)
    assert_allclose(ballistic_speed(0.9), math.sqrt(0.12) / 0.64, atol=1e-14)


def test_speed_equals_component_gap_of_ballistic_point():
    for p in (0.88, 0.9, 0.95, 0.99):
        g = ballistic_fixed_point(p, +1)
        assert_allclose(ballistic_speed(p), g[0] - g[1], atol=1e-13)


def test_speed_limit_toward_full_memory_is_one():
    assert_allclose(ballistic_speed(1.0 - 1e-12), 1.0, atol=1e-5)


# ---------------------------------------------------------------------------
# CLT variance (diffusive interval and above the upper threshold)
# ---------------------------------------------------------------------------

def test_clt_variance_diffusive_closed_form():
    assert_allclose(clt_variance(0.5), 2.0 / 3.0, atol=1e-15)
    assert_allclose(clt_variance(0.6), 10.0 / 7.0, atol=1e-14)


def test_clt_variance_regime_guards():
    for p in (0.6875, 0.8, 0.875, 0.9, P_CRITICAL_UPPER):
        with pytest.raises(RegimeError):
            clt_variance(p)


def test_clt_variance_ballistic_matches_quadrature_oracle():
    # frozen from adaptive quadrature of the integral
    #   int_0^inf u' exp(tA) sigma exp(tA') u dt,  A = J + I/2
    frozen = {
        0.965: 1.4039488288665867,
        0.97: 0.5563910510028434,
        0.98: 0.14932806497489862,
        0.995: 0.013806215241593565,
    }
    for p, expected in frozen.items():
        assert_allclose(clt_variance(p), expected, rtol=1e-8)


def test_clt_variance_agrees_on_both_branches():
    for p in (0.962, 0.97, 0.985, 0.999):
        assert abs(clt_variance(p, +1) - clt_variance(p, -1)) < 1e-10


def test_clt_variance_diverges_approaching_upper_threshold():
    # the shifted Jacobian loses stability as p decreases to the upper
    # threshold, so the variance must blow up
    assert clt_variance(P_CRITICAL_UPPER + 1e-5) > 10.0
    assert clt_variance(P_CRITICAL_UPPER + 1e-5) > clt_variance(0.97) > clt_variance(0.995)


# ---------------------------------------------------------------------------
# log-corrected CLT variance at the two thresholds
# ---------------------------------------------------------------------------

def test_critical_variance_at_lower_threshold():
    value = critical_clt_variance(11.0 / 16.0)
    assert value == 2.0 / 3.0
    # identity: it equals the quadratic form u' sigma(center) u
    u = np.array([1.0, -1.0])
    assert_allclose(u @ noise_covariance((1.0 / 3.0, 1.0 / 3.0)) @ u, value, atol=1e-15)


def test_critical_variance_at_upper_threshold_frozen_and_branch_equal():
    p3 = P_CRITICAL_UPPER
    plus = critical_clt_variance(p3, +1)
    minus = critical_clt_variance(p3, -1)
    assert_allclose(plus, 0.6801174808476631, atol=1e-12)
    assert abs(plus - minus) < 1e-10


def test_critical_variance_rebuilt_from_raw_components():
    # same quantity assembled by hand from the eigen data
    p3 = P_CRITICAL_UPPER
    gamma = ballistic_fixed_point(p3, +1)
    _, vecs = eigen_at(p3, gamma)
    alpha, _ = eigen_weights(p3, +1)
    lead = vecs[:, 0]
    rebuilt = alpha * alpha * (lead @ noise_covariance(gamma) @ lead)
    assert_allclose(critical_clt_variance(p3, +1), rebuilt, atol=1e-14)


def test_critical_variance_regime_guards():
    for p in (0.5, 0.8, 0.875, 0.9, 0.99):
        with pytest.raises(RegimeError):
            critical_clt_variance(p)


# ---------------------------------------------------------------------------
# fluctuation exponent and variance growth exponent
# ---------------------------------------------------------------------------

def test_fluctuation_exponent_values():
    assert_allclose(fluctuation_exponent(0.8), 0.2, atol=1e-15)
    assert_allclose(fluctuation_exponent(0.9), 0.13446457824131383, atol=1e-14)


def test_fluctuation_exponent_equals_negated_leading_eigenvalue_on_upper_window():
    for p in (0.88, 0.9, 0.95):
        vals, _ = eigen_at(p, ballistic_fixed_point(p, +1))
        assert_allclose(fluctuation_exponent(p), -vals[0], atol=1e-13)


def test_fluctuation_exponent_limits_and_range():
    assert_allclose(fluctuation_exponent(0.6875 + 1e-9), 0.5, atol=1e-8)
    assert fluctuation_exponent(0.875 - 1e-9) < 1e-8
    assert fluctuation_exponent(0.875 + 1e-9) < 1e-4
    assert_allclose(fluctuation_exponent(P_CRITICAL_UPPER - 1e-7), 0.5, atol=1e-5)
    rng = np.random.default_rng(23)
    for p in rng.uniform(0.6875 + 1e-6, P_CRITICAL_UPPER - 1e-6, 100):
        if p == 0.875:
            continue
        assert 0.0 < fluctuation_exponent(float(p)) < 0.5


def test_fluctuation_exponent_regime_guards():
    for p in (0.5, 0.6875, 0.875, P_CRITICAL_UPPER, 0.98):
        with pytest.raises(RegimeError):
            fluctuation_exponent(p)


def test_variance_growth_exponent_piecewise():
    assert variance_growth_exponent(0.5) == 1.0
    assert_allclose(variance_growth_exponent(0.8), 1.6, atol=1e-15)
    assert variance_growth_exponent(0.9) == 2.0
    assert variance_growth_exponent(0.99) == 2.0


def test_variance_growth_exponent_is_continuous_across_thresholds():
    assert_allclose(variance_growth_exponent(0.6875 - 1e-9), variance_growth_exponent(0.6875 + 1e-9), atol=1e-8)
    assert_allclose(variance_growth_exponent(0.875 - 1e-9), variance_growth_exponent(0.875 + 1e-9), atol=1e-8)


def test_variance_growth_exponent_is_two_minus_twice_decay_exponent():
    rng = np.random.default_rng(29)
    for p in rng.uniform(0.6875 + 1e-6, 0.875 - 1e-6, 60):
        p = float(p)
        assert_allclose(variance_growth_exponent(p), 2.0 - 2.0 * fluctuation_exponent(p), atol=1e-14)


def test_variance_growth_exponent_threshold_guards():
    for p in (0.6875, 0.875, P_CRITICAL_UPPER):
        with pytest.raises(RegimeError):
            variance_growth_exponent(p)


# ---------------------------------------------------------------------------
# eigenbasis weights
# ---------------------------------------------------------------------------

def test_eigen_weights_reconstruct_position_direction():
    rng = np.random.default_rng(31)
    u = np.array([1.0, -1.0])
    for p in rng.uniform(0.8751, 0.9999, 50):
        p = float(p)
        for branch in (+1, -1):
            alpha, beta = eigen_weights(p, branch)
            assert alpha + beta == 1.0
            _, vecs = eigen_at(p, ballistic_fixed_point(p, branch))
            assert np.abs(alpha * vecs[:, 0] + beta * vecs[:, 1] - u).max() < 1e-10


def test_eigen_weights_frozen_at_p09():
    assert_allclose(eigen_weights(0.9, +1), [1.490152921098851, -0.4901529210988509], atol=1e-12)
    assert_allclose(eigen_weights(0.9, -1), [0.7839650574951524, 0.21603494250484756], atol=1e-12)


def test_eigen_weights_branches_linked_by_swap():
    # applying the coordinate swap to the expansion of (1,-1) gives
    # alpha_minus = -alpha_plus * v, with v the second component of the
    # leading eigenvector on the plus branch
    for p in (0.89, 0.93, 0.98):
        a_plus, _ = eigen_weights(p, +1)
        a_minus, _ = eigen_weights(p, -1)
        _, vecs = eigen_at(p, ballistic_fixed_point(p, +1))
        assert_allclose(a_minus, -a_plus * vecs[1, 0], atol=1e-12)


def test_eigen_weights_regime_guard():
    with pytest.raises(RegimeError):
        eigen_weights(0.8)
    with pytest.raises(RegimeError):
        eigen_weights(0.875)


# ---------------------------------------------------------------------------
# bundled constants
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "p, present, absent",
    [
        (0.5, {"speed", "clt_variance", "variance_growth_exponent"},
         {"critical_clt_variance", "fluctuation_exponent", "alpha", "beta"}),
        (0.6875, {"speed", "critical_clt_variance"},
         {"clt_variance", "fluctuation_exponent", "variance_growth_exponent"}),
        (0.8, {"speed", "fluctuation_exponent", "variance_growth_exponent"},
         {"clt_variance", "critical_clt_variance", "alpha"}),
        (0.875, set(), {"speed", "clt_variance", "critical_clt_variance",
                        "fluctuation_exponent", "variance_growth_exponent", "alpha", "beta"}),
        (0.9, {"speed", "fluctuation_exponent", "variance_growth_exponent", "alpha", "beta"},
         {"clt_variance", "critical_clt_variance"}),
        (P_CRITICAL_UPPER, {"speed", "critical_clt_variance", "alpha", "beta"},
         {"clt_variance", "fluctuation_exponent", "variance_growth_exponent"}),
        (0.98, {"speed", "clt_variance", "variance_growth_exponent", "alpha", "beta"},
         {"critical_clt_variance", "fluctuation_exponent"}),
    ],
)
def test_asymptotic_constants_populates_exactly_the_defined_fields(p, present, absent):
    table = AsymptoticConstants(p).as_dict()
    assert table["p"] == p
    assert set(table) >= present | {"p", "regime"}
    assert not (set(table) & absent)


def test_asymptotic_constants_match_free_functions():
    const = AsymptoticConstants(0.98)
    assert const.speed == ballistic_speed(0.98)
    assert const.clt_variance == clt_variance(0.98)
    assert const.alpha == eigen_weights(0.98)[0]
    with pytest.raises(RegimeError):
        const.fluctuation_exponent
