import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from varhardy.exponent import make_family
from varhardy.functions import TestFunction
from varhardy.grid import SampledFunction, build, integrate_between
from varhardy.hardy import (
    DiscreteHardyParams, HardyParams, Lemma22Spec, Variant, discrete_hardy_check,
    discrete_hardy_transform, eta, eta_unit, lam, lemma22_check, power_monotone_profiles,
    young_constant,
)

import oracles


def test_params_validation():
    with pytest.raises(ValueError):
        HardyParams(0.0)
    with pytest.raises(ValueError):
        DiscreteHardyParams(1.0, 0, 1, (0, 3))
    with pytest.raises(ValueError):
        DiscreteHardyParams(0.5, -1, 1, (0, 3))
    with pytest.raises(ValueError):
        DiscreteHardyParams(0.5, 0, 1, (3, 0))


def test_operators_on_zero_and_end_nodes():
    g = build(-10, 10, 4)
    zero = SampledFunction(g, np.zeros(g.size))
    assert not eta(1.0, zero).values.any()
    assert not lam(1.0, zero).values.any()
    f = TestFunction("logosc", (0.5,)).sample(g)
    assert eta(1.0, f).values[-1] == 0.0
    assert lam(1.0, f).values[0] == 0.0


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_operators_match_brute_force(s):
    g = build(-6, 6, 4)
    f = TestFunction("logosc", (0.5,)).sample(g)
    t, h = oracles.log_nodes(-6, 6, 4)
    assert np.allclose(eta(s, f).values, oracles.eta_brute(t, h, f.values, s), rtol=1e-12, atol=0)
    assert np.allclose(lam(s, f).values, oracles.lam_brute(t, h, f.values, s), rtol=1e-12, atol=0)


def test_power_closed_forms_improve_under_refinement():
    alpha, s = 0.5, 2.0
    errs = []
    for npo in (4, 8, 16):
        g = build(-30, 30, npo)
        band = (g.nodes >= 2.0 ** -20) & (g.nodes <= 2.0 ** 20)
        out = lam(s, TestFunction("power", (alpha,)).sample(g)).values
        exact = g.nodes ** alpha / (s + alpha)
        errs.append(np.max(np.abs(out[band] / exact[band] - 1)))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-3


def test_eta_unit_examples():
    g = build(-20, 4, 64)
    one = SampledFunction(g, np.ones(g.size))
    out = eta_unit(1.0, one).values
    t = g.nodes
    below = t <= 1
    assert np.max(np.abs(out[below] - (1 - t[below]))) < 1e-3
    assert out[g.index_of(1.0)] == 0.0
    assert not out[~below].any()
    s = 1.5
    f = SampledFunction(g, np.minimum(t, 1.0) ** s)
    got = eta_unit(s, f).values[below]
    assert np.allclose(got, t[below] ** s * np.log(1 / t[below]), rtol=1e-12, atol=1e-15)


def test_eta_unit_needs_node_one():
    g = build(1, 4, 4)
    with pytest.raises(ValueError):
        eta_unit(1.0, SampledFunction(g, np.ones(g.size)))


@given(st.floats(0.1, 3.0), st.floats(0.1, 10.0), st.integers(0, 2 ** 31 - 1))
@settings(max_examples=50, deadline=None)
def test_linearity(s, c, seed):
    g = build(-5, 5, 4)
    rng = np.random.default_rng(seed)
    a = SampledFunction(g, rng.random(g.size))
    b = SampledFunction(g, rng.random(g.size))
    for op in (eta, lam, eta_unit):
        assert np.allclose(op(s, a + b).values, op(s, a).values + op(s, b).values, rtol=1e-12)
        assert np.allclose(op(s, a * c).values, c * op(s, a).values, rtol=1e-12)


@given(st.floats(0.1, 3.0), st.integers(0, 2 ** 31 - 1))
@settings(max_examples=100, deadline=None)
def test_power_weighted_profiles_are_monotone(s, seed):
    g = build(-8, 8, 4)
    rng = np.random.default_rng(seed)
    f = SampledFunction(g, rng.random(g.size) * (rng.random(g.size) < 0.7))
    down, up = power_monotone_profiles(s, eta(s, f), lam(s, f))
    assert np.all(np.diff(down) <= 1e-12 * np.abs(down[:-1]))
    assert np.all(np.diff(up) >= -1e-12 * np.abs(up[1:]))


def test_discrete_transform_small_windows():
    assert discrete_hardy_transform(DiscreteHardyParams(0.5, 1.0, 1, (0, 0)), [3.0]).tolist() == [0.0]
    assert discrete_hardy_transform(DiscreteHardyParams(0.5, 0.0, 1, (0, 0)), [3.0]).tolist() == [3.0]
    out = discrete_hardy_transform(DiscreteHardyParams(0.5, 0.0, 1, (-1, 1)), np.ones(3))
    assert out[1] == 2.0
    with pytest.raises(ValueError):
        discrete_hardy_transform(DiscreteHardyParams(0.5, 0.0, 1, (-1, 1)), np.ones(4))


@pytest.mark.parametrize("a", [0.3, 0.5, 0.7])
def test_spike_is_tight(a):
    n = 80
    eps = np.zeros(2 * n + 1)
    eps[n] = 1.0
    lhs, rhs, ratio = discrete_hardy_check(DiscreteHardyParams(a, 0.0, 1.0, (-n, n)), eps)
    assert math.isclose(rhs, (1 + a) / (1 - a), rel_tol=1e-14)
    assert math.isclose(lhs, (1 + a) / (1 - a), rel_tol=1e-12)
    assert ratio <= 1.0 and ratio > 1 - 1e-12


def test_constant_input_sup_norm_approaches_one():
    ratios = []
    for n in (5, 20, 80):
        params = DiscreteHardyParams(0.5, 1.0, math.inf, (-n, n))
        ratios.append(discrete_hardy_check(params, np.ones(2 * n + 1))[2])
    assert ratios[0] < ratios[1] < ratios[2] <= 1.0
    assert ratios[2] > 1 - 1e-12


def test_young_constant_closed_forms():
    a = 0.4
    assert math.isclose(young_constant(a, 0, 1), (1 + a) / (1 - a), rel_tol=1e-14)
    # sum over m != 0 of |m| a^|m| = 2 a / (1 - a)^2
    assert math.isclose(young_constant(a, 1, 2), 2 * a / (1 - a) ** 2, rel_tol=1e-14)
    assert math.isclose(young_constant(a, 0, 0.5), ((1 + a ** 0.5) / (1 - a ** 0.5)) ** 2,
                        rel_tol=1e-13)


def test_random_sequences_respect_bound():
    rng = np.random.default_rng(5)
    params = DiscreteHardyParams(0.5, 0.0, 2.0, (-15, 15))
    _, _, ratio = discrete_hardy_check(params, rng.random((1000, 31)))
    assert np.all(ratio <= 1.0)


@given(st.floats(0.05, 0.95), st.sampled_from([0.0, 0.5, 1.0, 2.0]),
       st.sampled_from([0.3, 0.5, 1.0, 1.5, 2.0, 4.0, math.inf]),
       st.lists(st.floats(0.0, 1e6), min_size=1, max_size=30))
@settings(max_examples=200, deadline=None)
def test_discrete_bound_property(a, sigma, p, eps):
    params = DiscreteHardyParams(a, sigma, p, (0, len(eps) - 1))
    assert discrete_hardy_check(params, eps)[2] <= 1.0 + 1e-12


def test_discrete_rejects_negative_entries():
    with pytest.raises(ValueError):
        discrete_hardy_check(DiscreteHardyParams(0.5, 0.0, 1.0, (0, 1)), [1.0, -1.0])


GRID = build(-24, 24, 8)


def test_lemma22_constant_exponent_first_term_suffices():
    p = make_family("const", (2.5,))
    rng = np.random.default_rng(1)
    f = SampledFunction(GRID, rng.random(GRID.size))
    spec = Lemma22Spec(2.0 ** -3, 2.0 ** 2, 1.5, Variant.ORIGIN_PY)
    rep = lemma22_check(p, spec, f)
    assert rep.gamma == 1.0
    dy = GRID.nodes
    mean_fc = (integrate_between(GRID, f.values ** 2.5 * dy, spec.a, spec.b)
               / integrate_between(GRID, dy, spec.a, spec.b))
    assert np.all(rep.lhs <= mean_fc * (1 + 1e-13))


def test_lemma22_flat_input_origin_py():
    p = make_family("loginterp", (3, 2))
    f = SampledFunction(GRID, np.ones(GRID.size))
    rep = lemma22_check(p, Lemma22Spec(0.5, 2.0, 2.0, Variant.ORIGIN_PY), f)
    assert rep.min_margin >= 0
    assert 0 < rep.gamma < 1
    assert abs(rep.weight_mass - 1.5) < 1e-2


def test_lemma22_rejects_unnormalised_input():
    p = make_family("loginterp", (3, 2))
    f = SampledFunction(GRID, np.full(GRID.size, 10.0))
    with pytest.raises(ValueError):
        lemma22_check(p, Lemma22Spec(0.5, 2.0, 2.0, Variant.ORIGIN_PY), f)


def test_lemma22_spec_validation():
    with pytest.raises(ValueError):
        Lemma22Spec(2.0, 1.0, 1.0, Variant.INFINITY)
    with pytest.raises(ValueError):
        Lemma22Spec(1.0, 2.0, 0.0, Variant.INFINITY)
    with pytest.raises(ValueError):
        Lemma22Spec(1.0, 2.0, 1.0, Variant.INFINITY, gamma=1.5)


@given(st.floats(1.2, 4.0), st.floats(1.2, 4.0), st.floats(0.0, 0.5),
       st.floats(0.0, 2 * math.pi), st.integers(-20, 14), st.integers(1, 6),
       st.floats(0.25, 4.0), st.sampled_from(list(Variant)), st.integers(0, 2 ** 31 - 1))
@settings(max_examples=150, deadline=None)
def test_lemma22_margins_nonnegative(p0, pinf, amp, phase, v, width, m, variant, seed):
    p = make_family("logpert", (p0, pinf, amp, phase))
    f = SampledFunction(GRID, np.random.default_rng(seed).random(GRID.size))
    spec = Lemma22Spec(2.0 ** v, 2.0 ** (v + width), m, variant)
    rep = lemma22_check(p, spec, f)
    assert rep.min_margin >= -1e-10
