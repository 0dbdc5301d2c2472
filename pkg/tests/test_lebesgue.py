import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from varhardy.exponent import make_family, parse_exponent
from varhardy.functions import TestFunction, parse_function
from varhardy.grid import SampledFunction, build
from varhardy.lebesgue import (
    ConvergenceError, MixedNormInput, _solve_unit_level, dyadic_blocks, fixed_norm,
    fixed_norm_split, luxemburg_norm, mixed_norm, modular, unit_ball_check,
)

import oracles

GRID = build()
EXPONENTS = ["const(1.0)", "const(2.5)", "loginterp(3,2)", "loginterp(1.2,4)",
             "logpert(3,2,0.5,0)", "step(1.5,3,1)"]
SOURCES = ["powerpeak(0.5,0.5)", "indicator(-2,2)", "logosc(0.5)", "stairs(0.7)"]


def test_zero_function():
    p = make_family("loginterp", (3, 2))
    f = SampledFunction(GRID, np.zeros(GRID.size))
    assert modular(p, f) == 0.0
    assert luxemburg_norm(p, f).norm == 0.0


def test_modular_of_truncated_linear():
    # end-derivative trapezoid error is h^2 / 6, so use 16 nodes per octave
    g = build(-30, 0, 16)
    f = SampledFunction(g, g.nodes.copy())
    assert abs(modular(make_family("const", (2,)), f) - 0.5) < 1e-3


@pytest.mark.parametrize("q", [1.0, 1.7, 3.0])
def test_modular_homogeneity_constant_exponent(q):
    f = TestFunction("powerpeak", (0.5, 0.5)).sample(GRID)
    p = make_family("const", (q,))
    assert math.isclose(modular(p, f * 3.0), 3.0 ** q * modular(p, f), rel_tol=1e-13)


def test_single_octave_indicator_norm():
    g = build(-3, 3, 8)
    values = np.zeros(g.size)
    values[g.index_of(1.0):g.index_of(2.0) + 1] = 1.0
    f = SampledFunction(g, values)
    # on the node-sampled indicator the step edges ramp over one panel each
    mass = math.log(2) + g.step
    norm = luxemburg_norm(make_family("const", (2,)), f).norm
    assert abs(norm - math.sqrt(mass)) < 1e-8
    # the half-value convention integrates the step exactly at q = 1
    h = TestFunction("indicator", (0, 1)).sample(g)
    assert abs(fixed_norm(1.0, h) - math.log(2)) < 1e-14
    assert abs(luxemburg_norm(make_family("const", (2,)), h).norm
               - math.sqrt(math.log(2) - g.step / 2)) < 1e-8


@pytest.mark.parametrize("q", [1.0, 1.5, 2.0, 3.0])
@pytest.mark.parametrize("src", SOURCES)
def test_constant_exponent_reduces_to_fixed_norm(q, src):
    f = parse_function(src).sample(GRID)
    lux = luxemburg_norm(make_family("const", (q,)), f).norm
    assert abs(lux - fixed_norm(q, f)) <= 1e-6 * fixed_norm(q, f)


def test_luxemburg_against_quadrature_oracle():
    # variable exponent, smooth input: compare with quad + brentq
    p = make_family("loginterp", (3, 2))
    fn = lambda t: min(t, 1 / t) ** 0.5
    ref = oracles.luxemburg_quad(lambda t: p(t), fn, 2.0 ** -30, 2.0 ** 30, breaks=(1.0,))
    got = luxemburg_norm(p, TestFunction("powerpeak", (0.5, 0.5)).sample(build(-30, 30, 32))).norm
    assert abs(got / ref - 1) < 1e-4


def test_fixed_norm_power_on_unit_interval():
    g = build(-30, 0, 32)
    for alpha, q in ((0.5, 2.0), (1.0, 1.5), (0.25, 3.0)):
        f = SampledFunction(g, g.nodes ** alpha)
        expected = (1 / (alpha * q)) ** (1 / q)
        assert abs(fixed_norm(q, f) / expected - 1) < 1e-3


def test_fixed_norm_constant_and_q_one():
    g = build(-10, 10, 8)
    one = SampledFunction(g, np.ones(g.size))
    assert abs(fixed_norm(2.0, one, 1.0, g.top) - math.sqrt(10 * math.log(2))) < 1e-12
    f = TestFunction("logosc", (0.5,)).sample(g)
    assert abs(fixed_norm(1.0, f) - float(np.dot(g.log_weights, f.values))) < 1e-13
    with pytest.raises(ValueError):
        fixed_norm(0.5, f)


def test_solver_raises_on_unreachable_level():
    with pytest.raises(ConvergenceError):
        _solve_unit_level(lambda lam: 2.0, 1.0, 1e-8)


def test_solver_contract_and_bracket():
    f = TestFunction("logosc", (0.5,)).sample(GRID)
    for text in EXPONENTS:
        res = luxemburg_norm(parse_exponent(text), f)
        assert abs(res.modular_at_norm - 1) <= res.tolerance
        lo, hi = res.bracket
        assert lo <= res.norm <= hi
        assert res.iterations <= 200


def test_saturation_counts_as_infinite():
    f = SampledFunction(GRID, np.full(GRID.size, 1e200))
    assert modular(make_family("const", (3,)), f) == math.inf
    assert luxemburg_norm(make_family("const", (3,)), f).norm > 1e199


@given(st.sampled_from(EXPONENTS), st.sampled_from(SOURCES), st.floats(1e-3, 1e3))
@settings(max_examples=60, deadline=None)
def test_norm_is_homogeneous(text, src, c):
    p = parse_exponent(text)
    f = parse_function(src).sample(GRID)
    tol = 1e-10
    a = luxemburg_norm(p, f, tol).norm
    b = luxemburg_norm(p, f * c, tol).norm
    # the modular residual tol translates into a relative norm error <= tol / p_minus
    assert abs(b - c * a) <= 2 * tol * c * a


@given(st.sampled_from(EXPONENTS), st.integers(0, 2 ** 31 - 1))
@settings(max_examples=60, deadline=None)
def test_norm_and_modular_are_monotone(text, seed):
    p = parse_exponent(text)
    rng = np.random.default_rng(seed)
    g = build(-6, 6, 4)
    f = rng.random(g.size)
    bigger = f + rng.random(g.size)
    small, big = SampledFunction(g, f), SampledFunction(g, bigger)
    assert modular(p, small) <= modular(p, big)
    tol = 1e-10
    assert luxemburg_norm(p, small, tol).norm <= luxemburg_norm(p, big, tol).norm * (1 + 2 * tol)


@given(st.sampled_from(EXPONENTS), st.sampled_from(SOURCES), st.floats(-3, 3))
@settings(max_examples=100, deadline=None)
def test_unit_ball_property(text, src, log_scale):
    f = parse_function(src).sample(GRID) * 10.0 ** log_scale
    assert unit_ball_check(parse_exponent(text), f)


def test_unit_ball_examples():
    p = make_family("const", (2,))
    assert unit_ball_check(p, SampledFunction(GRID, np.zeros(GRID.size)))
    f = TestFunction("powerpeak", (0.5, 0.5)).sample(GRID)
    calibrated = f / math.sqrt(modular(p, f))
    assert abs(modular(p, calibrated) - 1) < 1e-14
    assert abs(luxemburg_norm(p, calibrated).norm - 1) < 1e-8
    assert unit_ball_check(p, calibrated)


def test_mixed_norm_single_block_is_fixed_norm():
    f = TestFunction("powerpeak", (0.5, 0.5)).sample(GRID)
    block = dyadic_blocks(f, (0, 1))
    q = make_family("const", (2,))
    got = mixed_norm(MixedNormInput(q, q, block))
    assert abs(got / fixed_norm(2.0, block[0]) - 1) < 1e-7


def test_mixed_norm_constant_exponents_match_closed_form():
    # for constant p, q the mixed norm is the l^q sum of block L^p norms
    f = TestFunction("logosc", (0.5,)).sample(build(-12, 12, 8))
    blocks = dyadic_blocks(f)
    got = mixed_norm(MixedNormInput(make_family("const", (2,)), make_family("const", (3,)), blocks))
    expected = sum(fixed_norm(3.0, b) ** 2 for b in blocks.values()) ** 0.5
    assert abs(got / expected - 1) < 1e-7


def test_mixed_norm_tracks_luxemburg_under_refinement():
    p = make_family("loginterp", (3, 2))
    ratios = []
    for npo in (8, 16):
        g = build(-20, 20, npo)
        f = TestFunction("powerpeak", (0.5, 0.5)).sample(g)
        ratios.append(mixed_norm(MixedNormInput(p, p, dyadic_blocks(f)))
                      / luxemburg_norm(p, f).norm)
    assert all(0.5 < r < 2 for r in ratios)
    assert abs(ratios[1] / ratios[0] - 1) < 0.05


def test_mixed_norm_zero_blocks_and_sub_unit_inner_exponent():
    g = build(-4, 4, 4)
    zero = SampledFunction(g, np.zeros(g.size))
    q = make_family("const", (2,))
    assert mixed_norm(MixedNormInput(q, q, {0: zero, 1: zero})) == 0.0
    f = TestFunction("powerpeak", (0.5, 0.5)).sample(g)
    blocks = dyadic_blocks(f)
    blocks[7] = zero
    # inner exponent p/q = 1.5/3 < 1: still solved, finite and positive
    value = mixed_norm(MixedNormInput(make_family("const", (3,)),
                                      make_family("const", (1.5,)), blocks))
    assert 0 < value < math.inf


def test_fixed_norm_split_adds_two_sides():
    f = TestFunction("powerpeak", (0.5, 0.5)).sample(GRID)
    value = fixed_norm_split(3.0, 2.0, f)
    expected = fixed_norm(3.0, f, GRID.bottom, 1.0) + fixed_norm(2.0, f, 1.0, GRID.top)
    assert value == expected
