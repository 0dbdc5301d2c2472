"""Modular, Luxemburg norm and mixed sequence norms for L^{p(.)}((0, inf), dt/t)."""
import logging
import math
from dataclasses import dataclass

import numpy as np

from .grid import SampledFunction, integrate_between

__all__ = [
    "SampledFunction", "LuxemburgResult", "MixedNormInput", "ConvergenceError",
    "modular", "luxemburg_norm", "fixed_norm", "mixed_norm", "unit_ball_check",
]

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
MAX_ITER = 200
SATURATION = 1e300


class ConvergenceError(RuntimeError):
    """The bracketing/bisection solver could not locate the unit level."""


@dataclass(frozen=True)
class LuxemburgResult:
    norm: float
    modular_at_norm: float
    iterations: int
    bracket: tuple
    tolerance: float


def _modular_values(exponents, values, weights):
    with np.errstate(over="ignore", under="ignore"):
        integrand = np.power(values, exponents)
    total = float(np.dot(weights, integrand))
    if not math.isfinite(total) or total > SATURATION:
        return math.inf
    return total


def modular(p, f):
    """Integral of ``|f(t)|^{p(t)}`` dt/t; ``inf`` once it exceeds 1e300."""
    exponents = p(f.grid.nodes)
    return _modular_values(exponents, f.values, f.grid.log_weights)


def _solve_unit_level(rho, start, tol, max_iter=MAX_ITER):
    """Find ``lam`` with ``|rho(lam) - 1| <= tol`` for decreasing ``rho``.

    Doubles or halves from ``start`` until ``rho`` straddles 1, then bisects.
    Returns ``(lam, rho(lam), iterations, (lo, hi))``.
    """
    lam = start
    value = rho(lam)
    iterations = 1
    if abs(value - 1) <= tol:
        return lam, value, iterations, (lam, lam)
    if value > 1:
        lo = lam
        while True:
            lam *= 2
            value = rho(lam)
            iterations += 1
            if value <= 1:
                hi = lam
                break
            if iterations >= max_iter:
                raise ConvergenceError(
                    f"modular still {value!r} > 1 after {iterations} doublings")
            lo = lam
    else:
        hi = lam
        while True:
            lam /= 2
            value = rho(lam)
            iterations += 1
            if value >= 1:
                lo = lam
                break
            if iterations >= max_iter:
                raise ConvergenceError(
                    f"modular still {value!r} < 1 after {iterations} halvings")
            hi = lam
    if abs(value - 1) <= tol:
        return lam, value, iterations, (lo, hi)
    while iterations < max_iter:
        mid = 0.5 * (lo + hi)
        value = rho(mid)
        iterations += 1
        if abs(value - 1) <= tol:
            return mid, value, iterations, (lo, hi)
        if value > 1:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        f"no convergence in {max_iter} iterations; bracket [{lo!r}, {hi!r}], last residual {value - 1:.3e}")


def _luxemburg_arrays(exponents, values, weights, tol):
    if not values.any():
        return LuxemburgResult(0.0, 0.0, 0, (0.0, 0.0), tol)
    p_plus = float(np.max(exponents))
    # fixed-exponent estimate at p_plus as the starting scale
    with np.errstate(over="ignore", under="ignore"):
        start = float(np.dot(weights, np.power(values, p_plus))) ** (1.0 / p_plus)
    if not (math.isfinite(start) and start > 0):
        start = float(values.max())

    def rho(lam):
        return _modular_values(exponents, values / lam, weights)

    lam, value, iterations, bracket = _solve_unit_level(rho, start, tol)
    return LuxemburgResult(lam, value, iterations, bracket, tol)


def luxemburg_norm(p, f, tol=DEFAULT_TOL):
    """inf{lam > 0 : modular(f / lam) <= 1}, solved to ``|modular - 1| <= tol``."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    return _luxemburg_arrays(p(f.grid.nodes), f.values, f.grid.log_weights, tol)


def fixed_norm(q, f, a=None, b=None):
    """``(integral_a^b f^q dt/t)^{1/q}`` for a fixed exponent ``q >= 1``."""
    if q < 1:
        raise ValueError(f"fixed exponent must be >= 1, got {q!r}")
    grid = f.grid
    a = grid.bottom if a is None else a
    b = grid.top if b is None else b
    with np.errstate(over="ignore", under="ignore"):
        powered = np.power(f.values, q)
    return integrate_between(grid, powered, a, b) ** (1.0 / q)


@dataclass(frozen=True, eq=False)
class MixedNormInput:
    """Blocks ``(f_v)`` for the mixed space with outer ``q`` and inner ``p``.

    ``blocks`` maps the block index ``v`` to a sampled function; all blocks
    must live on one grid.
    """

    outer_exponent: object
    inner_exponent: object
    blocks: dict

    def __post_init__(self):
        grids = [f.grid for f in self.blocks.values()]
        if grids and not all(g.same_as(grids[0]) for g in grids):
            raise ValueError("all blocks must share one grid")


def dyadic_blocks(f, v_range=None):
    """Split ``f`` into ``f * chi_[2^v, 2^{v+1}]`` for each octave ``v``."""
    grid = f.grid
    npo = grid.nodes_per_octave
    lo, hi = v_range if v_range is not None else (grid.v_min, grid.v_max)
    blocks = {}
    for v in range(lo, hi):
        start = (v - grid.v_min) * npo
        values = np.zeros(grid.size)
        values[start:start + npo + 1] = f.values[start:start + npo + 1]
        blocks[v] = SampledFunction(grid, values)
    return blocks


def mixed_norm(data, tol=DEFAULT_TOL):
    """Norm of ``(f_v)`` in the mixed sequence space.

    Uses the modular ``sum_v || |f_v / mu|^{q(.)} ||_{p(.)/q(.)}`` (valid as
    q is bounded on the grid) and solves ``modular(mu) = 1`` by bracketing
    and bisection. Inner norms are Luxemburg norms restricted to each block's
    support; zero blocks contribute nothing.
    """
    blocks = [f for f in data.blocks.values() if not f.is_zero()]
    if not blocks:
        return 0.0
    grid = blocks[0].grid
    q_all = data.outer_exponent(grid.nodes)
    p_all = data.inner_exponent(grid.nodes)
    ratio_all = p_all / q_all
    if (ratio_all < 1).any():
        log.info("inner exponent p/q drops to %.4g < 1; solving the quasi-norm level anyway",
                 ratio_all.min())
    inner_tol = tol / 10
    pieces = []
    for f in blocks:
        idx = np.flatnonzero(f.values > 0)
        lo, hi = max(idx[0] - 1, 0), min(idx[-1] + 1, grid.size - 1)
        sl = slice(lo, hi + 1)
        pieces.append((f.values[sl], q_all[sl], ratio_all[sl], _slice_weights(grid, lo, hi)))

    def rho(mu):
        total = 0.0
        for values, q, ratio, weights in pieces:
            with np.errstate(over="ignore", under="ignore"):
                powered = np.power(values / mu, q)
            if not np.isfinite(powered).all():
                return math.inf
            total += _luxemburg_arrays(ratio, powered, weights, inner_tol).norm
            if total > SATURATION:
                return math.inf
        return total

    start = max(float(f.values.max()) for f in blocks)
    mu, _, _, _ = _solve_unit_level(rho, start, tol)
    return mu


def _slice_weights(grid, lo, hi):
    """Quadrature weights of the full grid restricted to nodes ``lo..hi``.

    Values outside the slice are zero, so interior weights stay ``h`` and the
    slice reproduces the full-grid integral exactly.
    """
    return grid.log_weights[lo:hi + 1]


def unit_ball_check(p, f, tol=DEFAULT_TOL):
    """True iff norm and modular fall on the same side of 1 (within ``tol``)."""
    norm = luxemburg_norm(p, f, tol=min(tol, DEFAULT_TOL)).norm
    rho = modular(p, f)
    inside = norm <= 1 + tol and rho <= 1 + tol
    outside = norm >= 1 - tol and rho >= 1 - tol
    return bool(inside or outside)


def fixed_norm_split(p_zero, p_inf, f, split=1.0):
    """Two-term fixed-exponent value: p(0)-norm below ``split`` plus p_inf-norm above."""
    g = f.grid
    below = fixed_norm(p_zero, f, g.bottom, split) if split > g.bottom else 0.0
    above = fixed_norm(p_inf, f, split, g.top) if split < g.top else 0.0
    return below + above
