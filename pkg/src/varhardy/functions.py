"""Closed-form input functions on (0, inf), sampled onto log grids.

Jumps are only placed at octave boundaries, which are always grid nodes.
At a jump node the sample is the mean of the two one-sided values, so the
trapezoid rule integrates the step exactly.
"""
from dataclasses import dataclass

import numpy as np

from . import _descriptor
from .grid import SampledFunction

_ARITY = {
    "zero": 0,
    "const": 1,
    "power": 1,
    "powerpeak": 2,
    "indicator": 2,
    "logosc": 1,
    "stairs": 1,
    "stairdown": 1,
    "stairup": 1,
}

# families with closed forms that are monotone in t
NON_INCREASING = {"stairdown"}
NON_DECREASING = {"stairup"}


def _octave_values(grid, level):
    """Sample a function that equals ``level(v)`` on each octave ``[2^v, 2^{v+1})``."""
    k = grid.log_index
    npo = grid.nodes_per_octave
    v = np.floor_divide(k, npo)
    values = level(v.astype(float))
    boundary = k % npo == 0
    values = np.where(boundary, 0.5 * (values + level(v - 1.0)), values)
    return values


@dataclass(frozen=True)
class TestFunction:
    """A named closed-form function that can be resampled on any grid.

    ========== ========== ================================================
    name       params     value at t
    ========== ========== ================================================
    zero       ()         0
    const      (c,)       c
    power      (a,)       t^a
    powerpeak  (a, b)     min(t^a, t^-b)
    indicator  (v0, v1)   1 on [2^v0, 2^v1]
    logosc     (g,)       (1 + sin(ln t)) min(t, 1/t)^g
    stairs     (r,)       r^|v| on octave v
    stairdown  (r,)       1 for t < 1, r^v on octave v >= 0
    stairup    (r,)       r^-v on octave v < 0, 1 for t >= 1
    ========== ========== ================================================
    """

    __test__ = False  # not a pytest class

    name: str
    params: tuple = ()

    def __post_init__(self):
        if self.name not in _ARITY:
            raise ValueError(f"unknown function family {self.name!r} (known: {', '.join(_ARITY)})")
        params = tuple(float(x) for x in self.params)
        if len(params) != _ARITY[self.name]:
            raise ValueError(f"{self.name} takes {_ARITY[self.name]} parameters, got {len(params)}")
        if self.name == "indicator" and not (params[0] < params[1] and all(x == int(x) for x in params)):
            raise ValueError("indicator needs integer octaves v0 < v1")
        if self.name.startswith("stair") and not 0 < params[0] <= 1:
            raise ValueError("staircase ratio must lie in (0, 1]")
        if self.name in ("powerpeak",) and min(params) <= 0:
            raise ValueError("powerpeak exponents must be positive")
        object.__setattr__(self, "params", params)

    def describe(self):
        if not self.params:
            return self.name
        return _descriptor.format(self.name, self.params)

    def sample(self, grid):
        t = grid.nodes
        name, pr = self.name, self.params
        if name == "zero":
            values = np.zeros(grid.size)
        elif name == "const":
            values = np.full(grid.size, pr[0])
        elif name == "power":
            values = t ** pr[0]
        elif name == "powerpeak":
            values = np.minimum(t ** pr[0], t ** -pr[1])
        elif name == "indicator":
            v0, v1 = pr
            values = _octave_values(grid, lambda v: ((v >= v0) & (v < v1)).astype(float))
        elif name == "logosc":
            values = (1 + np.sin(np.log(t))) * np.minimum(t, 1 / t) ** pr[0]
        elif name == "stairs":
            values = _octave_values(grid, lambda v: pr[0] ** np.abs(v))
        elif name == "stairdown":
            values = _octave_values(grid, lambda v: pr[0] ** np.maximum(v, 0))
        else:
            values = _octave_values(grid, lambda v: pr[0] ** np.maximum(-v, 0))
        return SampledFunction(grid, values)

    def monotonicity(self):
        if self.name in NON_INCREASING:
            return "non-increasing"
        if self.name in NON_DECREASING:
            return "non-decreasing"
        if self.name in ("zero", "const"):
            return "constant"
        return None


def parse_function(text):
    name, params = _descriptor.parse(text)
    return TestFunction(name, tuple(params))


class SampledSource:
    """Adapter giving an already-sampled function the ``sample(grid)`` interface.

    Only the original grid is available, so refinement and tail diagnostics
    are reported as NaN for such inputs.
    """

    def __init__(self, f, label="sampled"):
        self.f = f
        self.label = label

    def describe(self):
        return self.label

    def sample(self, grid):
        if not grid.same_as(self.f.grid):
            raise LookupError("sampled input cannot be resampled")
        return self.f
