"""Logarithmic grids on (0, inf) and trapezoid quadrature against dt/t.

In the variable ``u = ln t`` the Haar measure dt/t becomes Lebesgue measure,
so every integral here is a composite trapezoid rule with constant step
``ln 2 / nodes_per_octave`` in ``u``. Nodes with log-index ``k`` sit at
``2 ** (k / nodes_per_octave)``; octave boundaries ``2 ** v`` are always
nodes and are exact powers of two.
"""
from dataclasses import dataclass, field

import numpy as np

from . import _descriptor

DEFAULT_V_MIN = -30
DEFAULT_V_MAX = 30
DEFAULT_NODES_PER_OCTAVE = 8


@dataclass(frozen=True, eq=False)
class LogGrid:
    v_min: int
    v_max: int
    nodes_per_octave: int
    nodes: np.ndarray = field(repr=False)
    log_weights: np.ndarray = field(repr=False)

    @property
    def step(self):
        """Spacing in ``u = ln t``."""
        return np.log(2.0) / self.nodes_per_octave

    @property
    def size(self):
        return self.nodes.size

    @property
    def log_index(self):
        """Integer ``k`` with ``node = 2 ** (k / nodes_per_octave)``."""
        npo = self.nodes_per_octave
        return np.arange(self.v_min * npo, self.v_max * npo + 1)

    @property
    def bottom(self):
        return float(self.nodes[0])

    @property
    def top(self):
        return float(self.nodes[-1])

    def describe(self):
        return f"grid({self.v_min},{self.v_max},{self.nodes_per_octave})"

    def same_as(self, other):
        return (self.v_min, self.v_max, self.nodes_per_octave) == (
            other.v_min, other.v_max, other.nodes_per_octave)

    def index_of(self, t, rtol=1e-9):
        """Index of node ``t``; raises if ``t`` is not (close to) a node."""
        i = self.nearest_index(t)
        if abs(self.nodes[i] - t) > rtol * t:
            raise ValueError(f"{t!r} is not a node of {self.describe()}; snap it first")
        return i

    def nearest_index(self, t):
        if not np.isfinite(t) or t <= 0:
            raise ValueError(f"expected a positive finite point, got {t!r}")
        k = np.rint(np.log2(t) * self.nodes_per_octave) - self.v_min * self.nodes_per_octave
        return int(np.clip(k, 0, self.size - 1))

    def snap(self, t):
        """Nearest node to ``t`` in log distance."""
        return float(self.nodes[self.nearest_index(t)])

    def restrict(self, v_lo, v_hi):
        """Sub-grid on ``[2**v_lo, 2**v_hi]`` (same nodes, fresh end weights)."""
        if not (self.v_min <= v_lo < v_hi <= self.v_max):
            raise ValueError(
                f"octave range [{v_lo}, {v_hi}] not inside {self.describe()}")
        return build(v_lo, v_hi, self.nodes_per_octave)

    def refined(self):
        return build(self.v_min, self.v_max, 2 * self.nodes_per_octave)

    def extended(self, octaves):
        return build(self.v_min - octaves, self.v_max + octaves, self.nodes_per_octave)


def build(v_min=DEFAULT_V_MIN, v_max=DEFAULT_V_MAX, nodes_per_octave=DEFAULT_NODES_PER_OCTAVE):
    """Build the grid ``2**v_min = t_0 < ... < t_n = 2**v_max``.

    Has ``(v_max - v_min) * nodes_per_octave + 1`` nodes and composite
    trapezoid weights in ``u = ln t`` whose sum is ``(v_max - v_min) ln 2``.
    """
    if int(v_min) != v_min or int(v_max) != v_max or int(nodes_per_octave) != nodes_per_octave:
        raise ValueError("grid bounds and subdivisions must be integers")
    v_min, v_max, npo = int(v_min), int(v_max), int(nodes_per_octave)
    if v_min >= v_max:
        raise ValueError(f"need v_min < v_max, got {v_min} >= {v_max}")
    if npo < 1:
        raise ValueError(f"nodes_per_octave must be >= 1, got {npo}")
    k = np.arange(v_min * npo, v_max * npo + 1)
    # k / npo is the correctly rounded rational, so refined and extended
    # grids reproduce these nodes bit for bit.
    nodes = np.exp2(k / npo)
    h = np.log(2.0) / npo
    weights = np.full(k.size, h)
    weights[0] = weights[-1] = h / 2
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return LogGrid(v_min, v_max, npo, nodes, weights)


def parse_grid(text):
    name, params = _descriptor.parse(text)
    if name != "grid" or len(params) != 3:
        raise ValueError(f"expected grid(v_min,v_max,nodes_per_octave), got {text!r}")
    return build(*params)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Nonnegative values attached to the nodes of one grid."""

    grid: LogGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != self.grid.nodes.shape:
            raise ValueError(
                f"{values.size} samples for a grid with {self.grid.size} nodes")
        if np.isnan(values).any():
            raise ValueError("samples contain NaN")
        if not np.isfinite(values).all():
            raise ValueError("samples must be finite")
        if (values < 0).any():
            raise ValueError("samples must be nonnegative")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grid, fn):
        return cls(grid, fn(grid.nodes))

    def is_zero(self):
        return not self.values.any()

    def restrict(self, v_lo, v_hi):
        sub = self.grid.restrict(v_lo, v_hi)
        start = (v_lo - self.grid.v_min) * self.grid.nodes_per_octave
        return SampledFunction(sub, self.values[start:start + sub.size])

    def __mul__(self, c):
        return SampledFunction(self.grid, self.values * c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return SampledFunction(self.grid, self.values / c)

    def __add__(self, other):
        _check_same_grid(self.grid, other)
        return SampledFunction(self.grid, self.values + other.values)


def _check_same_grid(grid, f):
    if not grid.same_as(f.grid):
        raise ValueError(f"function sampled on {f.grid.describe()}, expected {grid.describe()}")


def _raw_values(grid, f):
    if isinstance(f, SampledFunction):
        _check_same_grid(grid, f)
        return f.values
    values = np.asarray(f, dtype=float)
    if values.shape != grid.nodes.shape:
        raise ValueError(f"{values.size} samples for a grid with {grid.size} nodes")
    if np.isnan(values).any():
        raise ValueError("samples contain NaN")
    return values


def panel_integrals(grid, values):
    """Trapezoid area of each of the ``size - 1`` panels."""
    return 0.5 * grid.step * (values[:-1] + values[1:])


def integrate(grid, f):
    """Trapezoid approximation of the integral of ``f`` against dt/t."""
    values = _raw_values(grid, f)
    return float(np.dot(grid.log_weights, values))


def integrate_between(grid, f, a, b):
    """Integral of ``f`` dt/t over ``[a, b]``; both bounds must be nodes."""
    if a > b:
        raise ValueError(f"lower bound {a!r} exceeds upper bound {b!r}")
    if a < grid.bottom * (1 - 1e-12) or b > grid.top * (1 + 1e-12):
        raise ValueError(f"[{a!r}, {b!r}] outside {grid.describe()}")
    i, j = grid.index_of(a), grid.index_of(b)
    values = _raw_values(grid, f)
    if i == j:
        return 0.0
    return float(panel_integrals(grid, values[i:j + 1]).sum())


def upper_cumulative(grid, values):
    """``out[i]`` = integral from node ``i`` to the top node.

    Summed from the top down so small tail panels are accumulated before
    the large ones.
    """
    out = np.zeros(grid.size)
    out[:-1] = np.cumsum(panel_integrals(grid, values)[::-1])[::-1]
    return out


def lower_cumulative(grid, values):
    """``out[i]`` = integral from the bottom node to node ``i``."""
    out = np.zeros(grid.size)
    out[1:] = np.cumsum(panel_integrals(grid, values))
    return out
