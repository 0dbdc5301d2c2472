"""Hardy averaging operators on the log grid, the discrete Hardy transform,
and the Jensen-type pointwise estimate for log-Hoelder exponents."""
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .exponent import grid_range, log_holder_infinity_constant, log_holder_origin_constant
from .grid import SampledFunction, integrate_between, lower_cumulative, upper_cumulative


@dataclass(frozen=True)
class HardyParams:
    s: float

    def __post_init__(self):
        if not (self.s > 0 and math.isfinite(self.s)):
            raise ValueError(f"power weight s must be positive, got {self.s!r}")


def _params(params):
    return params if isinstance(params, HardyParams) else HardyParams(float(params))


def eta(params, eps):
    """``t^s * integral_t^top tau^{-s} eps(tau) dtau/tau`` at every node.

    The upper limit is the top of the grid; the top node therefore gets 0.
    """
    s = _params(params).s
    grid = eps.grid
    tail = upper_cumulative(grid, grid.nodes ** -s * eps.values)
    return SampledFunction(grid, grid.nodes ** s * tail)


def lam(params, eps):
    """``t^{-s} * integral_bottom^t tau^s eps(tau) dtau/tau`` at every node."""
    s = _params(params).s
    grid = eps.grid
    head = lower_cumulative(grid, grid.nodes ** s * eps.values)
    return SampledFunction(grid, grid.nodes ** -s * head)


def eta_unit(params, eps):
    """Like :func:`eta` with the upper limit at 1; zero above 1."""
    s = _params(params).s
    grid = eps.grid
    if not grid.v_min <= 0 <= grid.v_max:
        raise ValueError(f"{grid.describe()} does not contain the node 1")
    one = grid.index_of(1.0)
    out = np.zeros(grid.size)
    if one > 0:
        sub = grid.restrict(grid.v_min, 0)
        weighted = sub.nodes ** -s * eps.values[:one + 1]
        out[:one + 1] = sub.nodes ** s * upper_cumulative(sub, weighted)
    return SampledFunction(grid, out)


def power_monotone_profiles(params, eta_values, lam_values):
    """``(t^{-s} eta, t^{s} lam)``: non-increasing and non-decreasing respectively."""
    s = _params(params).s
    grid = eta_values.grid
    return grid.nodes ** -s * eta_values.values, grid.nodes ** s * lam_values.values


# -- discrete Hardy transform -------------------------------------------------

@dataclass(frozen=True)
class DiscreteHardyParams:
    a: float
    sigma: float
    p: float
    window: tuple

    def __post_init__(self):
        if not 0 < self.a < 1:
            raise ValueError(f"need 0 < a < 1, got {self.a!r}")
        if self.sigma < 0:
            raise ValueError(f"need sigma >= 0, got {self.sigma!r}")
        if not self.p > 0:
            raise ValueError(f"need p in (0, inf], got {self.p!r}")
        k_min, k_max = self.window
        if k_max < k_min:
            raise ValueError(f"empty window {self.window!r}")

    @property
    def length(self):
        return self.window[1] - self.window[0] + 1


def _kernel_weights(a, sigma, m):
    """``|m|^sigma a^|m|`` with 0^0 = 1."""
    m = np.abs(np.asarray(m, dtype=float))
    if sigma == 0:
        return a ** m
    return m ** sigma * a ** m


def discrete_hardy_transform(params, eps):
    """``delta_k = sum_j |k-j|^sigma a^|k-j| eps_j`` over the window.

    ``eps`` may be one sequence or a 2-D stack of sequences (one per row).
    """
    eps = np.asarray(eps, dtype=float)
    n = params.length
    if eps.shape[-1] != n:
        raise ValueError(f"window has {n} entries, got {eps.shape[-1]}")
    idx = np.arange(n)
    kernel = _kernel_weights(params.a, params.sigma, idx[:, None] - idx[None, :])
    return eps @ kernel.T


def young_constant(a, sigma, p):
    """Explicit majorant of the discrete Hardy constant.

    For ``p >= 1`` (including inf) this is the l^1 norm of the kernel
    (Young's inequality); for ``0 < p < 1`` it is the l^p quasi-norm of the
    kernel (p-triangle inequality).
    """
    r = 1.0 if p >= 1 else p
    base, power = a ** r, sigma * r
    terms = [1.0 if sigma == 0 else 0.0]
    m = 1
    while True:
        term = m ** power * base ** m
        terms.append(2.0 * term)
        if m > power / -math.log(base) and term < 1e-18 * math.fsum(terms):
            break
        m += 1
    total = math.fsum(terms)
    return total if p >= 1 else total ** (1.0 / p)


def _lp(x, p):
    x = np.abs(x)
    if math.isinf(p):
        return x.max(axis=-1)
    return np.sum(x ** p, axis=-1) ** (1.0 / p)


def discrete_hardy_check(params, eps):
    """``(lhs, rhs_bound, ratio)`` with lhs = ||delta||_p and rhs = C ||eps||_p.

    Vectorised over leading axes of ``eps``.
    """
    eps = np.asarray(eps, dtype=float)
    if (eps < 0).any():
        raise ValueError("sequence entries must be nonnegative")
    delta = discrete_hardy_transform(params, eps)
    lhs = _lp(delta, params.p)
    rhs = young_constant(params.a, params.sigma, params.p) * _lp(eps, params.p)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(rhs > 0, lhs / np.where(rhs > 0, rhs, 1.0), 0.0)
    if np.ndim(ratio) == 0:
        return float(lhs), float(rhs), float(ratio)
    return lhs, rhs, ratio


# -- Jensen-type pointwise estimate ---------------------------------------------

class Variant(str, enum.Enum):
    ORIGIN_PY = "origin_py"
    ORIGIN_P0 = "origin_p0"
    INFINITY = "infinity"


@dataclass(frozen=True, eq=False)
class Lemma22Spec:
    """Interval ``Q = (a, b)`` (grid nodes), parameter ``m`` and weight ``w``.

    ``gamma`` defaults to ``exp(-4 m c)`` with ``c`` the empirical
    log-Hoelder constant of ``1/p`` (at the origin for the origin variants,
    at infinity otherwise) over the weight's grid.
    """

    a: float
    b: float
    m: float
    variant: Variant
    weight: SampledFunction = field(default=None, repr=False)
    gamma: float = None

    def __post_init__(self):
        if not 0 < self.a < self.b < math.inf:
            raise ValueError(f"need 0 < a < b < inf, got ({self.a!r}, {self.b!r})")
        if not self.m > 0:
            raise ValueError(f"need m > 0, got {self.m!r}")
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.gamma is not None and not 0 < self.gamma <= 1:
            raise ValueError(f"gamma must lie in (0, 1], got {self.gamma!r}")


@dataclass(frozen=True)
class Lemma22Report:
    x: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    margin: np.ndarray
    margin_ungrouped: np.ndarray
    gamma: float
    weight_mass: float

    @property
    def min_margin(self):
        return float(self.margin.min())


def lemma22_gamma(p, spec, grid):
    if spec.gamma is not None:
        return spec.gamma
    if spec.variant is Variant.INFINITY:
        c = log_holder_infinity_constant(p, grid, reciprocal=True)
    else:
        c = log_holder_origin_constant(p, grid, reciprocal=True)
    return math.exp(-4.0 * spec.m * c)


def lemma22_check(p, spec, f, x_nodes=None, p_minus=None):
    """Margins ``RHS - LHS`` of the Jensen-type estimate at each ``x`` in Q.

    LHS is ``(gamma * avg_w |f|)^{p(x)}``; RHS is
    ``max(1, w(Q)^{1 - p(x)/p_minus}) * avg_w |f|^{p(y,0)} + omega * avg_w g(x, .)``.
    Averages are against ``w(y) dy``, which on the log grid is ``w(tau) tau
    dtau/tau``. ``margin`` multiplies the whole g-average by ``omega``;
    ``margin_ungrouped`` applies ``omega`` to the x-term of g only.

    ``f`` must satisfy ``sup |f| <= 1`` on Q or ``integral_Q |f|^{p} w dy <= 1``.
    """
    grid = f.grid
    ia, ib = grid.index_of(spec.a), grid.index_of(spec.b)
    if ib - ia < 1:
        raise ValueError("Q is not resolved by the grid")
    weight = spec.weight if spec.weight is not None else SampledFunction(grid, np.ones(grid.size))
    if not weight.grid.same_as(grid):
        raise ValueError("weight and f must share a grid")

    t = grid.nodes
    dy = weight.values * t  # w(y) dy == w(tau) tau dtau/tau
    w_q = integrate_between(grid, dy, spec.a, spec.b)
    if not 0 < w_q < math.inf:
        raise ValueError(f"need 0 < w(Q) < inf, got {w_q!r}")

    fq = np.abs(f.values)
    if fq[ia:ib + 1].max() > 1:
        mass = integrate_between(grid, fq ** p(t) * dy, spec.a, spec.b)
        if mass > 1:
            raise ValueError("f violates the normalisation: sup|f| > 1 and modular over Q > 1")

    if x_nodes is None:
        x_idx = np.arange(ia, ib + 1)
    else:
        x_idx = np.array([grid.index_of(x) for x in np.atleast_1d(x_nodes)])
        if (x_idx < ia).any() or (x_idx > ib).any():
            raise ValueError("x_nodes must lie in Q")
    x = t[x_idx]
    px = p(x)
    gamma = lemma22_gamma(p, spec, grid)
    if p_minus is None:
        p_minus, _ = grid_range(p, grid)

    def avg(values):
        return integrate_between(grid, values * dy, spec.a, spec.b) / w_q

    mean_f = avg(fq)
    lhs = (gamma * mean_f) ** px

    variant, m = spec.variant, spec.m
    if variant is Variant.ORIGIN_PY:
        y_exp = p(t)
    elif variant is Variant.ORIGIN_P0:
        y_exp = np.full(grid.size, p.p_zero)
    else:
        y_exp = np.full(grid.size, p.p_infinity)
    with np.errstate(under="ignore"):
        first = np.maximum(1.0, w_q ** (1.0 - px / p_minus)) * avg(fq ** y_exp)

    if variant is Variant.INFINITY:
        omega = 1.0
        g_x = np.where(px < p.p_infinity, (math.e + x) ** -m, 0.0)
        g_y_avg = 0.0
    else:
        omega = min(spec.b ** m, 1.0)
        g_x = (math.e + 1.0 / x) ** -m
        if variant is Variant.ORIGIN_PY:
            g_y_avg = avg((math.e + 1.0 / t) ** -m)
        else:
            g_x = np.where(px < p.p_zero, g_x, 0.0)
            g_y_avg = 0.0
    rhs = first + omega * (g_x + g_y_avg)
    rhs_ungrouped = first + omega * g_x + g_y_avg
    return Lemma22Report(x, lhs, rhs, rhs - lhs, rhs_ungrouped - lhs, gamma, w_q)
