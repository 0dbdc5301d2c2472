"""Variable exponents on (0, inf) with known endpoint limits.

Every exponent carries its origin limit ``p_zero`` and its limit at infinity
``p_infinity`` as explicit metadata; the built-in families compute both in
closed form. Log-Hoelder constants are estimated as suprema over grid nodes,
which only bound the true constants from below.
"""
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _descriptor
from .grid import build

# p is clamped to this floor so that perturbed families never drop below 1.
P_FLOOR = 1.0 + 1e-6


class Family(str, enum.Enum):
    CONSTANT = "const"
    LOG_INTERP = "loginterp"
    LOG_PERTURBED = "logpert"
    SQRT_LOG = "sqrtlog"
    STEP = "step"
    CUSTOM = "custom"


_ARITY = {
    Family.CONSTANT: 1,
    Family.LOG_INTERP: 2,
    Family.LOG_PERTURBED: 4,
    Family.SQRT_LOG: 2,
    Family.STEP: 3,
}


@dataclass(frozen=True, eq=False)
class ExponentFunction:
    """A measurable exponent ``p >= 1`` on (0, inf).

    ``evaluator`` maps an array of positive reals to exponent values and must
    be vectorised. ``amplitude`` bounds how far ``p`` may leave the interval
    spanned by the two endpoint values.
    """

    evaluator: object = field(repr=False)
    p_zero: float
    p_infinity: float
    kind: Family = Family.CUSTOM
    params: tuple = ()
    amplitude: float = 0.0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if not np.isfinite(t).all() or (t <= 0).any():
            raise ValueError("exponent is only defined at positive finite points")
        out = np.asarray(self.evaluator(t), dtype=float)
        if t.ndim == 0:
            return float(out)
        return out

    def eval(self, t):
        return self(t)

    def describe(self):
        if self.kind is Family.CUSTOM:
            return f"custom[p0={self.p_zero!r},pinf={self.p_infinity!r}]"
        return _descriptor.format(self.kind.value, self.params)

    def is_constant(self):
        return self.kind is Family.CONSTANT or (
            self.kind is Family.LOG_INTERP and self.params[0] == self.params[1])

    def reciprocal_limits(self):
        return 1.0 / self.p_zero, 1.0 / self.p_infinity


def _log_interp(p0, pinf):
    def evaluator(t):
        return pinf + (p0 - pinf) / np.log(math.e + t)
    return evaluator


def make_family(kind, params, reference_grid=None):
    """Construct a built-in exponent family.

    ========== ===================== =========================================
    kind       params                p(t)
    ========== ===================== =========================================
    const      (c,)                  c
    loginterp  (p0, pinf)            pinf + (p0 - pinf) / ln(e + t)
    logpert    (p0, pinf, A, phase)  loginterp(p0, pinf)
                                     + A sin(ln(e + t) + phase) / ln(e + t)
    sqrtlog    (p0, A)               p0 + A / sqrt(ln(e + 1/t))
    step       (lo, hi, t0)          lo for t < t0, hi for t >= t0
    ========== ===================== =========================================

    ``logpert`` is clamped from below at ``1 + 1e-6``. ``sqrtlog`` is
    continuous at the origin but *not* log-Hoelder there; it exists to
    exercise the divergence of the origin constant.

    Raises ``ValueError`` if the exponent drops below 1 on the reference
    grid (default ``grid(-30,30,8)``).
    """
    kind = Family(kind)
    if kind is Family.CUSTOM:
        raise ValueError("use from_callable for custom exponents")
    params = tuple(float(x) for x in params)
    if len(params) != _ARITY[kind]:
        raise ValueError(f"{kind.value} takes {_ARITY[kind]} parameters, got {len(params)}")
    if not all(math.isfinite(x) for x in params):
        raise ValueError(f"non-finite parameter in {kind.value}{params}")

    if kind is Family.CONSTANT:
        (c,) = params
        p = ExponentFunction(lambda t: np.full(np.shape(t), c), c, c, kind, params)
    elif kind is Family.LOG_INTERP:
        p0, pinf = params
        p = ExponentFunction(_log_interp(p0, pinf), p0, pinf, kind, params)
    elif kind is Family.LOG_PERTURBED:
        p0, pinf, amp, phase = params
        if p0 < 1 or pinf < 1:
            raise ValueError(f"base endpoints must be >= 1, got ({p0}, {pinf})")
        base = _log_interp(p0, pinf)

        def evaluator(t):
            ell = np.log(math.e + t)
            return np.maximum(base(t) + amp * np.sin(ell + phase) / ell, P_FLOOR)

        # ln(e + t) -> 1 at the origin, and the perturbation dies at infinity.
        zero = max(p0 + amp * math.sin(1.0 + phase), P_FLOOR)
        p = ExponentFunction(evaluator, zero, pinf, kind, params, abs(amp))
    elif kind is Family.SQRT_LOG:
        p0, amp = params

        def evaluator(t):
            return p0 + amp / np.sqrt(np.log(math.e + 1.0 / t))

        p = ExponentFunction(evaluator, p0, p0 + amp, kind, params)
    else:
        lo, hi, t0 = params
        if t0 <= 0:
            raise ValueError(f"step location must be positive, got {t0}")
        p = ExponentFunction(lambda t: np.where(t < t0, lo, hi), lo, hi, kind, params)

    if min(p.p_zero, p.p_infinity) < 1:
        raise ValueError(f"{p.describe()} has an endpoint value below 1")
    grid = reference_grid if reference_grid is not None else build()
    lo, _ = grid_range(p, grid)
    if lo < 1:
        raise ValueError(f"{p.describe()} drops to {lo:.6g} < 1 on {grid.describe()}")
    return p


def from_callable(fn, p_zero, p_infinity):
    """Wrap a user evaluator; the endpoint limits are taken on trust."""
    if p_zero < 1 or p_infinity < 1:
        raise ValueError("endpoint values must be >= 1")
    return ExponentFunction(fn, float(p_zero), float(p_infinity))


def parse_exponent(text):
    """Inverse of :meth:`ExponentFunction.describe` for built-in families."""
    name, params = _descriptor.parse(text)
    try:
        kind = Family(name)
    except ValueError:
        known = ", ".join(f.value for f in Family if f is not Family.CUSTOM)
        raise ValueError(f"unknown exponent family {name!r} (known: {known})") from None
    return make_family(kind, params)


def grid_range(p, grid):
    """``(p_minus, p_plus)`` over the grid nodes."""
    if grid.size == 0:
        raise ValueError("empty grid")
    values = p(grid.nodes)
    return float(values.min()), float(values.max())


def log_holder_origin_constant(p, grid, reciprocal=False):
    """max over nodes of ``|p(t) - p(0)| ln(e + 1/t)``.

    With ``reciprocal=True`` the same supremum is taken for ``1/p``, which is
    the constant that enters ``gamma`` in the Jensen-type estimate.
    """
    values, target = p(grid.nodes), p.p_zero
    if reciprocal:
        values, target = 1.0 / values, 1.0 / target
    return float(np.max(np.abs(values - target) * np.log(math.e + 1.0 / grid.nodes)))


def log_holder_infinity_constant(p, grid, reciprocal=False):
    """max over nodes of ``|p(t) - p_inf| ln(e + t)``."""
    values, target = p(grid.nodes), p.p_infinity
    if reciprocal:
        values, target = 1.0 / values, 1.0 / target
    return float(np.max(np.abs(values - target) * np.log(math.e + grid.nodes)))
