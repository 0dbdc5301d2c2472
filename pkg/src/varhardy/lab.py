"""Two-sided norm comparisons for the Hardy operators, run as reproducible scenarios.

A report compares the variable-exponent Luxemburg norm of an operator
output with the fixed-exponent value built from the endpoint exponents:
``p(0)`` below ``t = 1`` and ``p_inf`` above it. Every report also repeats
the computation on a refined grid (twice the nodes per octave) and on a
grid extended by five octaves at both ends; the relative movement of the
ratios is recorded as ``refinement_delta`` and ``tail_delta``.

Norms are evaluated on an inner window that stays ``TAIL_MARGIN`` octaves
away from the grid ends, where the truncated operators lose accuracy.
"""
import csv
import enum
import json
import math
import os
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import hardy
from .exponent import (
    log_holder_infinity_constant, log_holder_origin_constant, make_family, parse_exponent,
)
from .functions import SampledSource, parse_function
from .grid import SampledFunction, build
from .lebesgue import DEFAULT_TOL, fixed_norm, luxemburg_norm

TAIL_MARGIN = 10
TAIL_EXTENSION = 5
STABILITY_THRESHOLD = 0.05


class Which(str, enum.Enum):
    ETA = "eta"
    LAMBDA = "lambda"


class Mode(str, enum.Enum):
    FULL_LINE = "full"
    UNIT_INTERVAL = "unit"


CSV_COLUMNS = (
    "scenario_id", "family", "s", "which", "mode", "grid", "lhs", "rhs",
    "ratio_fwd", "ratio_bwd", "refinement_delta", "tail_delta",
    "clog_origin", "clog_infinity", "flags",
)


@dataclass
class EquivalenceReport:
    scenario_id: str
    family: str
    s: float
    which: str
    mode: str
    grid: str
    lhs: float
    rhs: float
    ratio_fwd: float
    ratio_bwd: float
    refinement_delta: float
    tail_delta: float
    clog_origin: float
    clog_infinity: float
    flags: str = ""
    diagnostics: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def worst_ratio(self):
        return max(self.ratio_fwd, self.ratio_bwd)

    @property
    def flag_set(self):
        return set(filter(None, self.flags.split(";")))

    def row(self):
        return {name: getattr(self, name) for name in CSV_COLUMNS}


def _as_source(eps):
    if isinstance(eps, SampledFunction):
        return SampledSource(eps)
    if isinstance(eps, str):
        return parse_function(eps)
    return eps


def _window(grid, mode):
    lo, hi = grid.v_min + TAIL_MARGIN, grid.v_max - TAIL_MARGIN
    if mode is Mode.UNIT_INTERVAL:
        hi = 0
    if not lo < 0 <= hi:
        raise ValueError(
            f"{grid.describe()} too short: the evaluation window must straddle 1 "
            f"with {TAIL_MARGIN} octaves of margin")
    return lo, hi


def _operator(s, eps, which, mode):
    if which is Which.LAMBDA:
        return hardy.lam(s, eps)
    if mode is Mode.UNIT_INTERVAL:
        return hardy.eta_unit(s, eps)
    return hardy.eta(s, eps)


def _endpoint_value(p, f, mode):
    """Fixed-exponent side: p(0)-norm on (0, 1] plus p_inf-norm on [1, inf)."""
    below = fixed_norm(p.p_zero, f, f.grid.bottom, 1.0)
    if mode is Mode.UNIT_INTERVAL:
        return below
    return below + fixed_norm(p.p_infinity, f, 1.0, f.grid.top)


def _rel_change(new, old):
    if not (math.isfinite(new) and math.isfinite(old)) or old == 0:
        return math.nan
    return abs(new - old) / abs(old)


def _ratios(lhs, rhs):
    if lhs > 0 and rhs > 0:
        return lhs / rhs, rhs / lhs
    return math.nan, math.nan


def _stability_runs(grid, source, compute):
    """Run ``compute`` on base, refined and extended grids.

    Returns ``[base, refined, extended]``; the last two are ``None`` when the
    source cannot be resampled.
    """
    base = compute(grid, source.sample(grid))
    out = [base]
    for alt in (grid.refined(), grid.extended(TAIL_EXTENSION)):
        try:
            sample = source.sample(alt)
        except LookupError:
            out.append(None)
            continue
        out.append(compute(alt, sample))
    return out


def _delta(base, other, key):
    if other is None:
        return math.nan
    return max(_rel_change(other[k], base[k]) for k in key)


def _flags(deltas, degenerate, extra=()):
    flags = list(extra)
    if degenerate:
        flags.append("degenerate")
    names = ("unstable_refinement", "unstable_tail")
    for name, d in zip(names, deltas):
        if math.isnan(d):
            if not degenerate:
                flags.append("no_" + name.split("_")[1])
        elif d >= STABILITY_THRESHOLD:
            flags.append(name)
    return ";".join(flags)


def _exponent(p):
    return parse_exponent(p) if isinstance(p, str) else p


def _clog(p, grid):
    return log_holder_origin_constant(p, grid), log_holder_infinity_constant(p, grid)


def equivalence_report(p, s, eps, which=Which.ETA, mode=Mode.FULL_LINE, grid=None,
                       tol=DEFAULT_TOL, scenario_id=None):
    """Compare ``||op eps||_{p(.)}`` with its endpoint fixed-exponent value.

    ``eps`` is a :class:`~varhardy.functions.TestFunction` (or its
    descriptor); a plain :class:`SampledFunction` also works but then the
    refinement and tail diagnostics are NaN and flagged.
    """
    p, which, mode = _exponent(p), Which(which), Mode(mode)
    grid = grid if grid is not None else build()
    source = _as_source(eps)

    def compute(g, sample):
        out = _operator(s, sample, which, mode)
        lo, hi = _window(g, mode)
        window = out.restrict(lo, hi)
        result = luxemburg_norm(p, window, tol)
        lhs, rhs = result.norm, _endpoint_value(p, window, mode)
        fwd, bwd = _ratios(lhs, rhs)
        return {"lhs": lhs, "rhs": rhs, "fwd": fwd, "bwd": bwd,
                "iterations": result.iterations, "output": out}

    base, refined, extended = _stability_runs(grid, source, compute)
    degenerate = not (base["lhs"] > 0 and base["rhs"] > 0)
    d_ref = _delta(base, refined, ("fwd", "bwd"))
    d_tail = _delta(base, extended, ("fwd", "bwd"))
    lo, hi = _window(grid, mode)
    c0, cinf = _clog(p, grid.restrict(lo, hi))
    if scenario_id is None:
        scenario_id = f"{p.describe()}|s={s:g}|{source.describe()}|{which.value}|{mode.value}"
    return EquivalenceReport(
        scenario_id, p.describe(), float(s), which.value, mode.value, grid.describe(),
        base["lhs"], base["rhs"], base["fwd"], base["bwd"], d_ref, d_tail, c0, cinf,
        _flags((d_ref, d_tail), degenerate),
        diagnostics={"iterations": base["iterations"], "output": base["output"],
                     "eps": source.describe()},
    )


@dataclass
class MoreoverReport:
    scenario_id: str
    lhs: float
    rhs: float
    ratio_fwd: float
    refinement_delta: float
    tail_delta: float
    flags: str = ""


def moreover_check(p, s, eps, mode=Mode.FULL_LINE, grid=None, tol=DEFAULT_TOL, scenario_id=None):
    """One-sided bound: ``||eta|| + ||lambda||`` against the endpoint value of ``eps``."""
    p, mode = _exponent(p), Mode(mode)
    grid = grid if grid is not None else build()
    source = _as_source(eps)

    def compute(g, sample):
        lo, hi = _window(g, mode)
        lhs = sum(
            luxemburg_norm(p, _operator(s, sample, which, mode).restrict(lo, hi), tol).norm
            for which in Which)
        rhs = _endpoint_value(p, sample.restrict(lo, hi), mode)
        fwd = lhs / rhs if rhs > 0 and lhs > 0 else math.nan
        return {"lhs": lhs, "rhs": rhs, "fwd": fwd}

    base, refined, extended = _stability_runs(grid, source, compute)
    degenerate = not (base["lhs"] > 0 and base["rhs"] > 0)
    d_ref = _delta(base, refined, ("fwd",))
    d_tail = _delta(base, extended, ("fwd",))
    if scenario_id is None:
        scenario_id = f"{p.describe()}|s={s:g}|{source.describe()}|moreover|{mode.value}"
    return MoreoverReport(scenario_id, base["lhs"], base["rhs"], base["fwd"], d_ref, d_tail,
                          _flags((d_ref, d_tail), degenerate))


def _check_monotone(values, direction, rtol=1e-12):
    diffs = np.diff(values)
    scale = np.maximum(np.abs(values[:-1]), np.abs(values[1:]))
    if direction == "non-increasing":
        return bool(np.all(diffs <= rtol * scale))
    return bool(np.all(diffs >= -rtol * scale))


def monotone_variant_report(p, s, source, which=Which.ETA, mode=Mode.FULL_LINE, grid=None,
                            tol=DEFAULT_TOL, scenario_id=None):
    """Equivalence report with a monotone function standing in for the operator output.

    For ``ETA`` the source must be non-increasing, for ``LAMBDA``
    non-decreasing; the check runs on the sampled values.
    """
    p, which, mode = _exponent(p), Which(which), Mode(mode)
    grid = grid if grid is not None else build()
    src = _as_source(source)
    direction = "non-increasing" if which is Which.ETA else "non-decreasing"
    if not _check_monotone(src.sample(grid).values, direction):
        raise ValueError(f"{src.describe()} is not {direction} on {grid.describe()}")

    def compute(g, sample):
        lo, hi = _window(g, mode)
        window = sample.restrict(lo, hi)
        result = luxemburg_norm(p, window, tol)
        lhs, rhs = result.norm, _endpoint_value(p, window, mode)
        fwd, bwd = _ratios(lhs, rhs)
        return {"lhs": lhs, "rhs": rhs, "fwd": fwd, "bwd": bwd, "iterations": result.iterations}

    base, refined, extended = _stability_runs(grid, src, compute)
    degenerate = not (base["lhs"] > 0 and base["rhs"] > 0)
    d_ref = _delta(base, refined, ("fwd", "bwd"))
    d_tail = _delta(base, extended, ("fwd", "bwd"))
    lo, hi = _window(grid, mode)
    c0, cinf = _clog(p, grid.restrict(lo, hi))
    if scenario_id is None:
        scenario_id = f"{p.describe()}|monotone|{src.describe()}|{which.value}|{mode.value}"
    return EquivalenceReport(
        scenario_id, p.describe(), float(s), which.value, mode.value, grid.describe(),
        base["lhs"], base["rhs"], base["fwd"], base["bwd"], d_ref, d_tail, c0, cinf,
        _flags((d_ref, d_tail), degenerate, ("monotone_source",)),
        diagnostics={"iterations": base["iterations"], "eps": src.describe()},
    )


@dataclass
class CrossReport:
    scenario_id: str
    norm_p: float
    norm_q: float
    ratio: float
    refinement_delta: float
    tail_delta: float
    flags: str = ""


def cross_exponent_check(p, q, s, eps, which=Which.ETA, mode=Mode.FULL_LINE, grid=None,
                         tol=DEFAULT_TOL, endpoint_atol=1e-12):
    """Ratio ``||op eps||_{q(.)} / ||op eps||_{p(.)}`` for endpoint-matched exponents."""
    p, q, which, mode = _exponent(p), _exponent(q), Which(which), Mode(mode)
    if abs(p.p_zero - q.p_zero) > endpoint_atol:
        raise ValueError(f"origin values differ: {p.p_zero!r} vs {q.p_zero!r}")
    if mode is Mode.FULL_LINE and abs(p.p_infinity - q.p_infinity) > endpoint_atol:
        raise ValueError(f"limits at infinity differ: {p.p_infinity!r} vs {q.p_infinity!r}")
    grid = grid if grid is not None else build()
    source = _as_source(eps)

    def compute(g, sample):
        lo, hi = _window(g, mode)
        window = _operator(s, sample, which, mode).restrict(lo, hi)
        norm_p = luxemburg_norm(p, window, tol).norm
        norm_q = norm_p if q is p else luxemburg_norm(q, window, tol).norm
        ratio = norm_q / norm_p if norm_p > 0 else math.nan
        return {"p": norm_p, "q": norm_q, "ratio": ratio}

    base, refined, extended = _stability_runs(grid, source, compute)
    degenerate = not base["p"] > 0
    d_ref = _delta(base, refined, ("ratio",))
    d_tail = _delta(base, extended, ("ratio",))
    scenario_id = f"{p.describe()}~{q.describe()}|s={s:g}|{source.describe()}|{which.value}|{mode.value}"
    return CrossReport(scenario_id, base["p"], base["q"], base["ratio"], d_ref, d_tail,
                       _flags((d_ref, d_tail), degenerate))


def matched_perturbation(p0, pinf, amplitude, phase):
    """``logpert`` exponent whose endpoint values are exactly ``(p0, pinf)``."""
    if math.sin(1.0 + phase) == 0.0:
        return make_family("logpert", (p0, pinf, amplitude, phase))
    return make_family("logpert", (p0 - amplitude * math.sin(1.0 + phase), pinf, amplitude, phase))


# -- scenario suites -------------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    scenario_id: str
    exponent: str
    s: float
    eps: str
    which: str = Which.ETA.value
    mode: str = Mode.FULL_LINE.value

    def run(self, grid=None, tol=DEFAULT_TOL):
        return equivalence_report(self.exponent, self.s, self.eps, self.which, self.mode,
                                  grid=grid, tol=tol, scenario_id=self.scenario_id)

    def run_moreover(self, grid=None, tol=DEFAULT_TOL):
        return moreover_check(self.exponent, self.s, self.eps, self.mode, grid=grid, tol=tol,
                              scenario_id=self.scenario_id + "|moreover")


SUITE_EXPONENTS = (
    "loginterp(3.0,2.0)",
    "loginterp(1.2,4.0)",
    "loginterp(4.0,1.5)",
    "loginterp(2.0,2.0)",
    "logpert(3.0,2.0,0.5,0.0)",
    "logpert(1.5,3.0,0.3,1.0)",
)
CONSTANT_EXPONENTS = ("loginterp(2.0,2.0)", "const(1.5)", "const(3.0)")
SUITE_S = (0.5, 1.0, 2.0)
SUITE_EPS = (
    "powerpeak(0.5,0.5)",
    "indicator(-2,2)",
    "logosc(0.5)",
    "stairs(0.7)",
)


def _suite(prefix, exponents, mode):
    scenarios = []
    for exp in exponents:
        for s in SUITE_S:
            for eps in SUITE_EPS:
                for which in Which:
                    n = len(scenarios)
                    scenarios.append(Scenario(f"{prefix}-{n:03d}", exp, s, eps, which.value, mode.value))
    return scenarios


def standard_suite(mode=Mode.FULL_LINE):
    """Six exponents (one of them constant) x three weights x four inputs x both operators."""
    mode = Mode(mode)
    return _suite("t31" if mode is Mode.FULL_LINE else "t32", SUITE_EXPONENTS, mode)


def constant_suite(mode=Mode.FULL_LINE):
    mode = Mode(mode)
    return _suite("const-" + mode.value, CONSTANT_EXPONENTS, mode)


SUITES = {"standard": standard_suite, "constant": constant_suite}


def run_suite(scenarios, grid=None, tol=DEFAULT_TOL):
    reports = [sc.run(grid, tol) for sc in scenarios]
    return sorted(reports, key=lambda r: r.scenario_id)


# -- random worst-case search --------------------------------------------------------

AMPLITUDE_RANGE = (0.0, 2.0)


@dataclass(frozen=True)
class SearchSpace:
    """Ranges sampled uniformly by :func:`adversarial_search`.

    Amplitudes are drawn on the fixed range ``AMPLITUDE_RANGE`` and draws
    outside ``amplitude`` are skipped, so for one seed the draws of a wider
    amplitude range contain those of a narrower one. A degenerate range
    ``(a, a)`` pins the amplitude instead; ``(0, 0)`` restricts the search to
    ``loginterp`` exponents. ``constant=True`` yields constant exponents only.
    """

    p0: tuple = (1.2, 4.0)
    pinf: tuple = (1.2, 4.0)
    amplitude: tuple = (0.0, 0.5)
    s: tuple = (0.5, 2.0)
    eps: tuple = SUITE_EPS
    which: tuple = ("eta", "lambda")
    mode: str = Mode.FULL_LINE.value
    constant: bool = False


@dataclass
class SearchResult:
    table: list
    evaluated: int
    skipped: int
    seed: int


def _draw(space, u):
    """Map one row of uniforms (always 8 of them) to a parameter tuple.

    Returns None when the amplitude falls outside the space.
    """
    u = [float(x) for x in u]

    def pick(rng_range, x):
        lo, hi = rng_range
        return lo + (hi - lo) * x

    p0 = pick(space.p0, u[0])
    pinf = p0 if space.constant else pick(space.pinf, u[1])
    lo, hi = space.amplitude
    if lo == hi:
        amp = lo
    else:
        amp = pick(AMPLITUDE_RANGE, u[2])
        if not lo <= amp <= hi:
            return None
    phase = 2 * math.pi * u[3]
    s = pick(space.s, u[4])
    eps = space.eps[min(int(u[5] * len(space.eps)), len(space.eps) - 1)]
    which = space.which[min(int(u[6] * len(space.which)), len(space.which) - 1)]
    if amp == 0 or space.constant:
        exp = f"loginterp({p0!r},{pinf!r})"
    else:
        exp = f"logpert({p0!r},{pinf!r},{amp!r},{phase!r})"
    return exp, s, eps, which


def adversarial_search(space=SearchSpace(), budget=500, seed=0, top_k=10, grid=None,
                       tol=DEFAULT_TOL):
    """Random search for the largest two-sided ratio over ``space``.

    Draws ``budget`` parameter tuples from a seeded generator (the same
    uniforms for every space, so runs are comparable across spaces), runs
    :func:`equivalence_report` on each and returns the ``top_k`` rows sorted
    by ``max(ratio_fwd, ratio_bwd)``, descending. Draws outside the amplitude
    range, invalid exponents and degenerate outputs are skipped and counted.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    lo, hi = space.amplitude
    if not AMPLITUDE_RANGE[0] <= lo <= hi <= AMPLITUDE_RANGE[1]:
        raise ValueError(f"amplitude range must lie in {AMPLITUDE_RANGE}, got {space.amplitude}")
    rng = np.random.default_rng(seed)
    uniforms = rng.random((budget, 8))
    rows, skipped = [], 0
    for i, u in enumerate(uniforms):
        draw = _draw(space, u)
        if draw is None:
            skipped += 1
            continue
        exp, s, eps, which = draw
        try:
            report = equivalence_report(exp, s, eps, which, space.mode, grid=grid, tol=tol,
                                        scenario_id=f"search-{seed}-{i:05d}")
        except ValueError:
            skipped += 1
            continue
        if "degenerate" in report.flag_set:
            skipped += 1
            continue
        rows.append({
            "scenario_id": report.scenario_id, "exponent": exp, "s": s, "eps": eps,
            "which": which, "mode": space.mode, "worst_ratio": report.worst_ratio,
            "ratio_fwd": report.ratio_fwd, "ratio_bwd": report.ratio_bwd,
            "clog_origin": report.clog_origin, "clog_infinity": report.clog_infinity,
            "refinement_delta": report.refinement_delta, "tail_delta": report.tail_delta,
        })
    rows.sort(key=lambda r: (-r["worst_ratio"], r["scenario_id"]))
    return SearchResult(rows[:top_k], len(rows), skipped, seed)


# -- export -----------------------------------------------------------------------------

class ExportFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def export_report(reports, path, fmt=ExportFormat.CSV):
    """Write reports sorted by scenario id; columns are :data:`CSV_COLUMNS`."""
    fmt = ExportFormat(fmt)
    rows = [r.row() for r in sorted(reports, key=lambda r: r.scenario_id)]
    try:
        parent = os.path.dirname(os.fspath(path))
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "w", newline="") as fh:
            if fmt is ExportFormat.CSV:
                writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
                writer.writeheader()
                for row in rows:
                    writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
            else:
                json.dump({"columns": list(CSV_COLUMNS),
                           "reports": [{k: _jsonable(v) for k, v in row.items()} for row in rows]},
                          fh, indent=2)
                fh.write("\n")
    except OSError as exc:
        raise OSError(f"could not write report to {path}: {exc}") from exc


_FLOAT_COLUMNS = {"s", "lhs", "rhs", "ratio_fwd", "ratio_bwd", "refinement_delta",
                  "tail_delta", "clog_origin", "clog_infinity"}


def _report_from_row(row):
    kwargs = {}
    for f in fields(EquivalenceReport):
        if f.name == "diagnostics":
            continue
        value = row[f.name]
        kwargs[f.name] = float(value) if f.name in _FLOAT_COLUMNS else ("" if value is None else str(value))
    return EquivalenceReport(**kwargs)


def load_report(path):
    """Read back a file written by :func:`export_report` (format from the extension)."""
    try:
        with open(path, newline="") as fh:
            if os.fspath(path).endswith(".json"):
                rows = json.load(fh)["reports"]
            else:
                rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise OSError(f"could not read report {path}: {exc}") from exc
    return [_report_from_row(row) for row in rows]


def report_dict(report):
    d = asdict(report)
    d.pop("diagnostics", None)
    return d


# -- randomized lemma suites ------------------------------------------------------------

LEMMA21_A = (0.3, 0.7)
LEMMA21_SIGMA = (0.0, 1.0, 2.0)
LEMMA21_P = (0.5, 1.0, 2.0, math.inf)


@dataclass
class LemmaSuiteResult:
    name: str
    draws: int
    worst: float
    passed: bool
    witness: dict = field(default_factory=dict)


def _random_sequences(rng, draws, length):
    """Half uniform, half log-normal (heavy tailed) positive sequences."""
    half = draws // 2
    uniform = rng.random((half, length)) + 1e-12
    lognormal = np.exp(3.0 * rng.standard_normal((draws - half, length)))
    return np.vstack([uniform, lognormal])


def lemma21_suite(draws=1000, seed=0, window=(-20, 20), a_values=LEMMA21_A,
                  sigmas=LEMMA21_SIGMA, ps=LEMMA21_P):
    """Ratios ``||delta||_p / (C ||eps||_p)`` over random positive sequences.

    Returns one result per ``(a, sigma, p)``; ``worst`` is the largest ratio.
    """
    rng = np.random.default_rng(seed)
    results = []
    length = window[1] - window[0] + 1
    for a in a_values:
        for sigma in sigmas:
            for p in ps:
                params = hardy.DiscreteHardyParams(a, sigma, p, window)
                eps = _random_sequences(rng, draws, length)
                _, _, ratio = hardy.discrete_hardy_check(params, eps)
                worst = int(np.argmax(ratio))
                results.append(LemmaSuiteResult(
                    f"lemma21(a={a:g},sigma={sigma:g},p={p:g})", draws, float(ratio[worst]),
                    bool(np.all(ratio <= 1.0)),
                    {"a": a, "sigma": sigma, "p": p, "eps": eps[worst].tolist()}))
    return results


def lemma21_spike_ratio(a, window=60):
    """Ratio for a unit spike, sigma = 0, p = 1: approaches 1 as the window grows."""
    params = hardy.DiscreteHardyParams(a, 0.0, 1.0, (-window, window))
    eps = np.zeros(2 * window + 1)
    eps[window] = 1.0
    return hardy.discrete_hardy_check(params, eps)[2]


def _random_exponent(rng):
    p0, pinf = rng.uniform(1.2, 4.0, size=2)
    if rng.random() < 0.5:
        return make_family("loginterp", (p0, pinf))
    amp, phase = rng.uniform(0.0, 0.5), rng.uniform(0, 2 * math.pi)
    return make_family("logpert", (p0, pinf, amp, phase))


def lemma22_suite(variant, draws=200, seed=0, grid=None):
    """Minimum margin of the Jensen-type estimate over random draws.

    Each draw picks an exponent, an interval ``Q`` of 1 to 6 octaves inside
    ``[2^-20, 2^20]``, ``m`` in ``[0.25, 4]`` and ``f`` with ``sup |f| <= 1``
    (rough uniform samples or a constant, the extremal case).
    """
    variant = hardy.Variant(variant)
    grid = grid if grid is not None else build()
    rng = np.random.default_rng(seed)
    npo = grid.nodes_per_octave
    worst, worst_ungrouped, witness = math.inf, math.inf, {}
    for i in range(draws):
        p = _random_exponent(rng)
        lo = (-20 - grid.v_min) * npo
        ia = int(rng.integers(lo, lo + 34 * npo))
        ib = ia + int(rng.integers(1, 6 * npo + 1))
        m = float(rng.uniform(0.25, 4.0))
        if rng.random() < 0.5:
            values = rng.random(grid.size)
        else:
            values = np.full(grid.size, 10.0 ** rng.uniform(-6, 0))
        f = SampledFunction(grid, values)
        spec = hardy.Lemma22Spec(float(grid.nodes[ia]), float(grid.nodes[ib]), m, variant)
        report = hardy.lemma22_check(p, spec, f)
        worst_ungrouped = min(worst_ungrouped, float(report.margin_ungrouped.min()))
        if report.min_margin < worst:
            worst = report.min_margin
            witness = {"draw": i, "exponent": p.describe(), "a": spec.a, "b": spec.b, "m": m,
                       "gamma": report.gamma}
    witness["min_margin_ungrouped"] = worst_ungrouped
    return LemmaSuiteResult(f"lemma22({variant.value})", draws, worst, worst >= -1e-10, witness)
