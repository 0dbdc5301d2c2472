"""Command-line frontend: ``varhardy {norm,equiv,lemma,search}``.

Exit codes: 0 success, 1 solver failure or violated bound, 2 bad arguments.
Every flag can also come from a JSON file passed with ``--config``; keys are
the long flag names with dashes replaced by underscores. Flags given on the
command line override the file.
"""
import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields

from . import lab
from .exponent import parse_exponent
from .functions import parse_function
from .grid import parse_grid
from .hardy import Variant
from .lebesgue import DEFAULT_TOL, ConvergenceError, luxemburg_norm, modular

OUTPUT_DIR_ENV = "VARHARDY_OUTPUT_DIR"


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    p: str = None
    q: str = None
    f: str = None
    grid: str = "grid(-30,30,8)"
    s: float = 1.0
    which: str = "eta"
    mode: str = "full"
    suite: str = None
    tol: float = DEFAULT_TOL
    seed: int = 0
    out: str = None
    format: str = "csv"
    budget: int = 500
    top_k: int = 10
    draws: int = None
    lemma: str = "all"
    variant: str = "all"
    max_amplitude: float = 0.5


CONFIG_KEYS = {f.name for f in fields(RunConfig)} - {"subcommand"}


def _validated(parse):
    def check(text):
        try:
            parse(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
        return text.strip()
    check.__name__ = parse.__name__
    return check


def _positive(kind):
    def check(text):
        value = kind(text)
        if not value > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
        return value
    check.__name__ = kind.__name__
    return check


def _amplitude(text):
    value = float(text)
    lo, hi = lab.AMPLITUDE_RANGE
    if not lo <= value <= hi:
        raise argparse.ArgumentTypeError(f"must lie in [{lo:g}, {hi:g}], got {text!r}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="varhardy",
        description="Hardy operators and Luxemburg norms in L^{p(.)}((0,inf), dt/t).")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="JSON file with default values for any flag below")
    common.add_argument("--grid", type=_validated(parse_grid), default="grid(-30,30,8)",
                        help="log grid as grid(v_min,v_max,nodes_per_octave)")
    common.add_argument("--tol", type=_positive(float), default=DEFAULT_TOL,
                        help="modular residual tolerance for the norm solver")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--out", help=f"output file (relative paths resolve against ${OUTPUT_DIR_ENV})")
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")

    exponent_help = "exponent descriptor, e.g. const(2), loginterp(3,2), logpert(3,2,0.5,0)"
    function_help = "input function, e.g. zero, powerpeak(0.5,0.5), indicator(-2,2), logosc(0.5)"

    norm = sub.add_parser("norm", parents=[common], help="Luxemburg norm and modular of one function")
    norm.add_argument("--p", type=_validated(parse_exponent), help=exponent_help)
    norm.add_argument("--f", type=_validated(parse_function), help=function_help)

    equiv = sub.add_parser("equiv", parents=[common],
                           help="two-sided comparison with the endpoint fixed exponents")
    equiv.add_argument("--suite", choices=sorted(lab.SUITES), help="run a named scenario suite")
    equiv.add_argument("--p", type=_validated(parse_exponent), help=exponent_help)
    equiv.add_argument("--q", type=_validated(parse_exponent),
                       help="second exponent with the same endpoint values (cross-exponent check)")
    equiv.add_argument("--f", type=_validated(parse_function), help=function_help)
    equiv.add_argument("--s", type=_positive(float), default=1.0, help="power weight s > 0")
    equiv.add_argument("--which", choices=("eta", "lambda"), default="eta", help="operator")
    equiv.add_argument("--mode", choices=("full", "unit"), default="full",
                       help="full: (0,inf); unit: (0,1]")

    lemma = sub.add_parser("lemma", parents=[common], help="randomized checks of the two lemmas")
    lemma.add_argument("--lemma", choices=("2.1", "2.2", "all"), default="all",
                       help="discrete Hardy bound (2.1), Jensen-type estimate (2.2) or both")
    lemma.add_argument("--variant", choices=["all"] + [v.value for v in Variant], default="all",
                       help="variant of the Jensen-type estimate")
    lemma.add_argument("--draws", type=_positive(int),
                       help="draws per configuration (default 1000 for 2.1, 200 for 2.2)")

    search = sub.add_parser("search", parents=[common], help="random worst-case ratio search")
    search.add_argument("--budget", type=_positive(int), default=500, help="number of draws")
    search.add_argument("--top-k", type=_positive(int), default=10, help="rows kept in the table")
    search.add_argument("--mode", choices=("full", "unit"), default="full", help="domain")
    search.add_argument("--max-amplitude", type=_amplitude, default=0.5,
                        help="upper end of the perturbation amplitude range (0 = loginterp only)")
    return parser


def parse_config(argv=None):
    """Parse flags (and an optional ``--config`` file) into a :class:`RunConfig`."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            parser.error(f"argument --config: cannot read {args.config}: {exc}")
        if not isinstance(data, dict):
            parser.error("argument --config: expected a JSON object")
        unknown = set(data) - CONFIG_KEYS - {"subcommand"}
        if unknown:
            parser.error(f"argument --config: unknown keys {sorted(unknown)}")
        if data.get("subcommand", args.subcommand) != args.subcommand:
            parser.error("argument --config: subcommand does not match the command line")
        explicit = _explicit_dests(parser, argv)
        sub = parser._subparsers._group_actions[0].choices[args.subcommand]
        actions = {a.dest: a for a in sub._actions}
        for key, value in data.items():
            if key == "subcommand" or key in explicit:
                continue
            action = actions.get(key)
            if action is None:
                parser.error(f"argument --config: key {key!r} does not apply to {args.subcommand}")
            if action.type is not None and value is not None:
                try:
                    value = action.type(str(value))
                except (argparse.ArgumentTypeError, ValueError) as exc:
                    parser.error(f"argument {action.option_strings[0]} (from --config): {exc}")
            if action.choices is not None and value not in action.choices:
                parser.error(f"argument {action.option_strings[0]} (from --config): "
                             f"invalid choice {value!r}")
            setattr(args, key, value)
    values = {k: v for k, v in vars(args).items() if k in CONFIG_KEYS}
    config = RunConfig(subcommand=args.subcommand, **values)
    _check_required(parser, config)
    return config


def _explicit_dests(parser, argv):
    """Destinations set on the command line (so they win over the config file)."""
    argv = sys.argv[1:] if argv is None else argv
    sub = parser._subparsers._group_actions[0].choices
    dests = set()
    for token in argv:
        if not token.startswith("--"):
            continue
        flag = token.split("=", 1)[0]
        for choice in sub.values():
            for action in choice._actions:
                if flag in action.option_strings:
                    dests.add(action.dest)
    return dests


def _check_required(parser, config):
    if config.subcommand == "norm":
        for flag in ("p", "f"):
            if getattr(config, flag) is None:
                parser.error(f"argument --{flag} is required")
    if config.subcommand == "equiv" and config.suite is None:
        for flag in ("p", "f"):
            if getattr(config, flag) is None:
                parser.error(f"argument --{flag} is required unless --suite is given")


def _output_path(config, default_name):
    base = os.environ.get(OUTPUT_DIR_ENV)
    path = config.out or default_name
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    return path


def cmd_norm(config):
    grid = parse_grid(config.grid)
    p = parse_exponent(config.p)
    f = parse_function(config.f).sample(grid)
    result = luxemburg_norm(p, f, config.tol)
    print(f"exponent    {p.describe()}")
    print(f"function    {config.f}")
    print(f"grid        {grid.describe()}")
    print(f"norm        {result.norm!r}")
    print(f"modular     {modular(p, f)!r}")
    print(f"modular at norm  {result.modular_at_norm!r}")
    print(f"iterations  {result.iterations}")
    print(f"bracket     [{result.bracket[0]!r}, {result.bracket[1]!r}]")
    return 0


def cmd_equiv(config):
    grid = parse_grid(config.grid)
    if config.suite:
        reports = lab.run_suite(lab.SUITES[config.suite](config.mode), grid, config.tol)
    elif config.q:
        cross = lab.cross_exponent_check(config.p, config.q, config.s, config.f, config.which,
                                         config.mode, grid=grid, tol=config.tol)
        print(f"{cross.scenario_id}")
        print(f"norm_p {cross.norm_p!r}  norm_q {cross.norm_q!r}  ratio {cross.ratio!r}")
        print(f"refinement_delta {cross.refinement_delta:.3e}  tail_delta {cross.tail_delta:.3e}"
              f"  flags {cross.flags or '-'}")
        return 0
    else:
        reports = [lab.equivalence_report(config.p, config.s, config.f, config.which, config.mode,
                                          grid=grid, tol=config.tol)]
    path = _output_path(config, f"equiv.{config.format}")
    lab.export_report(reports, path, config.format)
    scored = [r for r in reports if math.isfinite(r.worst_ratio)]
    for r in reports:
        print(f"{r.scenario_id:>10}  {r.family:<28} s={r.s:<4g} {r.which:<6} "
              f"fwd={r.ratio_fwd:.6f} bwd={r.ratio_bwd:.6f} "
              f"dref={r.refinement_delta:.2e} dtail={r.tail_delta:.2e} {r.flags}")
    if scored:
        worst = max(scored, key=lambda r: r.worst_ratio)
        print(f"worst two-sided ratio {worst.worst_ratio!r} ({worst.scenario_id})")
    else:
        print("worst two-sided ratio undefined (all reports degenerate)")
    print(f"wrote {len(reports)} report(s) to {path}")
    return 0


def cmd_lemma(config):
    ok = True
    if config.lemma in ("2.1", "all"):
        results = lab.lemma21_suite(draws=config.draws or 1000, seed=config.seed)
        for r in results:
            status = "ok" if r.passed else "VIOLATED"
            print(f"{r.name:<40} max ratio {r.worst:.12f}  {status}")
            if not r.passed:
                print(f"  reproduce with: {json.dumps(r.witness)}")
        worst = max(r.worst for r in results)
        print(f"lemma 2.1 max ratio {worst!r}")
        ok &= all(r.passed for r in results)
    if config.lemma in ("2.2", "all"):
        variants = list(Variant) if config.variant == "all" else [Variant(config.variant)]
        grid = parse_grid(config.grid)
        for variant in variants:
            r = lab.lemma22_suite(variant, draws=config.draws or 200, seed=config.seed, grid=grid)
            status = "ok" if r.passed else "VIOLATED"
            print(f"{r.name:<40} min margin {r.worst:.6e}  {status}")
            if not r.passed:
                print(f"  reproduce with: {json.dumps(r.witness)}")
            ok &= r.passed
    return 0 if ok else 1


def cmd_search(config):
    grid = parse_grid(config.grid)
    space = lab.SearchSpace(amplitude=(0.0, config.max_amplitude), mode=config.mode)
    result = lab.adversarial_search(space, config.budget, config.seed, config.top_k, grid,
                                    config.tol)
    print(f"evaluated {result.evaluated}, skipped {result.skipped}, seed {result.seed}")
    for row in result.table:
        print(f"{row['worst_ratio']:.6f}  clog0={row['clog_origin']:.4f} "
              f"cloginf={row['clog_infinity']:.4f}  {row['exponent']} s={row['s']:.4g} "
              f"{row['eps']} {row['which']}")
    path = _output_path(config, f"search.{config.format}")
    _write_table(result.table, path, config.format)
    print(f"wrote {len(result.table)} row(s) to {path}")
    return 0


SEARCH_COLUMNS = ("scenario_id", "exponent", "s", "eps", "which", "mode", "worst_ratio",
                  "ratio_fwd", "ratio_bwd", "clog_origin", "clog_infinity",
                  "refinement_delta", "tail_delta")


def _write_table(rows, path, fmt):
    import csv
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="") as fh:
        if fmt == "json":
            json.dump({"columns": list(SEARCH_COLUMNS), "rows": rows}, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.DictWriter(fh, fieldnames=SEARCH_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)


COMMANDS = {"norm": cmd_norm, "equiv": cmd_equiv, "lemma": cmd_lemma, "search": cmd_search}


def main(argv=None):
    config = parse_config(argv)
    try:
        return COMMANDS[config.subcommand](config)
    except ConvergenceError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"varhardy {config.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def config_dict(config):
    """The keys of ``config`` that its subcommand accepts, ready for ``--config``."""
    sub = build_parser()._subparsers._group_actions[0].choices[config.subcommand]
    accepted = {a.dest for a in sub._actions} & CONFIG_KEYS
    return {k: v for k, v in asdict(config).items() if k in accepted or k == "subcommand"}


if __name__ == "__main__":
    sys.exit(main())
