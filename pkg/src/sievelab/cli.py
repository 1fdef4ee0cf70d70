"""Command-line interface.

Subcommands: walk, spectrum, closure, residual, bound, experiment, fit,
scenarios.  Exit codes: 0 success, 2 bad configuration or arguments,
3 budget or convergence failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from . import lab, sieve, walker
from .errors import ConfigError, DomainError, ResourceError, SievelabError
from .quotients import AbelianQuotient, MatrixQuotient, bfs_closure, is_prime
from .spectra import second_eigenvalue, spectrum_csv
from .thinsets import residual

SCHEMA_VERSION = lab.SCHEMA_VERSION


def parse_grid(text: str) -> List[int]:
    """Either a comma list '4,8,16' or 'geometric:start:stop' meaning
    start, 2*start, 4*start, ... up to stop."""
    text = text.strip()
    if text.startswith("geometric:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError("geometric grid must be geometric:start:stop")
        try:
            start, stop = int(parts[1]), int(parts[2])
        except ValueError:
            raise DomainError(f"bad geometric grid {text!r}")
        if start < 1 or stop < start:
            raise DomainError("need 1 <= start <= stop")
        grid = []
        n = start
        while n <= stop:
            grid.append(n)
            n *= 2
        return grid
    try:
        grid = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise DomainError(f"bad grid {text!r}")
    if not grid:
        raise DomainError("empty grid")
    return grid


def _emit(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _quotient_for(scenario, p: int, q: Optional[int] = None):
    if scenario.group == "z_additive":
        if q is not None:
            raise DomainError("pair moduli apply to matrix groups only")
        return AbelianQuotient(1, p)
    if scenario.group == "torus_23":
        if q is not None:
            raise DomainError("pair moduli apply to matrix groups only")
        return AbelianQuotient(2, p)
    dim = 2 if scenario.group == "sl2" else 3
    moduli = (p,) if q is None else (p, q)
    return MatrixQuotient(dim, moduli)


def _cmd_walk(args) -> int:
    scenario = lab.get_scenario(args.scenario)
    if args.exact:
        dist = walker.exact_distribution(scenario.generators, args.n)
        obj = {"schema_version": SCHEMA_VERSION, "scenario": scenario.name,
               "n": args.n, "mode": "exact",
               "distribution": dist.to_json_obj()}
        _emit(_json_text(obj), args.out)
        return 0
    config = walker.WalkConfig(generators=scenario.generators, n=args.n,
                               m=args.trials, seed=args.seed)
    trials = []
    for trial in range(args.trials):
        path = walker.run_walk(config, trial)
        trials.append([g.to_json_obj() for g in path])
    obj = {"schema_version": SCHEMA_VERSION, "scenario": scenario.name,
           "n": args.n, "seed": args.seed, "trials": trials}
    _emit(_json_text(obj), args.out)
    return 0


def _cmd_spectrum(args) -> int:
    scenario = lab.get_scenario(args.scenario)
    quotient = _quotient_for(scenario, args.prime, args.prime2)
    spec = second_eigenvalue(scenario.generators, quotient)
    if args.format == "csv":
        _emit(spectrum_csv([spec]), args.out)
    else:
        obj = {"schema_version": SCHEMA_VERSION,
               "scenario": scenario.name, "quotient": spec.quotient_label,
               "order": spec.order, "a_size": spec.a_size,
               "pi_1": spec.pi_1, "pi_min": spec.pi_min,
               "pi_star": spec.pi_star, "method": spec.method,
               "residual": spec.residual}
        _emit(_json_text(obj), args.out)
    return 0


def _cmd_closure(args) -> int:
    scenario = lab.get_scenario(args.scenario)
    quotient = _quotient_for(scenario, args.prime, args.prime2)
    report = bfs_closure(scenario.generators, quotient)
    obj = report.to_json_obj()
    obj["schema_version"] = SCHEMA_VERSION
    obj["surjective"] = report.surjective
    _emit(_json_text(obj), args.out)
    return 0


def _cmd_residual(args) -> int:
    scenario = lab.get_scenario(args.scenario)
    quotient = scenario.oracle.quotient_for_prime(args.prime)
    report = residual(scenario.oracle, quotient, mode=args.mode,
                      samples=args.trials, seed=args.seed)
    obj = report.to_json_obj()
    obj["schema_version"] = SCHEMA_VERSION
    _emit(_json_text(obj), args.out)
    return 0


def _cmd_bound(args) -> int:
    grid = parse_grid(args.grid)
    rows = []
    for n in grid:
        bnd = sieve.plan_for_n(n, args.a_size, args.C, args.D, args.alpha)
        rows.append({"n": n, "t": bnd.t, "n_min": str(bnd.n_min),
                     "bound": bnd.bound_float, "regime": bnd.regime})
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "t", "n_min", "bound", "regime"])
        for r in rows:
            writer.writerow([r["n"], r["t"], r["n_min"],
                             repr(r["bound"]), r["regime"]])
        _emit(buf.getvalue(), args.out)
    else:
        obj = {"schema_version": SCHEMA_VERSION, "a_size": args.a_size,
               "C": args.C, "D": args.D, "alpha": args.alpha, "plans": rows}
        _emit(_json_text(obj), args.out)
    return 0


def _cmd_experiment(args) -> int:
    grid = parse_grid(args.grid)
    table = lab.run_experiment(args.scenario, grid, args.trials, args.seed,
                               mode=args.mode)
    if args.format == "csv":
        _emit(table.csv(), args.out)
    else:
        obj = {"schema_version": SCHEMA_VERSION, "scenario": args.scenario,
               "seed": args.seed, "trials": args.trials,
               "rows": table.to_json_obj()}
        _emit(_json_text(obj), args.out)
    return 0


def _read_rows_csv(path: str) -> List[lab.ExperimentRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = []
        for rec in reader:
            tb = rec.get("theory_bound", "")
            rows.append(lab.ExperimentRow(
                scenario=rec["scenario"], n=int(rec["n"]),
                trials=int(rec["trials"]), hits=int(rec["hits"]),
                unknown=int(rec["unknown"]), estimate=float(rec["estimate"]),
                ci_halfwidth=float(rec["ci_halfwidth"]),
                theory_bound=(None if tb in ("", None) else float(tb)),
                regime=rec["regime"]))
    if not rows:
        raise DomainError(f"no rows in {path}")
    return rows


def _cmd_fit(args) -> int:
    rows = _read_rows_csv(args.input)
    fit = lab.fit_decay(rows, min_trials=args.min_trials)
    obj = fit.to_json_obj()
    obj["schema_version"] = SCHEMA_VERSION
    _emit(_json_text(obj), args.out)
    return 0


def _cmd_scenarios(args) -> int:
    if args.describe is not None:
        _emit(_json_text(lab.describe(args.describe)), args.out)
        return 0
    if args.format == "json":
        obj = {"schema_version": SCHEMA_VERSION,
               "scenarios": [lab.describe(name) for name in lab.list_scenarios()]}
        _emit(_json_text(obj), args.out)
        return 0
    lines = []
    for name in lab.list_scenarios():
        s = lab.get_scenario(name)
        lines.append(f"{name}  [{s.regime}]  {s.description}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _add_common(p, trials_default=10000):
    p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    p.add_argument("--trials", type=int, default=trials_default,
                   help="Monte Carlo trial count")
    p.add_argument("--out", default=None, help="write output to this path")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _prime_arg(text: str) -> int:
    p = int(text)
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sievelab",
        description="random walks on matrix groups, sieve bounds, thin-set decay")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("walk", help="simulate trajectories or the exact distribution")
    p.add_argument("--scenario", required=True)
    p.add_argument("--n", type=int, required=True, help="walk length")
    p.add_argument("--exact", action="store_true",
                   help="emit the exact n-step distribution instead of samples")
    _add_common(p, trials_default=1)
    p.set_defaults(func=_cmd_walk)

    p = sub.add_parser("spectrum", help="second eigenvalue of a quotient walk")
    p.add_argument("--scenario", required=True)
    p.add_argument("--prime", type=_prime_arg, required=True)
    p.add_argument("--prime2", type=_prime_arg, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("closure", help="subgroup generated in a finite quotient")
    p.add_argument("--scenario", required=True)
    p.add_argument("--prime", type=_prime_arg, required=True)
    p.add_argument("--prime2", type=_prime_arg, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("residual", help="density of the thin set mod p")
    p.add_argument("--scenario", required=True)
    p.add_argument("--prime", type=_prime_arg, required=True)
    p.add_argument("--mode", choices=("enumerate", "sample"), default="enumerate")
    _add_common(p, trials_default=100000)
    p.set_defaults(func=_cmd_residual)

    p = sub.add_parser("bound", help="sieve plans and decay bounds over a grid of n")
    p.add_argument("--a-size", type=int, required=True, dest="a_size")
    p.add_argument("--C", type=float, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--grid", default="geometric:16:1048576")
    _add_common(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("experiment", help="Monte Carlo sweep of a scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--grid", default="geometric:4:256",
                   help="comma list or geometric:start:stop")
    p.add_argument("--mode", choices=("mc", "exact"), default="mc")
    _add_common(p)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("fit", help="fit a decay model to an experiment CSV")
    p.add_argument("--input", required=True, help="CSV from the experiment subcommand")
    p.add_argument("--min-trials", type=int, default=0, dest="min_trials")
    _add_common(p)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("scenarios", help="list or describe built-in scenarios")
    p.add_argument("--describe", default=None, metavar="NAME")
    _add_common(p)
    p.set_defaults(func=_cmd_scenarios)

    return top


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"sievelab: config error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"sievelab: resource error: {exc}", file=sys.stderr)
        return 3
    except SievelabError as exc:
        print(f"sievelab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
