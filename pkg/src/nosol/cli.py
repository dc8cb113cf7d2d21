"""Command-line surface: verify, construct, search, sweep, alpha, rate.

Exit codes: 0 verified clean, 1 witness found, 2 budget exhausted,
3 best-effort only (nothing exhausted), 64 malformed input, 65 recipe
precondition violation.  NOSOL_BUDGET overrides the default node budget.
Every emitted certificate file gets a sibling .manifest.json recording the
command, config, wall time, and budget that produced it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time

from . import __version__
from .certificates import (
    MODE_ALL,
    MODE_DISTINCT,
    Certificate,
    load_certificate,
    make_digit_set,
    save_certificate,
    tight_base,
)
from .constructions import (
    ConstructionError,
    PipelineConfig,
    coprime_power_digits,
    distinct_var_digits,
    geometric_digits,
    lift,
    double_progression_digits,
    shift_transfer,
    spaced_digits,
    three_coefficient_pipeline,
    two_var_digits,
)
from .equations import make_equation, make_symmetric, normalize_generators
from .oracle import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    SolutionQuery,
    exhaustive_check,
)
from .rates import alpha_optimal, rate_report, random_tuple_sweep
from .search import SearchConfig, max_digit_set

EXIT_OK = 0
EXIT_WITNESS = 1
EXIT_BUDGET = 2
EXIT_BEST_EFFORT = 3
EXIT_USAGE = 64
EXIT_PRECONDITION = 65

AUTO_GRID = (4, 8, 16, 32, 64, 128)
EXTENDED_GRID = AUTO_GRID + (256, 512)


def _default_budget() -> int:
    raw = os.environ.get("NOSOL_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise SystemExit(EXIT_USAGE)
    return DEFAULT_BUDGET


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_manifest(cert_path: str, argv, budget: int, started: float,
                    config: dict) -> None:
    manifest = {
        "schema": 1,
        "command": ["nosol"] + list(argv),
        "tool_version": __version__,
        "wall_seconds": round(time.monotonic() - started, 3),
        "budget": budget,
        "config": config,
        "certificates": [os.path.basename(cert_path)],
    }
    _atomic_write(cert_path + ".manifest.json",
                  json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _equation_from_args(args):
    if getattr(args, "sym", None):
        gens = normalize_generators(int(x) for x in args.sym.split(","))
        return make_symmetric(gens)
    if getattr(args, "eq", None):
        return make_equation(int(x) for x in args.eq.split(","))
    raise ValueError("specify an equation with --sym or --eq")


def _read_set(args) -> tuple[int, ...]:
    if args.set is not None:
        return tuple(sorted({int(x) for x in args.set.split(",")}))
    with open(args.set_file, encoding="utf-8") as fh:
        return tuple(sorted({int(line) for line in fh if line.strip()}))


# ---------------------------------------------------------------------------


def cmd_verify(args, argv) -> int:
    budget = args.budget or _default_budget()
    try:
        if args.cert:
            cert = load_certificate(args.cert)
            eq = cert.equation
            values = cert.digit_set.digits
            distinct = cert.digit_set.mode == MODE_DISTINCT or args.distinct
        else:
            eq = _equation_from_args(args)
            values = _read_set(args)
            distinct = args.distinct
        query = SolutionQuery(eq, values, distinct, budget)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        solution, nodes = exhaustive_check(query)
    except BudgetExhausted as exc:
        _emit({"status": "budget-exhausted", "nodes": exc.nodes})
        return EXIT_BUDGET
    if solution is None:
        _emit({"status": "no-nontrivial-solution", "nodes": nodes,
               "set_size": len(values), "mode": "distinct" if distinct else "all"})
        return EXIT_OK
    _emit({"status": "witness", "witness": list(solution.assignment),
           "nodes": nodes})
    return EXIT_WITNESS


def cmd_construct(args, argv) -> int:
    started = time.monotonic()
    budget = args.budget or _default_budget()
    try:
        if args.recipe == "geometric":
            cert = geometric_digits(args.m, args.k, budget)
        elif args.recipe == "two-var":
            cert = two_var_digits(args.a, args.b, budget)
        elif args.recipe == "coprime-power":
            cert = coprime_power_digits(args.a, args.b, args.k, budget)
        elif args.recipe == "spaced":
            gens = [int(x) for x in args.gens.split(",")]
            cert = spaced_digits(gens, args.s_factor, budget)
        elif args.recipe == "thm3":
            cfg = PipelineConfig(alpha=args.alpha, budget=budget,
                                 literal_constants=args.literal_constants)
            if args.alpha2 is not None:
                cfg.alpha2_small = args.alpha2
            result = three_coefficient_pipeline(args.a, args.b, args.c, cfg)
            if result.status != "certified":
                _emit({"status": result.status, "case": result.case,
                       "plan": result.plan})
                return EXIT_BUDGET
            cert = result.certificate
        elif args.recipe == "section5":
            cert = double_progression_digits(args.d, budget)
        elif args.recipe == "distinct-var":
            cert = distinct_var_digits(args.m, budget)
        elif args.recipe == "shift":
            source = load_certificate(args.cert)
            i_shifts = [int(x) for x in args.i.split(",")]
            j_shifts = [int(x) for x in args.j.split(",")]
            cert = shift_transfer(source, i_shifts, j_shifts, budget)
        else:
            print(f"error: unknown recipe {args.recipe}", file=sys.stderr)
            return EXIT_USAGE
    except BudgetExhausted as exc:
        _emit({"status": "budget-exhausted", "nodes": exc.nodes})
        return EXIT_BUDGET
    except (TypeError, AttributeError):
        print(f"error: recipe {args.recipe} is missing required parameters",
              file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ConstructionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION

    out = args.out or f"{args.recipe}.cert.json"
    save_certificate(cert, out)
    config = {k: v for k, v in vars(args).items()
              if k not in ("func", "out") and v is not None}
    _write_manifest(out, argv, budget, started, config)

    if args.N:
        try:
            lifted = lift(cert, args.N, budget)
        except (ValueError, ConstructionError) as exc:
            print(f"error: lift failed: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        set_path = args.set_out or out + ".set"
        _atomic_write(set_path,
                      "\n".join(str(x) for x in lifted.elements) + "\n")
        _emit({"certificate": out, "rate": cert.rate.to_json(),
               "lifted_size": lifted.size, "lifted_file": set_path})
    else:
        _emit({"certificate": out, "rate": cert.rate.to_json()})
    return EXIT_OK


def cmd_search(args, argv) -> int:
    started = time.monotonic()
    budget = args.budget or _default_budget()
    try:
        eq = _equation_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    s = eq.side_sum
    if args.L:
        grid = [args.L]
    elif args.L_grid and args.L_grid != "auto":
        try:
            grid = [int(x) for x in args.L_grid.split(",")]
        except ValueError as exc:
            print(f"error: bad --L-grid: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        factors = EXTENDED_GRID if args.extended else AUTO_GRID
        grid = [s * m + 1 for m in factors]

    report = None
    if args.progress:
        def report(event):
            json.dump(event, sys.stdout, sort_keys=True)
            sys.stdout.write("\n")
            sys.stdout.flush()

    mode = "exact" if args.exact else "anytime"
    rows = []
    best_cert = None
    per_l_budget = max(budget // len(grid), 1)
    for L in grid:
        cfg = SearchConfig(budget=per_l_budget, mode=mode, report=report)
        result = max_digit_set(eq, L, cfg, distinct=args.distinct)
        candidates = []
        for digits in (result.digits, result.best_rate_digits):
            if len(digits) >= 2 and max(digits) >= 1:
                base = tight_base(eq, digits)
                mode_name = MODE_DISTINCT if args.distinct else MODE_ALL
                cert = Certificate(
                    make_digit_set(base, digits, eq, mode_name),
                    verified=True, oracle_nodes=result.nodes,
                    meta={"kind": "search", "search_base": L,
                          "exhausted": result.exhausted})
                candidates.append(cert)
        for cert in candidates:
            if best_cert is None or cert.rate > best_cert.rate:
                best_cert = cert
        rows.append({"L": L, "size": len(result.digits),
                     "digits": list(result.digits),
                     "rate": (candidates[0].rate.decimal if candidates else 0.0),
                     "best_rate": max((c.rate.decimal for c in candidates),
                                      default=0.0),
                     "exhausted": result.exhausted,
                     "nodes": result.nodes})

    out = {"schema": 1, "table": rows}
    exit_code = EXIT_OK
    if best_cert is not None:
        cert_path = args.out or "search.cert.json"
        save_certificate(best_cert, cert_path)
        _write_manifest(cert_path, argv, budget, started,
                        {"grid": grid, "mode": mode, "distinct": args.distinct})
        out["best"] = {"certificate": cert_path,
                       "rate": best_cert.rate.to_json(),
                       "base": best_cert.digit_set.base,
                       "digits": list(best_cert.digit_set.digits)}
    if not any(row["exhausted"] for row in rows):
        exit_code = EXIT_BEST_EFFORT
    _emit(out)
    return exit_code


def cmd_sweep(args, argv) -> int:
    budget = args.budget or _default_budget()
    try:
        rep = random_tuple_sweep(args.k, args.C, args.eps,
                                 samples=args.samples, seed=args.seed,
                                 budget=budget)
    except BudgetExhausted as exc:
        _emit({"status": "budget-exhausted", "nodes": exc.nodes})
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(rep.to_json())
    return EXIT_OK if rep.bound_ok else EXIT_WITNESS


def cmd_alpha(args, argv) -> int:
    try:
        params = alpha_optimal(args.beta, args.q)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit({"schema": 1, "alpha": params.alpha, "beta": params.beta,
           "q": params.q, "rate": params.rate,
           "one_over_rate": 1.0 / params.rate, "residual": params.residual})
    return EXIT_OK


def cmd_rate(args, argv) -> int:
    try:
        cert = load_certificate(args.cert)
        report = rate_report(cert)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nosol",
        description="Construct, search for, and certify solution-free sets "
                    "for invariant linear equations.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_equation_args(p):
        p.add_argument("--sym", help="comma-separated symmetric generators")
        p.add_argument("--eq", help="comma-separated raw coefficients (sum 0)")

    p = sub.add_parser("verify", help="exhaustively check a set or certificate")
    add_equation_args(p)
    p.add_argument("--set", help="inline comma-separated integers")
    p.add_argument("--set-file", help="file of decimal integers, one per line")
    p.add_argument("--cert", help="certificate JSON to re-verify")
    p.add_argument("--distinct", action="store_true",
                   help="require all variables pairwise distinct")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="run a named construction")
    p.add_argument("recipe", choices=["geometric", "two-var", "coprime-power",
                                      "spaced", "thm3", "section5",
                                      "distinct-var", "shift"])
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--s-factor", type=int, help="spacing factor for spaced")
    p.add_argument("--gens", help="comma-separated generators for spaced")
    p.add_argument("--alpha", type=float)
    p.add_argument("--alpha2", type=float)
    p.add_argument("--literal-constants", action="store_true",
                   help="use the literal asymptotic thresholds in thm3")
    p.add_argument("--cert", help="source certificate for shift")
    p.add_argument("--i", help="comma-separated left shifts for shift")
    p.add_argument("--j", help="comma-separated right shifts for shift")
    p.add_argument("--N", type=int, help="also materialize the lift below N")
    p.add_argument("--set-out", help="path for the lifted set file")
    p.add_argument("-o", "--out", help="certificate output path")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="search digit alphabets over a base grid")
    add_equation_args(p)
    p.add_argument("--L", type=int, help="single base instead of a grid")
    p.add_argument("--L-grid", dest="L_grid", default="auto",
                   help="'auto' or comma-separated explicit bases")
    p.add_argument("--extended", action="store_true",
                   help="extend the auto grid to s*512+1")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--distinct", action="store_true")
    p.add_argument("--progress", action="store_true",
                   help="stream line-delimited JSON progress events")
    p.add_argument("-o", "--out", help="best certificate output path")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="random-tuple injectivity sweep")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--C", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--samples", type=int, help="Monte-Carlo sample count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("alpha", help="three-coefficient rate optimization")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--q", type=float, default=0.499)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("rate", help="rate report for a certificate")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_rate)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; remap to the documented code
        if exc.code not in (0, None):
            return EXIT_USAGE
        return 0
    return args.func(args, argv)


if __name__ == "__main__":
    sys.exit(main())
