"""Command-line entry point: `qrhunt <subcommand> [options]`.

Exit status is 0 on success, 1 for bad arguments or out-of-domain input,
and 2 when a check fails or a search comes back empty.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .analytic import (
    DEFAULT_RHO_STEP,
    Lemma6Input,
    dickman_rho,
    lemma6_sides,
    lemma6_sweep,
    remark_sides,
    remark_sweep,
    smooth_density_report,
)
from .arith import DEFAULT_SEGMENT, RangeError, kronecker
from .charsums import prefix_max, short_sum, weight, weight_expanded
from .counting import build_rtable, psi_smooth, r_direct
from .experiments import CheckFailed, grid_experiment, hunt, ratio_experiment
from .report import ExperimentReport

log = logging.getLogger("qrhunt")

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2
CONFIG_KEYS = {"segment_size": int, "rho_step": float, "threads": int}


class UsageError(Exception):
    pass


class EmptyResult(Exception):
    def __init__(self, report: ExperimentReport):
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def read_config(path: str) -> dict:
    """Parse a key=value defaults file; blank lines and '#' comments are skipped."""
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = (s.strip() for s in line.partition("="))
            if not sep or key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: expected one of {sorted(CONFIG_KEYS)} as key=value")
            out[key] = CONFIG_KEYS[key](value)
    return out


def _settings(args) -> dict:
    cfg = read_config(args.config) if args.config else {}
    threads = args.threads
    if threads is None and os.environ.get("QRHUNT_THREADS"):
        threads = int(os.environ["QRHUNT_THREADS"])
    if threads is None:
        threads = cfg.get("threads", 1)
    if threads < 1:
        raise UsageError("--threads must be at least 1")
    return {
        "threads": threads,
        "segment_size": args.segment_size or cfg.get("segment_size", DEFAULT_SEGMENT),
        "rho_step": cfg.get("rho_step", DEFAULT_RHO_STEP),
    }


def _cmd_kronecker(args, cfg):
    return ExperimentReport("kronecker", {"a": args.a, "n": args.n}, {"value": kronecker(args.a, args.n)})


def _cmd_sum(args, cfg):
    results = {"value": short_sum(args.p, args.n)}
    if args.max:
        n_star, best = prefix_max(args.p, args.n)
        results.update(argmax=n_star, max=best)
    return ExperimentReport("sum", {"p": args.p, "N": args.n}, results)


def _cmd_weight(args, cfg):
    fn = weight_expanded if args.expanded else weight
    return ExperimentReport("weight", {"p": args.p, "M": args.m}, {"value": fn(args.p, args.m)})


def _cmd_rvalues(args, cfg):
    params = {"N": args.n, "M": args.m}
    if args.c is not None:
        return ExperimentReport("rtable", {**params, "c": args.c}, {"N": args.n, "M": args.m, "counts": {str(args.c): r_direct(args.c, args.n, args.m)}})
    table = build_rtable(args.n, args.m, workers=cfg["threads"])
    return ExperimentReport("rtable", params, {"N": table.N, "M": table.M, "counts": {str(b): r for b, r in table.counts.items()}})


def _cmd_psi(args, cfg):
    if args.a is None:
        return ExperimentReport("psi", {"N": args.n, "M": args.m}, {"value": psi_smooth(args.n, args.m)})
    return ExperimentReport("psi", {"N": args.n, "M": args.m, "A": args.a}, smooth_density_report(args.a, args.n, args.m, cfg["rho_step"]))


def _cmd_rho(args, cfg):
    step = args.step or cfg["rho_step"]
    return ExperimentReport("rho", {"u": args.u, "step": step}, {"value": dickman_rho(args.u, step)})


def _cmd_lemma6(args, cfg):
    if args.sweep:
        sweep = remark_sweep if args.remark else lemma6_sweep
        rows = sweep(args.nx, args.nbeta, args.xmax)
        report = ExperimentReport(
            "sweep",
            {"case": "remark" if args.remark else "lemma6", "nx": args.nx, "nbeta": args.nbeta, "xmax": args.xmax},
            {
                "points": len(rows),
                "min_margin": min(r[4] for r in rows),
                "holds": all(r[2] >= r[3] for r in rows),
                "rows": [dict(zip(("x", "beta", "lhs", "rhs", "margin"), r)) for r in rows],
            },
        )
        if not report.results["holds"]:
            raise CheckFailed(report.to_text())
        return report
    if args.x is None or args.beta is None:
        raise UsageError("lemma6 needs --x and --beta, or --sweep")
    inp = Lemma6Input(args.x, args.beta)
    lhs, rhs = (remark_sides if args.remark else lemma6_sides)(inp)
    report = ExperimentReport("lemma6", {"x": args.x, "beta": args.beta, "case": "remark" if args.remark else "lemma6"}, {"lhs": lhs, "rhs": rhs, "margin": lhs - rhs, "holds": lhs >= rhs})
    if lhs < rhs:
        raise CheckFailed(report.to_text())
    return report


def _cmd_hunt(args, cfg):
    res = hunt(args.x, args.m, args.n, args.limit, workers=cfg["threads"], segment_size=cfg["segment_size"])
    report = ExperimentReport("hunt", res.params.as_dict() | {"limit": args.limit}, res.as_dict())
    if not res.witnesses:
        raise EmptyResult(report)
    return report


def _cmd_ratio(args, cfg):
    res = ratio_experiment(args.x, args.m, args.n, workers=cfg["threads"], segment_size=cfg["segment_size"])
    report = ExperimentReport("ratio", {"x": args.x, "M": args.m, "N": args.n}, res)
    if res["ratio"] is None:
        raise EmptyResult(report)
    return report


def _cmd_grid(args, cfg):
    return ExperimentReport("grid", {"p": args.p, "z": args.z}, grid_experiment(args.p, args.z).as_dict())


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--threads", type=int, default=None, help="worker processes (fallback: $QRHUNT_THREADS)")
    common.add_argument("--seed", type=int, default=None, help="reserved; no command is randomized")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--config", default=None, help="key=value defaults file")
    common.add_argument("--segment-size", type=int, default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="qrhunt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    p = add("kronecker", _cmd_kronecker, "Kronecker symbol (a/n)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("sum", _cmd_sum, "short character sum S(p, N)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max", action="store_true", help="also report the peak prefix sum")

    p = add("weight", _cmd_weight, "prime weight w_p(M)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--expanded", action="store_true", help="use the divisor expansion")

    p = add("rvalues", _cmd_rvalues, "pair counts r(b) for (N, M)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", type=int, default=None, help="only count bucket c, by brute force")

    p = add("psi", _cmd_psi, "count of M-smooth n <= N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=float, default=None, help="compare against rho(u) N and the exp bound for this A")

    p = add("rho", _cmd_rho, "Dickman rho(u)")
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--step", type=float, default=None)

    p = add("lemma6", _cmd_lemma6, "x - ((2x)^b - x^b)/b against its lower bounds")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--remark", action="store_true", help="use the (1-b)x/e^2 bound valid for 1/2 <= b < 1")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--nx", type=int, default=200)
    p.add_argument("--nbeta", type=int, default=50)
    p.add_argument("--xmax", type=float, default=1e8)

    p = add("hunt", _cmd_hunt, "primes in (x, 2x] with every q <= M a residue, and their S(p, N)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, default=10)

    p = add("ratio", _cmd_ratio, "S1/S0 against r(1)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("grid", _cmd_grid, "residue count on the z-by-z grid X + Y")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    return parser


def _emit(report: ExperimentReport, args) -> None:
    fmt = args.format or ("csv" if report.kind == "sweep" else "text")
    text = report.render(fmt)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
        report = args.fn(args, _settings(args))
    except (UsageError, ValueError, RangeError) as exc:
        print(f"qrhunt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EmptyResult as exc:
        _emit(exc.report, args)
        print(f"qrhunt: {args.command}: empty result", file=sys.stderr)
        return EXIT_CHECK
    except CheckFailed as exc:
        print(f"qrhunt: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    _emit(report, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
