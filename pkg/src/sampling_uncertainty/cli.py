"""Command-line front end.

Subcommands emit plot-ready CSV (default) or JSON::

    sampling-uncertainty bound --m 10000 --n 10000 --epsilon 1e-6 --beta 0.3 --c 0.5 --w 0.05
    sampling-uncertainty rate-curve --grid 1000:1000000:31 --log
    sampling-uncertainty fig1 --grid 0:1:101
    sampling-uncertainty sampling --grid 4,8,16 --delta 0.25 --trials 20000
    sampling-uncertainty verify --seed 7

Exit codes: 0 success, 1 a verified property was violated, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import __version__
from .bounds import BoundParams, theorem_bound
from .entropy import binary_entropy, min_entropy_classical
from .qrng import asymptotic_rate, rate_curve
from .sampling import EXACT_MAX_N, error_prob_bound, error_prob_exact, error_prob_monte_carlo
from .suites import SUITE_NAMES, run_suite

FORMULAS = {"paper": "paper_final", "two-log": "two_log"}

COLUMNS = {
    "bound": ["m", "n", "epsilon", "epsilon_hat", "beta", "c", "w", "delta",
              "smoothing", "entropy_lower_bound", "failure_prob", "vacuous"],
    "rate-curve": ["N", "n", "m", "delta", "ell", "rate", "vacuous", "asymptote"],
    "fig1": ["p", "shannon", "min_entropy"],
    "sampling": ["N", "k", "delta", "exact", "monte_carlo", "stderr", "bound"],
    "verify": ["suite", "checked", "violations", "passed"],
}


class UsageError(Exception):
    pass


def _fmt(x: Any) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        if math.isnan(x):
            return "nan"
        return format(float(x), ".12g")
    return str(x)


def _json_value(x: Any) -> Any:
    if isinstance(x, bool) or isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return None if not math.isfinite(x) else float(format(float(x), ".12g"))
    return x


def parse_grid(text: str | None, log_spaced: bool = False, integer: bool = False) -> list:
    """Parse ``"a,b,c"`` or ``"start:stop:count"`` (inclusive endpoints)."""
    if text is None or text.strip() == "":
        return []
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            start, stop, count = float(start), float(stop), int(count)
            if count < 0:
                raise ValueError
            if log_spaced:
                if start <= 0 or stop <= 0:
                    raise ValueError
                vals = np.geomspace(start, stop, count)
            else:
                vals = np.linspace(start, stop, count)
            vals = vals.tolist()
        else:
            vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad grid {text!r}; expected a,b,c or start:stop:count") from None
    if integer:
        out = []
        for v in vals:
            r = int(round(v))
            if r not in out:
                out.append(r)
        return out
    return vals


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def cmd_bound(args) -> tuple[list[dict], int]:
    _require(args, "m", "n", "epsilon", "beta", "c", "w")
    try:
        params = BoundParams(m=args.m, n=args.n, epsilon=args.epsilon, beta=args.beta,
                             c=args.c, w_obs=args.w, epsilon_hat=args.epsilon_hat)
        res = theorem_bound(params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    row = {
        "m": params.m, "n": params.n, "epsilon": params.epsilon,
        "epsilon_hat": params.epsilon_hat, "beta": params.beta, "c": params.c,
        "w": params.w_obs, "delta": res.delta, "smoothing": res.smoothing,
        "entropy_lower_bound": res.entropy_lower_bound,
        "failure_prob": res.failure_prob, "vacuous": res.vacuous,
    }
    return [row], 0


def cmd_rate_curve(args) -> tuple[list[dict], int]:
    if args.grid is not None:
        grid = parse_grid(args.grid, log_spaced=args.log, integer=True)
    elif args.N_total is not None:
        grid = [args.N_total]
    else:
        grid = parse_grid("1000:1000000:31", log_spaced=True, integer=True)
    eps = 1e-36 if args.epsilon is None else args.epsilon
    beta = 0.33 if args.beta is None else args.beta
    w = 0.2 if args.w is None else args.w
    frac = 0.07 if args.m_fraction is None else args.m_fraction
    try:
        points = rate_curve(grid, frac, eps, beta, w, FORMULAS[args.formula], skip_infeasible=False)
        asym = asymptotic_rate(w)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [
        {"N": p.N_total, "n": p.n, "m": p.m, "delta": p.delta, "ell": p.ell,
         "rate": p.rate, "vacuous": p.vacuous, "asymptote": asym}
        for p in points
    ]
    return rows, 0


def cmd_fig1(args) -> tuple[list[dict], int]:
    grid = parse_grid(args.grid if args.grid is not None else "0:1:101")
    rows = []
    for p in grid:
        if not 0.0 <= p <= 1.0:
            raise UsageError(f"p={p} outside [0, 1]")
        rows.append({"p": p, "shannon": binary_entropy(p), "min_entropy": min_entropy_classical([p, 1.0 - p])})
    return rows, 0


def cmd_sampling(args) -> tuple[list[dict], int]:
    Ns = parse_grid(args.grid if args.grid is not None else "4,8,16,32,64", integer=True)
    deltas = [args.delta] if args.delta is not None else [0.1, 0.25]
    trials = 10_000 if args.trials is None else args.trials
    rows = []
    for N in Ns:
        if N > EXACT_MAX_N:
            raise UsageError(f"exact path is limited to N <= {EXACT_MAX_N}; got N={N}")
        ks = [args.k] if args.k is not None else [max(1, N // 2)]
        for k in ks:
            for delta in deltas:
                try:
                    exact = error_prob_exact(N, k, delta)
                    bound = error_prob_bound(N, k, delta, check=False)
                    if trials > 0:
                        seed = [args.seed, N, k, int(round(delta * 1e6))]
                        mc, se = error_prob_monte_carlo(N, k, delta, trials=trials, rng=np.random.default_rng(seed))
                    else:
                        mc, se = math.nan, math.nan
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
                rows.append({"N": N, "k": k, "delta": delta, "exact": exact,
                             "monte_carlo": mc, "stderr": se, "bound": bound})
    return rows, 0


def cmd_verify(args) -> tuple[list[dict], int]:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    if args.trials is not None and args.trials <= 0:
        print("warning: trials=0, suites skipped (vacuous pass)", file=sys.stderr)
    rows, status = [], 0
    for name in names:
        res = run_suite(name, args.trials, args.seed, bound_offset=args.inject_offset)
        rows.append({"suite": name, "checked": res.checked, "violations": res.violations, "passed": res.passed})
        if not res.passed:
            status = 1
            replay = {"suite": name, "seed": args.seed, "instance": res.first_violation}
            print("violation: " + json.dumps(replay, sort_keys=True), file=sys.stderr)
    return rows, status


COMMANDS = {
    "bound": cmd_bound,
    "rate-curve": cmd_rate_curve,
    "fig1": cmd_fig1,
    "sampling": cmd_sampling,
    "verify": cmd_verify,
}


def _config_echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "format")}


def render(command: str, rows: list[dict], args, fmt: str) -> str:
    cols = COLUMNS[command]
    if fmt == "json":
        doc = {
            "metadata": {"version": __version__, "command": command, "seed": args.seed,
                         "config": _config_echo(args)},
            "rows": [{c: _json_value(r[c]) for c in cols} for r in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in rows:
        writer.writerow([_fmt(r[c]) for c in cols])
    return buf.getvalue()


def _seed(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--epsilon", type=float)
    common.add_argument("--epsilon-hat", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--N", type=int, dest="N_total")
    common.add_argument("--k", type=int, help="sample size for the sampling report")
    common.add_argument("--m-fraction", type=float)
    common.add_argument("--w", type=float)
    common.add_argument("--c", type=float)
    common.add_argument("--delta", type=float)
    common.add_argument("--trials", type=int, help="randomized trials (verify: per suite; lemma2 is exhaustive)")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--grid", help="comma list or start:stop:count")
    common.add_argument("--log", action="store_true", help="geometric spacing for start:stop:count grids")
    common.add_argument("--formula", choices=sorted(FORMULAS), default="paper")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")

    parser = _Parser(prog="sampling-uncertainty", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("bound", parents=[common], help="evaluate the sampling min-entropy bound")
    sub.add_parser("rate-curve", parents=[common], help="QRNG rate versus number of signals")
    sub.add_parser("fig1", parents=[common], help="binary Shannon vs min-entropy")
    sub.add_parser("sampling", parents=[common], help="exact / Monte Carlo / analytic sampling error")
    verify = sub.add_parser("verify", parents=[common], help="run the verification suites")
    verify.add_argument("--suite", choices=("all",) + SUITE_NAMES, default="all")
    verify.add_argument("--inject-offset", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        rows, status = COMMANDS[args.command](args)
        text = render(args.command, rows, args, args.format)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
