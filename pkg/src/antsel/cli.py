"""Command-line front end: grid evaluation and CSV emission.

Every data subcommand writes one CSV with a fixed, documented column
schema, preceded by ``#`` comment lines recording the exact parameters, so
outputs are byte-stable for identical invocations.  SINR is accepted in dB
and converted to linear exactly once, here.

Exit codes: 0 success, 2 invalid arguments or parameter combinations,
3 numerical diagnostic (solver or verification failure).
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from typing import Callable, Sequence

from . import __version__
from .capacity import (
    LinkParams,
    ergodic_approx,
    ergodic_bounds,
    ergodic_capacity,
    mean_selection_gain,
    outage_capacity,
    outage_probability,
    selection_gain_variance,
)
from .gumbel import (
    FitStrategy,
    approx_moments,
    convergence_error,
    normalizing_constants,
)
from .mimo import mimo_ergodic, mimo_outage, mimo_scheduled_ergodic
from .oracle import empirical_ergodic, ks_against
from .orderstats import (
    SelectionConfig,
    SolverError,
    max_cdf,
    quantile,
    tail_quantile,
)
from .scheduling import SchedulingScenario, gain_report, gain_table, scheduling_gain
from .streams import DEFAULT_SEED, McRun

SCHEMAS: dict[str, list[str]] = {
    "dist": ["n", "m", "strategy", "x", "exact_cdf", "approx_cdf"],
    "fit": ["n", "m", "strategy", "location", "scale", "mean", "variance"],
    "outage": ["n", "m", "rho_db", "p0", "exact", "approx", "approx_clamped"],
    "ergodic": ["n", "m", "rho_db", "exact", "quad_error", "lower", "upper", "approx"],
    "scheduling": [
        "n",
        "m",
        "users",
        "rho_db",
        "greedy",
        "round_robin",
        "gain_exact",
        "gain_approx",
        "fractional",
    ],
    "table1": ["m", "rho_db", "exact_gain", "approx_gain"],
    "mimo": [
        "n",
        "m",
        "rho_db",
        "p0",
        "users",
        "samples",
        "seed",
        "ergodic",
        "ergodic_stderr",
        "outage",
        "outage_stderr",
        "scheduled",
        "scheduled_stderr",
    ],
    "verify": ["check", "status", "detail"],
}

_STRATEGIES = {s.value: s for s in FitStrategy}


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def parse_int_grid(text: str) -> list[int]:
    """Integer grid: '7', '1,2,5', or inclusive range '1..20'."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo_i, hi_i = int(lo), int(hi)
        if hi_i < lo_i:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo_i, hi_i + 1))
    return [int(tok) for tok in text.split(",") if tok.strip()]


def parse_float_grid(text: str) -> list[float]:
    """Float grid: '5', '-5,0,5,10', or 'start:step:stop' (inclusive)."""
    text = text.strip()
    if ":" in text:
        start_s, step_s, stop_s = text.split(":", 2)
        start, step, stop = float(start_s), float(step_s), float(stop_s)
        if step <= 0:
            raise argparse.ArgumentTypeError(f"step must be positive in {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        if count < 1:
            raise argparse.ArgumentTypeError(f"empty grid {text!r}")
        return [start + i * step for i in range(count)]
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _fmt(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _mode_set(args: argparse.Namespace, allowed: tuple[str, ...]) -> set[str]:
    """Estimator selection for subcommands with alternatives.

    No --mode fills every value column; an explicit mode fills only that
    estimator's columns, keeping the schema fixed.
    """
    mode = getattr(args, "mode", None)
    if mode is None:
        return set(allowed)
    if mode not in allowed:
        raise ValueError(
            f"mode {mode!r} is not available here (choose from {', '.join(allowed)})"
        )
    return {mode}


def _emit(
    command: str,
    rows: list[list[object]],
    params: dict[str, object],
    out: str | None,
    formats: dict[str, Callable[[object], str]] | None = None,
) -> None:
    header = SCHEMAS[command]
    for row in rows:
        if len(row) != len(header):
            raise SolverError(f"internal schema mismatch for {command!r}")
    buf = io.StringIO()
    arg_text = " ".join(f"{k}={v}" for k, v in params.items())
    buf.write(f"# antsel {command} {arg_text}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    fmts = formats or {}
    for row in rows:
        writer.writerow(
            [fmts.get(name, _fmt)(val) for name, val in zip(header, row)]
        )
    text = buf.getvalue()
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _dist_grid(cfg: SelectionConfig, points: int) -> list[float]:
    """x grid spanning the bulk of the selection-gain distribution."""
    lo = quantile(cfg.n, 0.001 ** (1.0 / cfg.m))
    hi = tail_quantile(cfg.n, -math.expm1(math.log(0.999) / cfg.m))
    return [lo + (hi - lo) * i / (points - 1) for i in range(points)]


def cmd_dist(args: argparse.Namespace) -> int:
    strategy = _STRATEGIES[args.strategy]
    enabled = _mode_set(args, ("exact", "approx"))
    rows: list[list[object]] = []
    for n in args.n:
        for m in args.m:
            cfg = SelectionConfig(n, m)
            fit = normalizing_constants(cfg, strategy) if "approx" in enabled else None
            for x in _dist_grid(cfg, args.points):
                rows.append(
                    [
                        n,
                        m,
                        args.strategy,
                        x,
                        max_cdf(cfg, x) if "exact" in enabled else None,
                        fit.cdf(x) if fit is not None else None,
                    ]
                )
    _emit(
        "dist",
        rows,
        {"n": args.n, "m": args.m, "strategy": args.strategy, "points": args.points},
        args.out,
    )
    return 0


def cmd_fit(args: argparse.Namespace) -> int:
    strategy = _STRATEGIES[args.strategy]
    rows: list[list[object]] = []
    for n in args.n:
        for m in args.m:
            fit = normalizing_constants(SelectionConfig(n, m), strategy)
            mean, var = approx_moments(fit)
            rows.append([n, m, args.strategy, fit.location, fit.scale, mean, var])
    _emit(
        "fit", rows, {"n": args.n, "m": args.m, "strategy": args.strategy}, args.out
    )
    return 0


def cmd_outage(args: argparse.Namespace) -> int:
    enabled = _mode_set(args, ("exact", "approx"))
    rows: list[list[object]] = []
    for n in args.n:
        for m in args.m:
            cfg = SelectionConfig(n, m)
            for db in args.rho_db:
                link = LinkParams(db_to_linear(db))
                exact_val = (
                    outage_capacity(cfg, link, args.p0, "exact").value
                    if "exact" in enabled
                    else None
                )
                approx_val, clamped = None, None
                if "approx" in enabled and m >= 2:
                    approx = outage_capacity(cfg, link, args.p0, "gumbel")
                    approx_val, clamped = approx.value, int(approx.degenerate)
                rows.append([n, m, db, args.p0, exact_val, approx_val, clamped])
    _emit(
        "outage",
        rows,
        {"n": args.n, "m": args.m, "rho_db": args.rho_db, "p0": args.p0},
        args.out,
    )
    return 0


def cmd_ergodic(args: argparse.Namespace) -> int:
    enabled = _mode_set(args, ("exact", "bounds", "approx"))
    rows: list[list[object]] = []
    for n in args.n:
        for m in args.m:
            cfg = SelectionConfig(n, m)
            for db in args.rho_db:
                link = LinkParams(db_to_linear(db))
                exact_val = err_val = lower_val = upper_val = approx_val = None
                if "exact" in enabled:
                    exact = ergodic_capacity(cfg, link)
                    exact_val, err_val = exact.value, exact.error_estimate
                if "bounds" in enabled:
                    lower, upper = ergodic_bounds(cfg, link)
                    lower_val, upper_val = lower.value, upper.value
                if "approx" in enabled:
                    approx_val = ergodic_approx(cfg, link).value
                rows.append(
                    [n, m, db, exact_val, err_val, lower_val, upper_val, approx_val]
                )
    _emit(
        "ergodic",
        rows,
        {"n": args.n, "m": args.m, "rho_db": args.rho_db},
        args.out,
    )
    return 0


def cmd_scheduling(args: argparse.Namespace) -> int:
    enabled = _mode_set(args, ("exact", "approx"))
    rows: list[list[object]] = []
    for n in args.n:
        for m in args.m:
            for db in args.rho_db:
                scen = SchedulingScenario(
                    SelectionConfig(n, m), args.users, LinkParams(db_to_linear(db))
                )
                greedy = rr = exact = frac = approx = None
                if "exact" in enabled:
                    rep = gain_report(scen)
                    greedy, rr = rep.greedy.value, rep.round_robin.value
                    exact, frac = rep.exact_gain, rep.fractional
                    approx = rep.approx_gain if "approx" in enabled else None
                elif "approx" in enabled:
                    approx = scheduling_gain(scen, "approx")
                rows.append([n, m, args.users, db, greedy, rr, exact, approx, frac])
    _emit(
        "scheduling",
        rows,
        {"n": args.n, "m": args.m, "users": args.users, "rho_db": args.rho_db},
        args.out,
    )
    return 0


def cmd_table1(args: argparse.Namespace) -> int:
    enabled = _mode_set(args, ("exact", "approx"))
    if len(args.n) != 1:
        raise ValueError(f"table1 takes a single n, got {args.n}")
    cells = gain_table(users=args.users, n=args.n[0], rho_db=args.rho_db, m_values=args.m)
    rows: list[list[object]] = [
        [
            c.m,
            c.rho_db,
            c.exact if "exact" in enabled else None,
            c.approx if "approx" in enabled else None,
        ]
        for c in cells
    ]
    formats = {
        "exact_gain": lambda v: "" if v is None else f"{v:.4f}",
        "approx_gain": lambda v: "" if v is None else f"{v:.2f}",
    }
    _emit(
        "table1",
        rows,
        {"n": args.n, "m": args.m, "users": args.users, "rho_db": args.rho_db},
        args.out,
        formats=formats,
    )
    return 0


def cmd_mimo(args: argparse.Namespace) -> int:
    _mode_set(args, ("mc",))
    mc = McRun(args.samples, args.seed)
    rows: list[list[object]] = []
    for n in args.n:
        for m in args.m:
            for db in args.rho_db:
                link = LinkParams(db_to_linear(db))
                erg = mimo_ergodic(n, m, link, mc)
                if args.p0 is not None:
                    out_res = mimo_outage(n, m, link, args.p0, mc)
                    out_val, out_err = out_res.value, out_res.error_estimate
                else:
                    out_val, out_err = None, None
                if args.users is not None:
                    sched = mimo_scheduled_ergodic(n, m, args.users, link, mc)
                    sched_val, sched_err = sched.value, sched.error_estimate
                else:
                    sched_val, sched_err = None, None
                rows.append(
                    [
                        n,
                        m,
                        db,
                        args.p0,
                        args.users,
                        args.samples,
                        args.seed,
                        erg.value,
                        erg.error_estimate,
                        out_val,
                        out_err,
                        sched_val,
                        sched_err,
                    ]
                )
    _emit(
        "mimo",
        rows,
        {
            "n": args.n,
            "m": args.m,
            "rho_db": args.rho_db,
            "p0": args.p0,
            "users": args.users,
            "samples": args.samples,
            "seed": args.seed,
        },
        args.out,
    )
    return 0


# ----------------------------- verification -----------------------------


def _verify_checks(samples: int, seed: int) -> list[tuple[str, bool, str]]:
    results: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str) -> None:
        results.append((name, ok, detail))

    # Quadrature mean vs the exponential-maximum harmonic sum.
    worst = 0.0
    for m in (1, 3, 10):
        harmonic = sum(1.0 / k for k in range(1, m + 1))
        worst = max(worst, abs(mean_selection_gain(SelectionConfig(1, m)) - harmonic))
    record("mean-harmonic", worst <= 1e-7, f"max |quad - harmonic| = {worst:.2e}")

    # Ergodic capacity inside its closed-form sandwich.
    ok = True
    for n in (1, 2, 3):
        for m in (1, 5, 20):
            cfg = SelectionConfig(n, m)
            for rho in (10**-0.5, 10**0.5):
                link = LinkParams(rho)
                lower, upper = ergodic_bounds(cfg, link)
                val = ergodic_capacity(cfg, link).value
                ok &= lower.value - 1e-6 <= val <= upper.value + 1e-6
    record("capacity-sandwich", ok, "n in {1,2,3}, m in {1,5,20}, rho at -5/+5 dB")

    # Outage round trip.
    worst = 0.0
    for n in (1, 2):
        for m in (1, 4):
            cfg = SelectionConfig(n, m)
            for p0 in (0.01, 0.1, 0.5):
                link = LinkParams(10**0.5)
                c0 = outage_capacity(cfg, link, p0, "exact").value
                worst = max(worst, abs(outage_probability(cfg, link, c0) - p0))
    record("outage-round-trip", worst <= 1e-9, f"max |P(C(p0)) - p0| = {worst:.2e}")

    # Monte Carlo vs quadrature.
    mc = McRun(samples, seed)
    ok = True
    detail = []
    for n, m in ((1, 1), (1, 5), (2, 5)):
        cfg = SelectionConfig(n, m)
        link = LinkParams(10**0.5)
        est = empirical_ergodic(cfg, link, mc)
        ref = ergodic_capacity(cfg, link).value
        z = (est.value - ref) / est.error_estimate
        detail.append(f"(n={n},m={m}) z={z:+.2f}")
        ok &= abs(z) <= 3.0
    record("mc-vs-quadrature", ok, "; ".join(detail))

    # KS distance of the sample against the exact distribution.
    cfg = SelectionConfig(1, 5)
    ks = ks_against(cfg, mc, lambda x: max_cdf(cfg, x))
    limit = 1.95 / math.sqrt(samples)
    record("ks-exact-fit", ks <= limit, f"KS = {ks:.5f}, limit = {limit:.5f}")

    # Convergence-rate probe for the reference constants (n = 1).
    e100 = convergence_error(SelectionConfig(1, 100), FitStrategy.MRL, 0.0)
    e1000 = convergence_error(SelectionConfig(1, 1000), FitStrategy.MRL, 0.0)
    ratio = e100 / e1000
    record("gumbel-rate", 5.0 <= ratio <= 20.0, f"error ratio per decade = {ratio:.2f}")

    # MIMO: Jensen ceiling and agreement with quadrature at n = m = 1.
    ok = True
    detail = []
    for n, m, rho in ((1, 2, 1.0), (2, 2, 10**0.5), (3, 4, 1.0)):
        est = mimo_ergodic(n, m, LinkParams(rho), mc)
        ceiling = n * math.log2(1 + rho)
        ok &= est.value <= ceiling + 3 * est.error_estimate
    est = mimo_ergodic(1, 1, LinkParams(1.0), mc)
    ref = ergodic_capacity(SelectionConfig(1, 1), LinkParams(1.0)).value
    z = (est.value - ref) / est.error_estimate
    ok &= abs(z) <= 3.0
    record("mimo-baseline", ok, f"Jensen ceiling respected; point z={z:+.2f}")

    # Variance of the selection gain stays at or above the single-branch value.
    ok = all(
        selection_gain_variance(SelectionConfig(1, m)) > 1.0 for m in (10, 100, 1000)
    )
    record("variance-floor", ok, "Var > 1 for n=1, m in {10,100,1000}")
    return results


def cmd_verify(args: argparse.Namespace) -> int:
    results = _verify_checks(args.samples, args.seed)
    rows: list[list[object]] = []
    failed = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {name}: {detail}")
        rows.append([name, status, detail])
        failed += 0 if ok else 1
    if args.out is not None:
        _emit("verify", rows, {"samples": args.samples, "seed": args.seed}, args.out)
    if failed:
        print(f"{failed} of {len(results)} checks failed", file=sys.stderr)
        return 3
    print(f"all {len(results)} checks passed")
    return 0


# ----------------------------- argument wiring -----------------------------


def _add_common(
    parser: argparse.ArgumentParser, *, users: bool = False, mode: bool = True
) -> None:
    parser.add_argument("--n", type=parse_int_grid, default=[1],
                        help="receive antennas; int, comma list, or a..b")
    parser.add_argument("--m", type=parse_int_grid, default=[1],
                        help="transmit antennas; int, comma list, or a..b")
    if users:
        parser.add_argument("--users", type=int, default=32, help="number of users K")
    if mode:
        parser.add_argument(
            "--mode",
            choices=["exact", "approx", "bounds", "mc"],
            default=None,
            help="restrict output to one estimator (default: all available)",
        )
    parser.add_argument("--out", default=None, help="output CSV path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antsel",
        description="Capacity and scheduling analysis of best-antenna selection links.",
    )
    parser.add_argument("--version", action="version", version=f"antsel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="exact vs Gumbel-approximate selection-gain cdf")
    _add_common(p)
    p.add_argument("--strategy", choices=sorted(_STRATEGIES), default="lemma")
    p.add_argument("--points", type=int, default=400, help="grid points per curve")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("fit", help="Gumbel normalizing constants and moments")
    _add_common(p, mode=False)
    p.add_argument("--strategy", choices=sorted(_STRATEGIES), default="lemma")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("outage", help="outage capacity, exact and approximate")
    _add_common(p)
    p.add_argument("--rho-db", type=parse_float_grid, default=[5.0],
                   help="SINR grid in dB; value, comma list, or start:step:stop")
    p.add_argument("--p0", type=float, default=0.1, help="outage probability")
    p.set_defaults(func=cmd_outage)

    p = sub.add_parser("ergodic", help="ergodic capacity with bounds and approximation")
    _add_common(p)
    p.add_argument("--rho-db", type=parse_float_grid, default=[5.0])
    p.set_defaults(func=cmd_ergodic)

    p = sub.add_parser("scheduling", help="greedy vs round-robin scheduling capacities")
    _add_common(p, users=True)
    p.add_argument("--rho-db", type=parse_float_grid, default=[5.0])
    p.set_defaults(func=cmd_scheduling)

    p = sub.add_parser("table1", help="scheduling-gain table over (m, SINR)")
    _add_common(p, users=True)
    p.set_defaults(m=list(range(1, 21)))
    p.add_argument("--rho-db", type=parse_float_grid, default=[-5.0, 0.0, 5.0, 10.0])
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("mimo", help="open-loop MIMO Monte Carlo baseline")
    _add_common(p)
    p.add_argument("--rho-db", type=parse_float_grid, default=[5.0])
    p.add_argument("--p0", type=float, default=None,
                   help="also estimate the p0 outage capacity")
    p.add_argument("--users", type=int, default=None,
                   help="also estimate greedy-scheduled capacity for K users")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_mimo)

    p = sub.add_parser("verify", help="cross-check analytics against the sampling oracle")
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None, help="optional CSV report path")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
