"""Command-line front end.

Every subcommand prints ``key=value`` lines with exact rationals.  Exit status
is 0 on success, 1 when the computation ran but the verdict is negative (an
infeasible LP, a violated bound) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import scheduling, ski_lp, ski_rental, tradeoff_curves
from .core import JobSet, as_rational, format_rational, opt_completion, ratio

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(part) for part in text.split(",") if part.strip()]


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(e) for e in v)
    return str(v)


def _emit(out, **pairs) -> None:
    for k, v in pairs.items():
        out.write(f"{k}={_fmt(v)}\n")


def _cmd_ski_det(args, out) -> int:
    point = ski_rental.det_worst_case(args.budget, args.lam)
    B, lam = args.budget, point.lam
    ok = point.beta <= 1 + lam + Fraction(1, B) and point.gamma <= 1 + 1 / lam + Fraction(2, B)
    _emit(out, consistency=point.beta, robustness=point.gamma, bounds_hold=ok)
    if args.x is not None or args.y is not None:
        x, y = _need_xy(args)
        policy = ski_rental.det_buy_day(B, y, lam)
        rep = ratio(ski_rental.det_cost(B, x, policy), min(x, B))
        _emit(out, buy_day=policy.buy_day, alg=rep.alg_cost, opt=rep.opt_cost, ratio=rep.ratio)
    return EXIT_OK if ok else EXIT_VERDICT


def _cmd_ski_rand(args, out) -> int:
    B, lam = args.budget, args.lam
    point = ski_rental.rand_worst_case(B, lam)
    knob = ski_rental.effective_lambda(B, lam)
    cons_bound = ski_rental.rand_consistency_bound(knob)
    rob_bound = ski_rental.rand_robustness_bound(B, lam)
    ok = point.beta <= cons_bound.hi and point.gamma <= rob_bound.hi
    _emit(out, consistency=point.beta, robustness=point.gamma, effective_lambda=knob,
          consistency_bound=tradeoff_curves.decimal_string(cons_bound.hi),
          robustness_bound=tradeoff_curves.decimal_string(rob_bound.hi), bounds_hold=ok)
    if args.x is not None or args.y is not None:
        x, y = _need_xy(args)
        dist = ski_rental.rand_distribution(B, y, lam)
        rep = ratio(ski_rental.expected_cost(dist, B, x), min(x, B))
        _emit(out, support_end=dist.support_end, alg=rep.alg_cost, opt=rep.opt_cost, ratio=rep.ratio)
    return EXIT_OK if ok else EXIT_VERDICT


def _need_xy(args) -> tuple[int, int]:
    if args.x is None or args.y is None:
        raise UsageError("--x and --y must be given together")
    if args.x < 1 or args.y < 1:
        raise UsageError("--x and --y must be positive")
    return args.x, args.y


def _cmd_ski_lp(args, out) -> int:
    B, gamma = args.budget, args.gamma
    if args.beta is not None:
        res = ski_lp.feasibility(B, args.beta, gamma)
        _emit(out, feasible=res.feasible)
        if res.feasible:
            _emit(out, witness=[format_rational(v) for v in res.witness])
            return EXIT_OK
        _emit(out, certificate=[format_rational(v) for v in res.certificate])
        return EXIT_VERDICT
    report = ski_lp.verify_tightness(B, gamma, args.bisect)
    _emit(out, beta_min=report.feasible_at, beta_infeasible=report.infeasible_below,
          analytic_beta_min=report.beta_min, k=ski_lp.analytic_k(B, gamma),
          bracketed=report.bracketed, technical_inequality=report.inequality_ok,
          witness_feasible=report.witness_ok)
    return EXIT_OK if report.ok else EXIT_VERDICT


def _policy(name: str, lam: Optional[Fraction]):
    if name == "rr":
        return scheduling.round_robin_policy()
    if lam is None:
        raise UsageError("--lambda is required for the two-stage policy")
    return scheduling.two_stage_policy(lam)


def _cmd_sched(args, out) -> int:
    jobs = JobSet(args.x, args.y)
    sched = scheduling.simulate(_policy(args.policy, args.lam), jobs)
    if args.trace:
        out.write(sched.trace())
    rep = ratio(sched.total_completion, opt_completion(jobs.true_times))
    _emit(out, alg=rep.alg_cost, opt=rep.opt_cost, ratio=rep.ratio)
    return EXIT_OK


def _cmd_sched_adversary(args, out) -> int:
    policy = _policy(args.policy, args.lam)
    try:
        jobs = scheduling.adversary_njobs(policy, args.n, args.lam, args.epsilon)
    except scheduling.ConsistencyViolation as exc:
        _emit(out, error=str(exc).replace(" ", "_"))
        return EXIT_VERDICT
    rep = scheduling.evaluate(policy, jobs)
    _emit(out, x=[format_rational(v) for v in jobs.true_times],
          y=[format_rational(v) for v in jobs.predicted_times],
          alg=rep.alg_cost, opt=rep.opt_cost, ratio=rep.ratio)
    if args.lam <= 1 - Fraction(2, args.n + 1):
        _emit(out, lower_bound=scheduling.thm3_bound(args.n, args.lam))
    return EXIT_OK


def default_lambdas(which: str, B: int, n: int, points: int) -> list[Fraction]:
    if which == "ski":
        lams = [Fraction(k, points + 1) for k in range(1, points + 1)]
        return [lam for lam in lams if lam > Fraction(1, B)]
    if which == "sched2":
        return [Fraction(k, 3 * (points + 1)) for k in range(1, points + 1)]
    top = 1 - Fraction(2, n + 1)
    return [top * k / (points - 1) for k in range(points)] if points > 1 else [Fraction(0)]


def _cmd_curve(args, out) -> int:
    lams = default_lambdas(args.which, args.budget, args.n, args.points)
    if args.which == "ski":
        series = tradeoff_curves.ski_curves(args.budget, lams)
    elif args.which == "sched2":
        series = tradeoff_curves.sched_curves(2, lams, step=args.step)
    else:
        if args.n < 2:
            raise UsageError("--n must be at least 2")
        series = tradeoff_curves.sched_curves(args.n, lams)
    tradeoff_curves.emit(series, args.out, args.svg)
    rows = tradeoff_curves.read_csv(args.out)
    problems = tradeoff_curves.dominance_violations(rows)
    _emit(out, csv=args.out, rows=len(rows), series=[s.name for s in series],
          dominance_ok=not problems)
    if args.svg:
        _emit(out, svg=args.svg)
    return EXIT_OK if not problems else EXIT_VERDICT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="learnaug",
        description="Learning-augmented ski rental and scheduling: algorithms, lower bounds, curves.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("ski-det", _cmd_ski_det, "deterministic ski rental"),
        ("ski-rand", _cmd_ski_rand, "randomized ski rental"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--budget", type=int, required=True, help="buy cost B")
        sp.add_argument("--lambda", dest="lam", type=_rational, required=True)
        sp.add_argument("--x", type=int, help="true season length")
        sp.add_argument("--y", type=int, help="predicted season length")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("ski-lp", help="feasibility LP for randomized ski rental")
    sp.add_argument("--budget", type=int, required=True)
    sp.add_argument("--gamma", type=_rational, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--beta", type=_rational)
    g.add_argument("--bisect", type=int, metavar="DEPTH")
    sp.set_defaults(func=_cmd_ski_lp)

    sp = sub.add_parser("sched", help="simulate one scheduling instance")
    sp.add_argument("--policy", choices=["rr", "two-stage"], required=True)
    sp.add_argument("--lambda", dest="lam", type=_rational)
    sp.add_argument("--x", type=_rational_list, required=True, help="comma-separated true times")
    sp.add_argument("--y", type=_rational_list, required=True, help="comma-separated predictions")
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(func=_cmd_sched)

    sp = sub.add_parser("sched-adversary", help="adversarial instance against a policy")
    sp.add_argument("--policy", choices=["rr", "two-stage"], required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=_rational, required=True)
    sp.add_argument("--epsilon", type=_rational, required=True)
    sp.set_defaults(func=_cmd_sched_adversary)

    sp = sub.add_parser("curve", help="emit trade-off curves as CSV (and SVG)")
    sp.add_argument("--which", choices=["ski", "sched2", "schedN"], required=True)
    sp.add_argument("--budget", type=int, default=100)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--points", type=int, default=9)
    sp.add_argument("--step", type=_rational, default=Fraction(1, 10),
                    help="grid step for the measured two-job series")
    sp.add_argument("--out", required=True)
    sp.add_argument("--svg")
    sp.set_defaults(func=_cmd_curve)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, ValueError, TypeError, ZeroDivisionError) as exc:
        sys.stderr.write(f"learnaug {args.command}: {exc}\n")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"learnaug {args.command}: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
