"""Consistency/robustness trade-off curves as data, plus CSV and SVG output.

Series names double as pairing keys: ``ski-rand`` (upper bound),
``ski-rand-lower`` and ``ski-rand-measured`` belong to the same family, and
dominance is checked between members of one family at equal ``lambda``.
"""

from __future__ import annotations

import csv
import decimal
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .core import TradeoffPoint, as_rational, format_rational
from .enclosure import exp_enclosure
from .scheduling import (
    consistency_ratio,
    thm3_bound,
    two_job_robustness,
    two_stage_policy,
    worst_case_ratio_2jobs,
)
from .ski_lp import asymptotic_lower_bound
from .ski_rental import effective_lambda, rand_consistency_bound, rand_robustness_bound, rand_worst_case

UPPER = "upper-bound"
LOWER = "lower-bound"
MEASURED = "measured"
KINDS = (UPPER, LOWER, MEASURED)

CSV_HEADER = ["series", "lambda", "beta", "gamma", "kind", "beta_exact", "gamma_exact"]


@dataclass(frozen=True)
class CurveSeries:
    name: str
    points: tuple[TradeoffPoint, ...]
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        lams = [p.lam for p in self.points]
        if any(a >= b for a, b in zip(lams, lams[1:])):
            raise ValueError(f"series {self.name}: lambdas must be strictly increasing")

    @property
    def family(self) -> str:
        return family_of(self.name)


def family_of(name: str) -> str:
    for suffix in ("-lower", "-measured", "-upper"):
        if name.endswith(suffix):
            return name[: -len(suffix)]
    return name


def _sorted(lambdas: Iterable) -> list[Fraction]:
    return sorted({as_rational(v) for v in lambdas})


def rand_lower_point(lam: Fraction, digits: int = 14) -> TradeoffPoint:
    """The asymptotic lower-bound curve at robustness ``1/(1 - e**-lam)``.

    The robustness coordinate is the upper end of its enclosure; since the
    bound decreases in robustness, the point stays a valid lower bound.
    """
    gamma = (1 / (1 - exp_enclosure(-lam))).hi
    return TradeoffPoint(lam, asymptotic_lower_bound(gamma, digits), gamma)


def ski_curves(B: int, lambdas: Sequence) -> list[CurveSeries]:
    lams = _sorted(lambdas)
    if any(not Fraction(1, B) < lam < 1 for lam in lams):
        raise ValueError(f"ski-rental lambdas must lie in (1/B, 1) = (1/{B}, 1)")
    det = [TradeoffPoint(lam, 1 + lam, 1 + 1 / lam) for lam in lams]
    # consistency guarantee at the rounded-up knob; equal to the nominal one when lam*B is integral
    upper = [
        TradeoffPoint(
            lam, rand_consistency_bound(effective_lambda(B, lam)).hi, rand_robustness_bound(B, lam).hi
        )
        for lam in lams
    ]
    lower = [rand_lower_point(lam) for lam in lams]
    measured = [rand_worst_case(B, lam) for lam in lams]
    return [
        CurveSeries("ski-det", tuple(det), UPPER),
        CurveSeries("ski-rand", tuple(upper), UPPER),
        CurveSeries("ski-rand-lower", tuple(lower), LOWER),
        CurveSeries("ski-rand-measured", tuple(measured), MEASURED),
    ]


def prior_two_job_point(lam: Fraction) -> TradeoffPoint:
    """Earlier two-job guarantee, re-indexed to the same consistency ``1 + lam``.

    That rule is ``(1+m)/(2m)``-consistent and ``4/(3-3m)``-robust for
    ``m in (0, 1)``; ``m = 1/(1 + 2 lam)`` gives consistency ``1 + lam``.
    """
    m = 1 / (1 + 2 * lam)
    return TradeoffPoint(lam, (1 + m) / (2 * m), 4 / (3 - 3 * m))


def measured_two_job_point(lam: Fraction, step: Fraction, cap: Fraction) -> TradeoffPoint:
    policy = two_stage_policy(lam)
    ys = [(1, step * k) for k in range(1, int(cap / step) + 1)]
    beta = max(consistency_ratio(policy, y).ratio for y in ys)
    gamma = worst_case_ratio_2jobs(policy, step, cap).ratio
    return TradeoffPoint(lam, beta, gamma)


def sched_curves(
    n: int,
    lambdas: Sequence,
    step: Union[Fraction, str, int] = Fraction(1, 10),
    cap: Union[Fraction, str, int] = 3,
) -> list[CurveSeries]:
    lams = _sorted(lambdas)
    lower = CurveSeries(
        f"sched{n}-lower", tuple(TradeoffPoint(lam, 1 + lam, thm3_bound(n, lam)) for lam in lams), LOWER
    )
    if n != 2:
        return [lower]
    if any(not 0 < lam < Fraction(1, 3) for lam in lams):
        raise ValueError("two-job lambdas must lie in (0, 1/3)")
    step, cap = as_rational(step), as_rational(cap)
    tight = [TradeoffPoint(lam, 1 + lam, two_job_robustness(lam)) for lam in lams]
    prior = [prior_two_job_point(lam) for lam in lams]
    measured = [measured_two_job_point(lam, step, cap) for lam in lams]
    return [
        CurveSeries("sched2", tuple(tight), UPPER),
        lower,
        CurveSeries("sched2-prior", tuple(prior), UPPER),
        CurveSeries("sched2-measured", tuple(measured), MEASURED),
    ]


@dataclass(frozen=True)
class CurveRow:
    series: str
    lam: Fraction
    beta: Fraction
    gamma: Fraction
    kind: str


def rows_of(series: Sequence[CurveSeries]) -> list[CurveRow]:
    return [CurveRow(s.name, p.lam, p.beta, p.gamma, s.kind) for s in series for p in s.points]


def dominance_violations(rows: Sequence[CurveRow]) -> list[str]:
    """Within a family at equal lambda: lower-bound and measured rows must not
    exceed the upper-bound row in either coordinate."""
    uppers = {(family_of(r.series), r.lam): r for r in rows if r.kind == UPPER}
    problems = []
    for r in rows:
        if r.kind == UPPER:
            continue
        u = uppers.get((family_of(r.series), r.lam))
        if u is None:
            continue
        if r.beta > u.beta or r.gamma > u.gamma:
            problems.append(
                f"{r.series} at lambda={r.lam}: ({r.beta}, {r.gamma}) exceeds {u.series} ({u.beta}, {u.gamma})"
            )
    return problems


def decimal_string(q: Fraction, digits: int = 12) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        d = decimal.Decimal(q.numerator) / decimal.Decimal(q.denominator)
    text = format(d.normalize(), "f")
    return "0" if text in ("-0", "") else text


def write_csv(series: Sequence[CurveSeries], path: Union[str, Path]) -> None:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in rows_of(series):
                w.writerow([
                    r.series, decimal_string(r.lam), decimal_string(r.beta), decimal_string(r.gamma),
                    r.kind, format_rational(r.beta), format_rational(r.gamma),
                ])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc


def read_csv(path: Union[str, Path]) -> list[CurveRow]:
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        return [
            CurveRow(name, Fraction(lam), Fraction(bx), Fraction(gx), kind)
            for name, lam, _b, _g, kind, bx, gx in reader
        ]


_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"]


def render_svg(series: Sequence[CurveSeries], width: int = 640, height: int = 480) -> str:
    """Static SVG: consistency on the x axis, robustness on the y axis."""
    pts = [(float(p.beta), float(p.gamma)) for s in series for p in s.points]
    x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
    y0, y1 = min(p[1] for p in pts), max(p[1] for p in pts)
    x1 = x1 if x1 > x0 else x0 + 1
    y1 = y1 if y1 > y0 else y0 + 1
    left, right, top, bottom = 70, 170, 20, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(v: float) -> float:
        return left + (v - x0) / (x1 - x0) * pw

    def sy(v: float) -> float:
        return top + ph - (v - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for k in range(6):
        xv = x0 + (x1 - x0) * k / 5
        yv = y0 + (y1 - y0) * k / 5
        out.append(f'<text x="{sx(xv):.1f}" y="{top + ph + 16}" font-size="10" text-anchor="middle">{xv:.3g}</text>')
        out.append(f'<text x="{left - 6}" y="{sy(yv) + 3:.1f}" font-size="10" text-anchor="end">{yv:.3g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" font-size="12" text-anchor="middle">consistency</text>')
    out.append(
        f'<text x="16" y="{top + ph / 2:.1f}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2:.1f})">robustness</text>'
    )
    for idx, s in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        coords = " ".join(f"{sx(float(p.beta)):.2f},{sy(float(p.gamma)):.2f}" for p in s.points)
        dash = ' stroke-dasharray="4 3"' if s.kind == LOWER else ""
        if s.kind == MEASURED:
            for p in s.points:
                out.append(f'<circle cx="{sx(float(p.beta)):.2f}" cy="{sy(float(p.gamma)):.2f}" r="3" fill="{color}"/>')
        else:
            out.append(f'<polyline points="{coords}" fill="none" stroke="{color}"{dash}/>')
        ly = top + 14 + 16 * idx
        out.append(f'<text x="{left + pw + 10}" y="{ly}" font-size="11" fill="{color}">{s.name} ({s.kind})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit(series: Sequence[CurveSeries], csv_path, svg_path: Optional[Union[str, Path]] = None) -> None:
    if not series or not any(s.points for s in series):
        raise ValueError("nothing to emit: empty series list")
    write_csv(series, csv_path)
    if svg_path is not None:
        try:
            Path(svg_path).write_text(render_svg(series))
        except OSError as exc:
            raise OSError(f"cannot write SVG to {svg_path}: {exc.strerror or exc}") from exc
