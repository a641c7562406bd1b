"""The randomized ski-rental lower bound as a finite feasibility LP.

A randomized strategy is a distribution ``p_1, p_2, ...`` over buy days.  For
a long prediction (``y = 2B - 1``) a strategy that is ``beta``-consistent and
``gamma``-robust exists iff a small LP over ``p_1 .. p_y`` is feasible: one
probability row, one consistency row and the robustness rows for
``x = 1 .. B-1``.  This module builds that LP, decides it exactly, and
provides the closed-form optimum that the lower bound is built on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .core import RationalLike, as_rational
from .enclosure import (
    DEFAULT_BITS,
    Interval,
    bits_for_digits,
    ln_enclosure,
    ln_interval,
    pow_enclosure,
)
from .simplex import EQ, LE, Constraint, LpFeasibility, LpProblem, lp_feasible
from .ski_rental import BuyDistribution


def _check_lp_params(B: int, beta: Fraction, gamma: Fraction) -> None:
    if not isinstance(B, int) or B < 2:
        raise ValueError(f"the LP needs an integer B >= 2, got {B!r}")
    if beta < 1:
        raise ValueError(f"consistency below 1 is meaningless, got {beta}")
    if not beta < gamma:
        raise ValueError(f"need beta < gamma, got beta={beta}, gamma={gamma}")


def robustness_row(B: int, x: int, num_vars: int, gamma: Fraction) -> Constraint:
    """Expected cost when the season lasts ``x`` days, at most ``gamma * min(x, B)``."""
    coeffs = [Fraction(B + i - 1) if i <= x else Fraction(x) for i in range(1, num_vars + 1)]
    return Constraint(coeffs, LE, gamma * min(x, B))


def consistency_row(B: int, num_vars: int, beta: Fraction) -> Constraint:
    y = 2 * B - 1
    coeffs = [Fraction(B + i - 1) if i <= y else Fraction(y) for i in range(1, num_vars + 1)]
    return Constraint(coeffs, LE, beta * B)


def extended_lp(
    B: int,
    beta: RationalLike,
    gamma: RationalLike,
    extra_vars: int = 0,
    robustness_upto: Optional[int] = None,
) -> LpProblem:
    """Truncation of the infinite LP.

    Keeps buy days ``1 .. 2B-1+extra_vars`` and robustness rows
    ``x = 1 .. robustness_upto`` (default ``B - 1``).
    """
    beta, gamma = as_rational(beta), as_rational(gamma)
    _check_lp_params(B, beta, gamma)
    nv = 2 * B - 1 + extra_vars
    last = B - 1 if robustness_upto is None else robustness_upto
    rows = [Constraint([1] * nv, EQ, 1), consistency_row(B, nv, beta)]
    rows += [robustness_row(B, x, nv, gamma) for x in range(1, last + 1)]
    return LpProblem(nv, rows)


def build_lp(B: int, beta: RationalLike, gamma: RationalLike) -> LpProblem:
    return extended_lp(B, beta, gamma)


def is_feasible(B: int, beta: RationalLike, gamma: RationalLike) -> bool:
    return lp_feasible(build_lp(B, beta, gamma)).feasible


def analytic_k(B: int, gamma: RationalLike) -> int:
    """Smallest ``k`` with ``(gamma - 1) * ((B/(B-1))**k - 1) >= 1``."""
    gamma = as_rational(gamma)
    if gamma <= 1:
        raise ValueError(f"robustness must exceed 1, got {gamma}")
    if B < 2:
        raise ValueError("need B >= 2")
    a, b = gamma.numerator - gamma.denominator, gamma.denominator
    # integer form: a * (B**k - (B-1)**k) >= b * (B-1)**k
    hi, lo = B, B - 1
    k = 1
    while a * (hi - lo) < b * lo:
        hi *= B
        lo *= B - 1
        k += 1
    return k


def analytic_distribution(B: int, gamma: RationalLike) -> BuyDistribution:
    """Geometric buy-day distribution that makes the first ``k-1`` robustness rows tight."""
    gamma = as_rational(gamma)
    k = analytic_k(B, gamma)
    if k > B:
        raise ValueError(f"gamma={gamma} is below the feasible robustness for B={B} (k={k} > B)")
    growth = Fraction(B, B - 1)
    head = [(gamma - 1) / (B - 1) * growth ** (i - 1) for i in range(1, k)]
    return BuyDistribution(head + [1 - sum(head, Fraction(0))])


def min_consistency(B: int, gamma: RationalLike) -> Fraction:
    gamma = as_rational(gamma)
    k = analytic_k(B, gamma)
    if k > B:
        raise ValueError(f"gamma={gamma} is below the feasible robustness for B={B} (k={k} > B)")
    return 1 + (k - 1) * gamma / B + (gamma - 1) * (1 - Fraction(B, B - 1) ** (k - 1))


def asymptotic_bound_enclosure(
    gamma: Union[RationalLike, Interval], bits: int = DEFAULT_BITS
) -> Interval:
    """Enclosure of ``gamma * ln(1 + 1/(gamma - 1))``; ``gamma`` may itself be an interval."""
    g = gamma if isinstance(gamma, Interval) else Interval.point(as_rational(gamma))
    if g.lo <= 1:
        raise ValueError(f"robustness must exceed 1, got {gamma}")
    work = bits + 16
    arg = (1 + 1 / (g - 1)).rounded(work)
    return (g * ln_interval(arg, work)).rounded(bits)


def asymptotic_lower_bound(gamma: RationalLike, digits: int = 12) -> Fraction:
    """Rational lower bound on ``gamma * ln(1 + 1/(gamma - 1))``, within ``10**-digits``."""
    enc = asymptotic_bound_enclosure(as_rational(gamma), bits_for_digits(digits))
    return enc.lo


def finite_b_bound_enclosure(B: int, gamma: RationalLike, bits: int = DEFAULT_BITS) -> Interval:
    """``(gamma/B) * ln(1 + 1/(gamma-1)) / ln(1 + 1/(B-1))``, the bound before ``B -> inf``."""
    gamma = as_rational(gamma)
    work = bits + 16
    num = ln_enclosure(1 + 1 / (gamma - 1), work)
    den = ln_enclosure(1 + Fraction(1, B - 1), work)
    return (gamma / B * num / den).rounded(bits)


def power_chord_margin(B: int, x: RationalLike, bits: int = DEFAULT_BITS) -> Interval:
    """Enclosure of ``x/B - ((B-1)/B) * ((B/(B-1))**x - 1)``, nonnegative on ``[0, 1]``."""
    x = as_rational(x)
    power = pow_enclosure(Fraction(B, B - 1), x, bits + 16)
    return (Fraction(x, B) - Fraction(B - 1, B) * (power - 1)).rounded(bits)


@dataclass(frozen=True)
class TightnessReport:
    B: int
    gamma: Fraction
    beta_min: Fraction
    infeasible_below: Fraction  # largest probed beta found infeasible
    feasible_at: Fraction  # smallest probed beta found feasible (or gamma if none)
    depth: int
    bracketed: bool
    inequality_points: int
    inequality_ok: bool
    inequality_endpoints_exact: bool
    witness_ok: bool
    failures: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.bracketed and self.inequality_ok and self.inequality_endpoints_exact and self.witness_ok


def bisect_boundary(B: int, gamma: RationalLike, depth: int) -> tuple[Fraction, Fraction]:
    """Bisect the consistency threshold on ``[1, gamma]``.

    Returns ``(lo, hi)`` with ``lo`` infeasible and ``hi`` feasible, or
    ``hi == gamma`` if no probe below ``gamma`` was feasible.  ``gamma``
    itself is never probed.  If ``beta = 1`` is already feasible the
    bracket collapses to ``(1, 1)``.
    """
    gamma = as_rational(gamma)
    lo, hi = Fraction(1), gamma
    if is_feasible(B, lo, gamma):
        return lo, lo
    for _ in range(depth):
        mid = (lo + hi) / 2
        if is_feasible(B, mid, gamma):
            hi = mid
        else:
            lo = mid
    return lo, hi


def verify_tightness(B: int, gamma: RationalLike, grid: int, inequality_points: int = 101) -> TightnessReport:
    gamma = as_rational(gamma)
    beta_min = min_consistency(B, gamma)
    lo, hi = bisect_boundary(B, gamma, grid)
    failures = []
    bracketed = (lo < beta_min <= hi) if lo < hi else beta_min == lo
    if not bracketed:
        failures.append(f"threshold bracket [{lo}, {hi}] misses beta_min={beta_min}")

    witness_ok = True
    if beta_min < gamma:
        lp = build_lp(B, beta_min, gamma)
        dist = analytic_distribution(B, gamma)
        point = list(dist.probs) + [Fraction(0)] * (lp.num_vars - dist.support_end)
        witness_ok = lp.satisfied_by(point)
        if not witness_ok:
            failures.append("analytic distribution is not a feasible point")

    inequality_ok = True
    for j in range(inequality_points):
        x = Fraction(j, inequality_points - 1)
        if power_chord_margin(B, x).lo < 0:
            inequality_ok = False
            failures.append(f"technical inequality fails at x={x}")
    endpoints = all(power_chord_margin(B, x) == Interval.point(0) for x in (0, 1))
    if not endpoints:
        failures.append("technical inequality is not exactly zero at x = 0, 1")
    return TightnessReport(
        B, gamma, beta_min, lo, hi, grid, bracketed, inequality_points, inequality_ok, endpoints,
        witness_ok, tuple(failures),
    )


def feasibility(B: int, beta: RationalLike, gamma: RationalLike) -> LpFeasibility:
    return lp_feasible(build_lp(B, beta, gamma))

