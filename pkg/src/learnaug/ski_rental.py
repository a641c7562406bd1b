"""Learning-augmented ski rental: the deterministic and randomized buy rules,
exact cost evaluation, finite worst-case sweeps and the lower-bound adversary.

Days are 1-indexed.  Buying "at the start of day t" means the skier rents on
days ``1 .. t-1`` and pays ``B`` on day ``t``, so a season of ``x >= t`` days
costs ``t - 1 + B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import RationalLike, SkiInstance, TradeoffPoint, as_rational, ratio
from .enclosure import DEFAULT_BITS, Interval, exp_enclosure


def _check_lambda(lam: Fraction) -> Fraction:
    lam = as_rational(lam)
    if not 0 < lam < 1:
        raise ValueError(f"lambda must lie strictly between 0 and 1, got {lam}")
    return lam


def _check_budget(B: int) -> int:
    if not isinstance(B, int) or isinstance(B, bool) or B < 1:
        raise ValueError(f"buy cost must be a positive integer, got {B!r}")
    return B


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


@dataclass(frozen=True)
class DetPolicy:
    buy_day: int

    def __post_init__(self) -> None:
        if self.buy_day < 1:
            raise ValueError("buy day must be >= 1")


@dataclass(frozen=True)
class BuyDistribution:
    """Probability of buying at the start of each day ``1 .. k``."""

    probs: tuple[Fraction, ...]

    def __init__(self, probs: Sequence[RationalLike]):
        ps = tuple(as_rational(p) for p in probs)
        if not ps:
            raise ValueError("empty buy distribution")
        if any(p < 0 for p in ps):
            raise ValueError("negative probability")
        if sum(ps) != 1:
            raise ValueError(f"probabilities sum to {sum(ps)}, not 1")
        object.__setattr__(self, "probs", ps)

    @property
    def support_end(self) -> int:
        return len(self.probs)


def support_length(B: int, y: int, lam: Fraction) -> int:
    """``ceil(lam*B)`` when the prediction says the season is long, else ``ceil(B/lam)``."""
    return _ceil(lam * B) if y >= B else _ceil(Fraction(B) / lam)


def det_buy_day(B: int, y: int, lam: RationalLike) -> DetPolicy:
    B = _check_budget(B)
    lam = _check_lambda(lam)
    return DetPolicy(support_length(B, y, lam))


def det_cost(B: int, x: int, policy: DetPolicy) -> Fraction:
    t = policy.buy_day
    if x < t:
        return Fraction(x)
    return Fraction(t - 1 + B)


def det_sweep_bound(B: int, lam: Fraction) -> int:
    # past both candidate buy days and past B, ALG and OPT stop changing in x
    return 2 * _ceil(Fraction(B) / lam) + B


def det_worst_case(B: int, lam: RationalLike) -> TradeoffPoint:
    """Exact consistency and robustness of the deterministic rule for this ``B``."""
    B = _check_budget(B)
    lam = _check_lambda(lam)
    x_max = det_sweep_bound(B, lam)

    consistency = Fraction(1)
    buy_days = set()
    for y in range(1, x_max + 1):
        t = det_buy_day(B, y, lam).buy_day
        buy_days.add(t)
        consistency = max(consistency, det_cost(B, y, DetPolicy(t)) / min(y, B))

    # the prediction only enters through the buy day, so sweep x per distinct day
    robustness = Fraction(1)
    for t in buy_days:
        policy = DetPolicy(t)
        for x in range(1, x_max + 1):
            robustness = max(robustness, det_cost(B, x, policy) / min(x, B))
    return TradeoffPoint(lam, consistency, robustness)


def det_adversary(B: int, lam: RationalLike) -> SkiInstance:
    """Long prediction, season ending on the very day the rule buys."""
    B = _check_budget(B)
    lam = _check_lambda(lam)
    y = math.floor((1 + lam) * B) + 1
    t = det_buy_day(B, y, lam).buy_day
    return SkiInstance(B, t, y)


def det_adversary_bound(B: int, lam: RationalLike) -> Fraction:
    lam = as_rational(lam)
    return 1 + Fraction(B - 1) / (lam * B + 1)


def _buy_weights(B: int, k: int) -> list[int]:
    # (1 - 1/B)**(k - i) scaled by B**(k - 1) to stay integral
    return [(B - 1) ** (k - i) * B ** (i - 1) for i in range(1, k + 1)]


def rand_distribution(B: int, y: int, lam: RationalLike) -> BuyDistribution:
    B = _check_budget(B)
    lam = _check_lambda(lam)
    if B < 2:
        raise ValueError("the randomized rule needs B >= 2")
    k = support_length(B, y, lam)
    w = _buy_weights(B, k)
    total = sum(w)
    return BuyDistribution([Fraction(v, total) for v in w])


def expected_cost(dist: BuyDistribution, B: int, x: int) -> Fraction:
    probs = dist.probs
    bought = sum(((B + i) * p for i, p in enumerate(probs[:x])), Fraction(0))
    return bought + x * sum(probs[x:], Fraction(0))


def cost_profile(dist: BuyDistribution, B: int, x_max: int) -> list[Fraction]:
    """``expected_cost`` for every ``x`` in ``1 .. x_max`` in one pass."""
    denom = math.lcm(*(p.denominator for p in dist.probs))
    w = [p.numerator * (denom // p.denominator) for p in dist.probs]
    k = len(w)
    out = []
    bought = 0
    tail = denom
    for x in range(1, x_max + 1):
        if x <= k:
            bought += (B + x - 1) * w[x - 1]
            tail -= w[x - 1]
        out.append(Fraction(bought + x * tail, denom))
    return out


def rand_worst_case(B: int, lam: RationalLike) -> TradeoffPoint:
    """Exact consistency and robustness of the randomized rule for this ``B``."""
    B = _check_budget(B)
    lam = _check_lambda(lam)
    if lam <= Fraction(1, B):
        raise ValueError(f"need lambda > 1/B = 1/{B}, got {lam}")
    consistency = Fraction(1)
    robustness = Fraction(1)
    # y < B and y >= B are the only two regimes; y = B represents every long prediction
    for y_rep, ys in ((1, range(1, B)), (B, range(B, B + 1))):
        dist = rand_distribution(B, y_rep, lam)
        cap = max(dist.support_end, B)
        costs = cost_profile(dist, B, cap)
        for x in range(1, cap + 1):
            robustness = max(robustness, costs[x - 1] / min(x, B))
        for y in ys:
            consistency = max(consistency, costs[y - 1] / min(y, B))
    return TradeoffPoint(lam, consistency, robustness)


def rand_ratio(B: int, x: int, y: int, lam: RationalLike):
    dist = rand_distribution(B, y, lam)
    return ratio(expected_cost(dist, B, x), min(x, B))


def effective_lambda(B: int, lam: RationalLike) -> Fraction:
    """``ceil(lam*B)/B``: the knob the rule actually uses on long predictions."""
    lam = as_rational(lam)
    return Fraction(_ceil(lam * B), B)


def rand_consistency_bound(lam: RationalLike, bits: int = DEFAULT_BITS) -> Interval:
    """Enclosure of ``lam / (1 - e**-lam)``."""
    lam = as_rational(lam)
    return (lam / (1 - exp_enclosure(-lam, bits))).rounded(bits)


def rand_robustness_bound(B: int, lam: RationalLike, bits: int = DEFAULT_BITS) -> Interval:
    """Enclosure of ``1 / (1 - e**-(lam - 1/B))``."""
    lam = as_rational(lam)
    return (1 / (1 - exp_enclosure(-(lam - Fraction(1, B)), bits))).rounded(bits)
