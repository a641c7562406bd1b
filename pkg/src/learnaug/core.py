"""Exact arithmetic, problem instances and ratio bookkeeping.

Every real-valued quantity in this package (costs, times, probabilities,
trade-off parameters) is a :class:`fractions.Fraction`.  ``Rational`` is an
alias kept for readability in signatures.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_FRACTION_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Strings may be ``num/den`` or a terminating decimal (``0.25``, ``1e-3``).
    Floats are rejected: a binary float is rarely the number the caller meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if _FRACTION_RE.match(text) or _DECIMAL_RE.match(text):
            return Fraction(text)
        raise ValueError(f"not an exact rational literal: {value!r}")
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    """Render as ``num/den`` always, including integers (``3/1``)."""
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class SkiInstance:
    buy_cost: int
    true_days: int
    predicted_days: int

    def __post_init__(self) -> None:
        for name in ("buy_cost", "true_days", "predicted_days"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def error(self) -> int:
        return abs(self.true_days - self.predicted_days)


@dataclass(frozen=True)
class JobSet:
    """True processing times ``x`` and their predictions ``y``."""

    true_times: tuple[Fraction, ...]
    predicted_times: tuple[Fraction, ...]

    def __init__(self, true_times: Iterable[RationalLike], predicted_times: Iterable[RationalLike]):
        x = tuple(as_rational(v) for v in true_times)
        y = tuple(as_rational(v) for v in predicted_times)
        if not x:
            raise ValueError("a job set needs at least one job")
        if len(x) != len(y):
            raise ValueError(f"{len(x)} true times but {len(y)} predictions")
        if any(v <= 0 for v in x + y):
            raise ValueError("processing times and predictions must be positive")
        object.__setattr__(self, "true_times", x)
        object.__setattr__(self, "predicted_times", y)

    @property
    def n(self) -> int:
        return len(self.true_times)

    @property
    def error(self) -> Fraction:
        return sum((abs(a - b) for a, b in zip(self.true_times, self.predicted_times)), Fraction(0))


@dataclass(frozen=True)
class RatioReport:
    alg_cost: Fraction
    opt_cost: Fraction
    ratio: Fraction


@dataclass(frozen=True)
class TradeoffPoint:
    """One (consistency, robustness) pair labelled by the trade-off knob."""

    lam: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.lam <= 1:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")
        if self.beta < 1 or self.gamma < 1:
            raise ValueError("consistency and robustness are ratios >= 1")
        if self.beta > self.gamma:
            raise ValueError(f"consistency {self.beta} exceeds robustness {self.gamma}")


def opt_ski_cost(inst: SkiInstance) -> Fraction:
    return Fraction(min(inst.true_days, inst.buy_cost))


def opt_completion(times: Sequence[RationalLike]) -> Fraction:
    """Optimal total completion time on one machine (shortest job first)."""
    ts = sorted(as_rational(t) for t in times)
    if not ts:
        raise ValueError("opt_completion of an empty job list")
    if ts[0] <= 0:
        raise ValueError("processing times must be positive")
    n = len(ts)
    return sum(((n - i) * t for i, t in enumerate(ts)), Fraction(0))


def ratio(alg: RationalLike, opt: RationalLike) -> RatioReport:
    alg, opt = as_rational(alg), as_rational(opt)
    if opt <= 0:
        raise ValueError(f"optimal cost must be positive, got {opt}")
    r = alg / opt
    if r < 1:
        # an online cost below the offline optimum means the simulator is wrong
        raise ArithmeticError(f"ALG={alg} below OPT={opt}")
    return RatioReport(alg, opt, r)
