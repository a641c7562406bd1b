"""Non-clairvoyant single-machine scheduling with predicted job lengths.

The simulator is event driven and exact: between events every job runs at a
constant rational rate, so the next event time is a rational and nothing is
ever discretised.  Events are

* ``complete``: a job's processing reaches its true length ``x_i``;
* ``overrun``: a job's processing reaches its prediction ``y_i`` while the
  job is still unfinished (the policy has just learned ``x_i > y_i``);
* ``budget``: a policy-internal timer runs out.

Policies never see ``x``; they see only the predictions and the events.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from .core import JobSet, RatioReport, RationalLike, as_rational, format_rational, opt_completion, ratio

STAGE1 = "stage1"
STAGE2 = "stage2"
FALLBACK = "fallback-rr"


class StarvationError(RuntimeError):
    """The policy let the time bound pass without completing a job."""


class ConsistencyViolation(ValueError):
    """A policy fails a necessary condition for the claimed consistency."""


@dataclass(frozen=True)
class Event:
    time: Fraction
    kind: str  # complete | overrun | budget
    job: Optional[int]

    def format(self) -> str:
        job = "-" if self.job is None else str(self.job)
        return f"t={format_rational(self.time)} event={self.kind} job={job}"


_TRACE_RE = re.compile(r"^t=(-?\d+/\d+) event=(complete|overrun|budget) job=(-|\d+)$")


def parse_trace(text: str) -> list[Event]:
    events = []
    for line in text.splitlines():
        if not line.strip():
            continue
        m = _TRACE_RE.match(line.strip())
        if m is None:
            raise ValueError(f"not a trace line: {line!r}")
        t, kind, job = m.groups()
        events.append(Event(Fraction(t), kind, None if job == "-" else int(job)))
    return events


@dataclass(frozen=True)
class Schedule:
    """Result of one simulation.

    ``event_times[k]`` ends the interval during which ``rates[k]`` applied.
    ``delay[i][j]`` is the processing job ``i`` received before job ``j``
    completed (``None`` while ``j`` is unfinished).
    """

    jobs: JobSet
    event_times: tuple[Fraction, ...]
    rates: tuple[tuple[Fraction, ...], ...]
    completion_times: tuple[Optional[Fraction], ...]
    delay: tuple[tuple[Optional[Fraction], ...], ...]
    events: tuple[Event, ...]
    processed: tuple[Fraction, ...]

    @property
    def finished(self) -> bool:
        return all(c is not None for c in self.completion_times)

    @property
    def total_completion(self) -> Fraction:
        if not self.finished:
            raise ValueError("schedule stopped before every job completed")
        return sum(self.completion_times, Fraction(0))

    def trace(self) -> str:
        return "".join(e.format() + "\n" for e in self.events)


@dataclass
class PolicyState:
    phase: str
    budget: Fraction
    processed: list[Fraction]
    mispredicted: bool = False


class RoundRobin:
    """Equal rate ``1/k`` to each of the ``k`` unfinished jobs."""

    name = "rr"
    lam = None

    def start(self, predicted: Sequence[Fraction]) -> "RoundRobin":
        return self

    def rates(self, unfinished: Sequence[bool]) -> list[Fraction]:
        return _share(unfinished)

    def time_to_event(self) -> Optional[Fraction]:
        return None

    def advance(self, dt: Fraction, processed: Sequence[Fraction]) -> None:
        pass

    def notify(self, completed, overruns, budget_hit, processed) -> None:
        pass


def round_robin_policy() -> RoundRobin:
    return RoundRobin()


class TwoStage:
    """Round robin until the consistency slack is spent, then shortest predicted
    job first; any sign of a wrong prediction switches to round robin for good."""

    name = "two-stage"

    def __init__(self, lam: RationalLike):
        self.lam = as_rational(lam)
        if self.lam < 0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam}")

    def stage1_budget(self, predicted: Sequence[Fraction]) -> Fraction:
        n = len(predicted)
        if n < 2:
            raise ValueError("two-stage scheduling needs at least two jobs")
        return self.lam * n * opt_completion(predicted) / math.comb(n, 2)

    def start(self, predicted: Sequence[Fraction]) -> "_TwoStageRun":
        return _TwoStageRun(self, tuple(predicted))


class _TwoStageRun:
    def __init__(self, policy: TwoStage, predicted: tuple[Fraction, ...]):
        self.predicted = predicted
        self.order = sorted(range(len(predicted)), key=lambda i: (predicted[i], i))
        self.state = PolicyState(
            STAGE1, policy.stage1_budget(predicted), [Fraction(0)] * len(predicted)
        )

    def rates(self, unfinished: Sequence[bool]) -> list[Fraction]:
        if self.state.phase == STAGE2:
            out = [Fraction(0)] * len(unfinished)
            for i in self.order:
                if unfinished[i]:
                    out[i] = Fraction(1)
                    break
            return out
        return _share(unfinished)

    def time_to_event(self) -> Optional[Fraction]:
        return self.state.budget if self.state.phase == STAGE1 else None

    def advance(self, dt: Fraction, processed: Sequence[Fraction]) -> None:
        st = self.state
        if st.phase == STAGE1:
            st.budget -= dt
        st.processed = list(processed)

    def notify(self, completed, overruns, budget_hit, processed) -> None:
        st = self.state
        wrong = bool(overruns) or any(processed[i] != self.predicted[i] for i in completed)
        if wrong:
            st.mispredicted = True
        if st.mispredicted:
            st.phase = FALLBACK
        elif st.phase == STAGE1 and st.budget == 0:
            st.phase = STAGE2


def two_stage_policy(lam: RationalLike) -> TwoStage:
    return TwoStage(lam)


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _check_rates(rates: Sequence[Fraction], unfinished: Sequence[bool]) -> None:
    total = _ZERO
    for r, u in zip(rates, unfinished):
        if r:
            if r < 0 or not u:
                raise ValueError(f"invalid rate assignment {rates} for unfinished={unfinished}")
            total += r
    if total > 1:
        raise ValueError(f"rates {rates} sum to more than 1")


def _share(unfinished: Sequence[bool]) -> list[Fraction]:
    k = sum(unfinished)
    if not k:
        return [_ZERO] * len(unfinished)
    share = _ONE if k == 1 else Fraction(1, k)
    return [share if u else _ZERO for u in unfinished]


def simulate(
    policy,
    jobs: JobSet,
    max_completions: Optional[int] = None,
    time_limit: Optional[RationalLike] = None,
) -> Schedule:
    """Run ``policy`` on ``jobs``.

    Stops once ``max_completions`` jobs have finished (default: all).  Raises
    :class:`StarvationError` if simulated time passes ``time_limit`` first.
    """
    x = jobs.true_times
    y = jobs.predicted_times
    n = jobs.n
    run = policy.start(y)
    limit = None if time_limit is None else as_rational(time_limit)
    target = n if max_completions is None else min(max_completions, n)

    now = Fraction(0)
    done = [Fraction(0)] * n
    unfinished = [True] * n
    overrun_seen = [False] * n
    completion: list[Optional[Fraction]] = [None] * n
    delay: list[list[Optional[Fraction]]] = [[None] * n for _ in range(n)]
    events: list[Event] = []
    event_times: list[Fraction] = []
    rate_log: list[tuple[Fraction, ...]] = []
    n_done = 0

    while n_done < target:
        rates = run.rates(unfinished)
        _check_rates(rates, unfinished)

        timer = run.time_to_event()
        dt: Optional[Fraction] = timer
        for i in range(n):
            r = rates[i]
            if not r:
                continue
            cand = (x[i] - done[i]) / r
            if dt is None or cand < dt:
                dt = cand
            if not overrun_seen[i] and done[i] < y[i] < x[i]:
                cand = (y[i] - done[i]) / r
                if cand < dt:
                    dt = cand
        if dt is None:
            raise StarvationError(f"no job is running and no timer is set at t={now}")
        if limit is not None and now + dt > limit:
            raise StarvationError(f"no completion by time bound {limit}")

        budget_hit = timer is not None and dt == timer
        now += dt
        for i in range(n):
            if rates[i]:
                done[i] += rates[i] * dt
        run.advance(dt, done)
        event_times.append(now)
        rate_log.append(tuple(rates))

        completed = [i for i in range(n) if unfinished[i] and done[i] == x[i]]
        overruns = [
            i for i in range(n)
            if unfinished[i] and not overrun_seen[i] and done[i] == y[i] < x[i]
        ]
        for j in completed:
            unfinished[j] = False
            completion[j] = now
            for i in range(n):
                delay[i][j] = done[i]
            events.append(Event(now, "complete", j))
        for i in overruns:
            overrun_seen[i] = True
            events.append(Event(now, "overrun", i))
        if budget_hit:
            events.append(Event(now, "budget", None))
        n_done += len(completed)
        run.notify(completed, overruns, budget_hit, done)

    return Schedule(
        jobs,
        tuple(event_times),
        tuple(rate_log),
        tuple(completion),
        tuple(tuple(row) for row in delay),
        tuple(events),
        tuple(done),
    )


def evaluate(policy, jobs: JobSet) -> RatioReport:
    sched = simulate(policy, jobs)
    return ratio(sched.total_completion, opt_completion(jobs.true_times))


def consistency_ratio(policy, y: Sequence[RationalLike]) -> RatioReport:
    y = [as_rational(v) for v in y]
    return evaluate(policy, JobSet(y, y))


def thm3_bound(n: int, lam: RationalLike) -> Fraction:
    """Robustness every ``(1 + lam)``-consistent algorithm must pay on ``n`` jobs."""
    lam = as_rational(lam)
    if n < 2:
        raise ValueError("the bound is stated for n >= 2 jobs")
    if not 0 <= lam <= 1 - Fraction(2, n + 1):
        raise ValueError(f"lambda must lie in [0, 1 - 2/(n+1)] = [0, {1 - Fraction(2, n + 1)}], got {lam}")
    return (n + n * (n + 1) * lam) / (1 + lam * (n + 1) * (n + 2) / 2)


def two_job_robustness(lam: RationalLike) -> Fraction:
    """Robustness ``1 + 1/(1 + 6 lam)`` of the two-stage rule on two jobs."""
    lam = as_rational(lam)
    return 1 + 1 / (1 + 6 * lam)


@dataclass(frozen=True)
class FirstCompletion:
    first_job: int
    time: Fraction
    processed: tuple[Fraction, ...]


def first_completion(policy, n: int) -> FirstCompletion:
    """Run on ``n`` unit jobs with exact unit predictions until one completes."""
    ones = [Fraction(1)] * n
    sched = simulate(policy, JobSet(ones, ones), max_completions=1, time_limit=2 * n)
    first = min(j for j, c in enumerate(sched.completion_times) if c is not None)
    return FirstCompletion(first, sched.completion_times[first], tuple(r[first] for r in sched.delay))


def unit_job_slack(fc: FirstCompletion, lam: RationalLike) -> Fraction:
    """``n(n+1)lam/2 - sum_{i>=2} (i-1) d(i,i)`` at the first completion, others by decreasing d."""
    lam = as_rational(lam)
    n = len(fc.processed)
    rest = sorted((d for j, d in enumerate(fc.processed) if j != fc.first_job), reverse=True)
    used = sum((i * d for i, d in enumerate(rest, start=1)), Fraction(0))
    return Fraction(n * (n + 1), 2) * lam - used


def adversary_njobs(policy, n: int, lam: RationalLike, epsilon: RationalLike) -> JobSet:
    """Unit predictions; the first finisher keeps length 1 and every other job is
    made to end ``epsilon`` after the processing it had received by then.

    Job indices are kept so the policy replays the same opening schedule.
    """
    epsilon = as_rational(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    fc = first_completion(policy, n)
    if unit_job_slack(fc, lam) < 0:
        raise ConsistencyViolation(
            f"policy overspends the consistency slack for lambda={as_rational(lam)} on unit jobs"
        )
    x = [Fraction(1) if j == fc.first_job else d + epsilon for j, d in enumerate(fc.processed)]
    return JobSet(x, [Fraction(1)] * n)


def two_job_candidates(lam: Fraction, eps: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Near-worst instances for the two-stage rule with unit predictions."""
    a = 3 * lam
    return [(Fraction(1), a + eps), (1 + eps, a + 2 * eps), (a + eps, Fraction(1))]


def search_worst_case_2jobs(
    policy,
    grid_step: RationalLike,
    cap: RationalLike,
    y: Sequence[RationalLike] = (1, 1),
) -> tuple[RatioReport, JobSet]:
    step, cap = as_rational(grid_step), as_rational(cap)
    if step <= 0:
        raise ValueError("grid step must be positive")
    y = tuple(as_rational(v) for v in y)
    points = [step * k for k in range(1, int(cap / step) + 1)]
    instances: Iterable[tuple[Fraction, Fraction]] = product(points, points)
    if policy.lam is not None:
        instances = list(instances) + two_job_candidates(policy.lam, step / 100)
    best: Optional[RatioReport] = None
    arg: Optional[JobSet] = None
    for xs in instances:
        jobs = JobSet(xs, y)
        rep = evaluate(policy, jobs)
        if best is None or rep.ratio > best.ratio:
            best, arg = rep, jobs
    return best, arg


def worst_case_ratio_2jobs(policy, grid_step: RationalLike, cap: RationalLike) -> RatioReport:
    return search_worst_case_2jobs(policy, grid_step, cap)[0]
