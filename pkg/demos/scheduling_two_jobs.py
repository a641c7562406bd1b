"""Two jobs, one machine, predicted lengths.

The two-stage rule shares the machine until the consistency slack is spent,
then runs the predicted-shorter job.  This script walks one schedule event by
event, then searches for the worst instance and builds the adversarial one.

Run: python3 demos/scheduling_two_jobs.py
"""

from fractions import Fraction

from learnaug.core import JobSet
from learnaug.scheduling import (
    adversary_njobs,
    evaluate,
    search_worst_case_2jobs,
    simulate,
    two_job_robustness,
    two_stage_policy,
)

lam = Fraction(1, 5)
policy = two_stage_policy(lam)

# Both jobs overrun their predictions: the rule notices and falls back to sharing.
jobs = JobSet([2, 2], [1, 1])
sched = simulate(policy, jobs)
print("x=(2,2), y=(1,1):")
print(sched.trace(), end="")
print(f"total completion {sched.total_completion}\n")

bound = two_job_robustness(lam)
rep, worst = search_worst_case_2jobs(policy, Fraction(1, 20), 3)
print(f"worst ratio on a 1/20 grid: {float(rep.ratio):.6f} at x={[str(v) for v in worst.true_times]}"
      f" (supremum {bound} = {float(bound):.6f})")

adv = adversary_njobs(policy, 2, lam, Fraction(1, 10**4))
print(f"adversary: x={[str(v) for v in adv.true_times]} ratio {float(evaluate(policy, adv).ratio):.6f}")
