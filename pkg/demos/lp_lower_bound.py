"""The randomized lower bound as a finite LP, solved exactly.

For a long prediction, a buy-day distribution that is beta-consistent and
gamma-robust exists iff a small LP is feasible.  Bisection on beta finds the
threshold, and it lands on a closed form.

Run: python3 demos/lp_lower_bound.py
"""

from fractions import Fraction

from learnaug.simplex import dump_lp
from learnaug.ski_lp import (
    analytic_k,
    asymptotic_lower_bound,
    bisect_boundary,
    build_lp,
    feasibility,
    min_consistency,
)
from learnaug.tradeoff_curves import decimal_string

print("LP for B=3, beta=3/2, gamma=2 (probability row, consistency row, robustness rows):")
print(dump_lp(build_lp(3, Fraction(3, 2), 2)))

# Infeasible points come with multipliers that prove it.
res = feasibility(3, Fraction(11, 10), 2)
print(f"beta=11/10 feasible? {res.feasible}; certificate {[str(u) for u in res.certificate]}\n")

gamma = Fraction(2)
print(f"threshold consistency at gamma={gamma}")
for B in (5, 10, 20, 40):
    lo, hi = bisect_boundary(B, gamma, 40)
    exact = min_consistency(B, gamma)
    print(f"  B={B:>2}: bisection [{decimal_string(lo)}, {decimal_string(hi)}]"
          f"  closed form {decimal_string(exact)} (k={analytic_k(B, gamma)})")
print(f"  B->inf: {decimal_string(asymptotic_lower_bound(gamma))}  (gamma * ln(1 + 1/(gamma-1)))")
