"""Ski rental with a prediction: how the knob lambda trades consistency for robustness.

Run: python3 demos/ski_rental_tour.py
"""

from fractions import Fraction

from learnaug.ski_rental import (
    det_adversary,
    det_worst_case,
    rand_consistency_bound,
    rand_distribution,
    rand_robustness_bound,
    rand_worst_case,
)
from learnaug.tradeoff_curves import decimal_string

B = 50

# The deterministic rule buys early when the prediction says "long season"
# and late otherwise.  Its exact worst case, measured over every season
# length that can matter:
print(f"deterministic rule, B={B}")
for lam in (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
    p = det_worst_case(B, lam)
    adv = det_adversary(B, lam)
    print(f"  lambda={lam}: consistency={decimal_string(p.beta, 6)} robustness={decimal_string(p.gamma, 6)}"
          f"  (hard case: predict {adv.predicted_days} days, season ends on day {adv.true_days})")

# The randomized rule spreads the purchase over the first k days with
# geometrically increasing weights.
dist = rand_distribution(B, 2 * B, Fraction(1, 2))
print(f"\nrandomized rule buys on days 1..{dist.support_end}; P(day 1)={decimal_string(dist.probs[0], 6)}"
      f", P(day {dist.support_end})={decimal_string(dist.probs[-1], 6)}")

# Measured exactly, then compared with the closed-form guarantees.
print(f"\nrandomized rule, B={B}: measured vs closed form")
for lam in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
    p = rand_worst_case(B, lam)
    cb = rand_consistency_bound(lam).hi
    rb = rand_robustness_bound(B, lam).hi
    print(f"  lambda={lam}: consistency {decimal_string(p.beta, 6)} <= {decimal_string(cb, 6)}"
          f", robustness {decimal_string(p.gamma, 6)} <= {decimal_string(rb, 6)}")
