"""Write both trade-off figures as CSV and SVG into the current directory.

Run: python3 demos/tradeoff_figures.py
"""

from fractions import Fraction

from learnaug.tradeoff_curves import dominance_violations, emit, rows_of, sched_curves, ski_curves

ski = ski_curves(100, [Fraction(k, 20) for k in range(1, 20)])
emit(ski, "ski_tradeoff.csv", "ski_tradeoff.svg")

sched = sched_curves(2, [Fraction(k, 45) for k in range(1, 15)], step=Fraction(1, 10))
emit(sched, "sched_tradeoff.csv", "sched_tradeoff.svg")

for name, series in (("ski", ski), ("sched2", sched)):
    bad = dominance_violations(rows_of(series))
    print(f"{name}: {sum(len(s.points) for s in series)} points, dominance violations: {len(bad)}")
