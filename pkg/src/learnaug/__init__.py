"""Learning-augmented ski rental and non-clairvoyant scheduling.

Algorithms, exact evaluation, adversarial instances, an exact LP feasibility
verifier and trade-off curves.  All arithmetic is on ``fractions.Fraction``;
transcendental quantities are handled through rigorous rational enclosures.
"""

from .core import (
    JobSet,
    RatioReport,
    SkiInstance,
    TradeoffPoint,
    as_rational,
    format_rational,
    opt_completion,
    opt_ski_cost,
    ratio,
)
from .enclosure import Interval
from .simplex import LpFeasibility, LpProblem, lp_feasible
from .ski_lp import (
    analytic_distribution,
    analytic_k,
    asymptotic_lower_bound,
    build_lp,
    min_consistency,
    verify_tightness,
)
from .ski_rental import (
    det_adversary,
    det_buy_day,
    det_worst_case,
    expected_cost,
    rand_distribution,
    rand_worst_case,
)
from .scheduling import (
    adversary_njobs,
    round_robin_policy,
    simulate,
    thm3_bound,
    two_stage_policy,
    worst_case_ratio_2jobs,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
