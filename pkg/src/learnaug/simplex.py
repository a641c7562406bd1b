"""Exact feasibility checking for small linear programs over the rationals.

Phase one of the simplex method with Bland's anti-cycling rule.  No floating
point is involved: a feasible answer carries a witness point that has been
re-checked against every constraint, and an infeasible answer carries Farkas
multipliers that have been re-checked the same way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import RationalLike, as_rational, format_rational

LE = "<="
EQ = "="
_RELATIONS = (LE, EQ)


class MalformedLPError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __init__(self, coeffs: Sequence[RationalLike], relation: str, rhs: RationalLike):
        if relation not in _RELATIONS:
            raise MalformedLPError(f"unknown relation {relation!r}")
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in coeffs))
        object.__setattr__(self, "relation", relation)
        object.__setattr__(self, "rhs", as_rational(rhs))

    def lhs(self, point: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.coeffs, point) if a), Fraction(0))

    def holds(self, point: Sequence[Fraction]) -> bool:
        value = self.lhs(point)
        return value <= self.rhs if self.relation == LE else value == self.rhs


@dataclass(frozen=True)
class LpProblem:
    """Constraints over nonnegative variables; no objective."""

    num_vars: int
    constraints: tuple[Constraint, ...]

    def __init__(self, num_vars: int, constraints: Sequence[Constraint]):
        if num_vars < 1:
            raise MalformedLPError("an LP needs at least one variable")
        for i, c in enumerate(constraints):
            if len(c.coeffs) != num_vars:
                raise MalformedLPError(
                    f"constraint {i} has {len(c.coeffs)} coefficients, expected {num_vars}"
                )
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "constraints", tuple(constraints))

    def satisfied_by(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.num_vars or any(v < 0 for v in point):
            return False
        return all(c.holds(point) for c in self.constraints)

    def with_constraints(self, extra: Sequence[Constraint]) -> "LpProblem":
        return LpProblem(self.num_vars, self.constraints + tuple(extra))


@dataclass(frozen=True)
class LpFeasibility:
    feasible: bool
    witness: Optional[tuple[Fraction, ...]] = None
    # one multiplier per constraint, proving infeasibility (see is_farkas_certificate)
    certificate: Optional[tuple[Fraction, ...]] = None

    def __bool__(self) -> bool:
        return self.feasible


def is_farkas_certificate(lp: LpProblem, u: Sequence[Fraction]) -> bool:
    """True iff ``u`` proves ``lp`` has no nonnegative solution.

    Needs ``u >= 0`` on ``<=`` rows, ``sum u_i a_i >= 0`` componentwise and
    ``sum u_i b_i < 0``: any feasible point would give ``0 <= u.Ax <= u.b < 0``.
    """
    if len(u) != len(lp.constraints):
        return False
    for ui, c in zip(u, lp.constraints):
        if c.relation == LE and ui < 0:
            return False
    for j in range(lp.num_vars):
        if sum((ui * c.coeffs[j] for ui, c in zip(u, lp.constraints)), Fraction(0)) < 0:
            return False
    return sum((ui * c.rhs for ui, c in zip(u, lp.constraints)), Fraction(0)) < 0


def lp_feasible(lp: LpProblem) -> LpFeasibility:
    if not isinstance(lp, LpProblem):
        raise MalformedLPError(f"expected an LpProblem, got {type(lp).__name__}")
    n = lp.num_vars
    m = len(lp.constraints)
    if m == 0:
        return LpFeasibility(True, tuple(Fraction(0) for _ in range(n)))

    # Normalise to rows with rhs >= 0.  Column layout: originals, one slack per
    # inequality, then artificials for rows without a +1 slack.
    signs = []
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    slack_of: dict[int, int] = {}
    n_ineq = sum(1 for c in lp.constraints if c.relation == LE)
    col = n
    for i, c in enumerate(lp.constraints):
        s = -1 if c.rhs < 0 else 1
        signs.append(s)
        rows.append([s * a for a in c.coeffs])
        rhs.append(s * c.rhs)
        if c.relation == LE:
            slack_of[i] = col
            col += 1
    n_cols = n + n_ineq
    basis = [0] * m
    art_rows = []
    for i in range(m):
        row = rows[i]
        row.extend([Fraction(0)] * n_ineq)
        if i in slack_of:
            row[slack_of[i]] = Fraction(signs[i])
    for i in range(m):
        if i in slack_of and signs[i] == 1:
            basis[i] = slack_of[i]
        else:
            art_rows.append(i)
    n_total = n_cols + len(art_rows)
    cost = [Fraction(0)] * n_cols + [Fraction(1)] * len(art_rows)
    for a, i in enumerate(art_rows):
        for r, row in enumerate(rows):
            row.append(Fraction(1) if r == i else Fraction(0))
        basis[i] = n_cols + a
    initial_basis = basis[:]

    # reduced costs and objective value for the starting basis
    reduced = cost[:]
    value = Fraction(0)
    for i in art_rows:
        row = rows[i]
        for j in range(n_total):
            if row[j]:
                reduced[j] -= row[j]
        value += rhs[i]

    while value > 0:
        entering = next((j for j in range(n_total) if reduced[j] < 0), None)
        if entering is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][entering]
            if a > 0:
                t = rhs[i] / a
                if best is None or t < best or (t == best and basis[i] < basis[leave]):
                    best, leave = t, i
        if leave is None:
            # cannot happen: the phase-one objective is bounded below by zero
            raise ArithmeticError("phase-one simplex reported unbounded")
        _pivot(rows, rhs, reduced, leave, entering)
        basis[leave] = entering
        value = sum((rhs[i] for i in range(m) if basis[i] >= n_cols), Fraction(0))

    if value == 0:
        point = [Fraction(0)] * n
        for i, b in enumerate(basis):
            if b < n:
                point[b] = rhs[i]
        witness = tuple(point)
        if not lp.satisfied_by(witness):
            raise ArithmeticError("simplex witness fails re-verification")
        return LpFeasibility(True, witness)

    # dual of phase one: y_i = c_col - reduced_col for the row's starting unit column
    y = [cost[initial_basis[i]] - reduced[initial_basis[i]] for i in range(m)]
    u = tuple(-y[i] * signs[i] for i in range(m))
    if not is_farkas_certificate(lp, u):
        raise ArithmeticError("infeasibility certificate fails re-verification")
    return LpFeasibility(False, None, u)


def _pivot(rows, rhs, reduced, r, c) -> None:
    prow = rows[r]
    piv = prow[c]
    if piv != 1:
        inv = 1 / piv
        for j, v in enumerate(prow):
            if v:
                prow[j] = v * inv
        rhs[r] *= inv
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
            rhs[i] -= f * rhs[r]
    f = reduced[c]
    if f:
        for j in nz:
            reduced[j] -= f * prow[j]


def dump_lp(lp: LpProblem) -> str:
    """One line per constraint: ``coeff_1 ... coeff_n REL rhs`` with ``num/den`` values."""
    lines = []
    for c in lp.constraints:
        parts = [format_rational(a) for a in c.coeffs]
        parts += [c.relation, format_rational(c.rhs)]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def load_lp(text: str) -> LpProblem:
    constraints = []
    width = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 3 or tokens[-2] not in _RELATIONS:
            raise MalformedLPError(f"line {lineno}: expected 'coeffs... REL rhs'")
        coeffs = tokens[:-2]
        if width is None:
            width = len(coeffs)
        try:
            constraints.append(Constraint(coeffs, tokens[-2], tokens[-1]))
        except ValueError as exc:
            raise MalformedLPError(f"line {lineno}: {exc}") from exc
    if width is None:
        raise MalformedLPError("no constraints")
    return LpProblem(width, constraints)
