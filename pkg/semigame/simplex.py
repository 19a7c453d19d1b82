# Semigame - Exact Linear Programming
# Two-phase tableau simplex with Bland's anti-cycling rule over Fractions
# (or floats with a tolerance for the monitoring backend)

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Optional, Sequence

from .exceptions import InternalConsistencyError, InputError

# Set up logging
logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    """
    minimize objective . x
    subject to ub_rows x <= ub_rhs, eq_rows x = eq_rhs, x >= 0
    """

    objective: Sequence[Any]
    ub_rows: Sequence[Sequence[Any]] = field(default_factory=list)
    ub_rhs: Sequence[Any] = field(default_factory=list)
    eq_rows: Sequence[Sequence[Any]] = field(default_factory=list)
    eq_rhs: Sequence[Any] = field(default_factory=list)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def validate(self) -> None:
        n = self.n_vars
        if len(self.ub_rows) != len(self.ub_rhs) or len(self.eq_rows) != len(self.eq_rhs):
            raise InputError("Constraint rows and right-hand sides differ in length")
        for row in list(self.ub_rows) + list(self.eq_rows):
            if len(row) != n:
                raise InputError(f"Constraint row has {len(row)} coefficients, expected {n}")


@dataclass
class LPSolution:
    status: str
    x: List[Any]
    objective: Any

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Dense simplex tableau; the last entry of every row is the right-hand side"""

    def __init__(self, rows: List[List[Any]], basis: List[int], n_cols: int, tolerance: Any, zero: Any):
        self.rows = rows
        self.basis = basis
        self.n_cols = n_cols
        self.tol = tolerance
        self.zero = zero
        self.cost_row: List[Any] = []
        self.allowed = [True] * n_cols

    def set_costs(self, costs: Sequence[Any]) -> None:
        row = list(costs) + [self.zero]
        for i, b in enumerate(self.basis):
            cb = row[b]
            if cb:
                pivot_row = self.rows[i]
                for j in range(self.n_cols + 1):
                    if pivot_row[j]:
                        row[j] -= cb * pivot_row[j]
        self.cost_row = row

    def objective_value(self) -> Any:
        return -self.cost_row[self.n_cols]

    def pivot(self, r: int, c: int) -> None:
        pivot_row = self.rows[r]
        pivot = pivot_row[c]
        if pivot != 1:
            pivot_row[:] = [x / pivot for x in pivot_row]
        nonzero = [j for j in range(self.n_cols + 1) if pivot_row[j]]
        for i, row in enumerate(self.rows):
            if i != r:
                factor = row[c]
                if factor:
                    for j in nonzero:
                        row[j] -= factor * pivot_row[j]
        factor = self.cost_row[c]
        if factor:
            for j in nonzero:
                self.cost_row[j] -= factor * pivot_row[j]
        self.basis[r] = c

    def run(self, max_iterations: int) -> str:
        for _ in range(max_iterations):
            # Bland: lowest-index improving column
            entering = next(
                (j for j in range(self.n_cols) if self.allowed[j] and self.cost_row[j] < -self.tol),
                None,
            )
            if entering is None:
                return OPTIMAL

            leaving = None
            best_ratio = None
            for i, row in enumerate(self.rows):
                coeff = row[entering]
                if coeff > self.tol:
                    ratio = row[self.n_cols] / coeff
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[leaving])
                    ):
                        best_ratio = ratio
                        leaving = i
            if leaving is None:
                return UNBOUNDED
            self.pivot(leaving, entering)
        raise InternalConsistencyError(f"Simplex did not terminate within {max_iterations} pivots")


def solve_linear_program(
    lp: LinearProgram,
    tolerance: Optional[float] = None,
    max_iterations: int = 100000,
) -> LPSolution:
    """
    Solve a linear program with the two-phase simplex method

    With tolerance None every coefficient is converted to Fraction and all
    comparisons are exact. A float tolerance switches to float arithmetic.

    Args:
        lp: program in inequality/equality form with x >= 0
        tolerance: None for exact arithmetic, else float tolerance
        max_iterations: pivot limit per phase

    Returns:
        LPSolution: status, primal point and objective value
    """
    lp.validate()
    exact = tolerance is None
    convert = Fraction if exact else float
    zero = Fraction(0) if exact else 0.0
    tol = zero if exact else float(tolerance)

    n = lp.n_vars
    m_ub = len(lp.ub_rows)
    m_eq = len(lp.eq_rows)
    m = m_ub + m_eq
    n_slack = m_ub

    # Rows needing an artificial basic variable: negated inequalities and equalities
    needs_artificial = []
    raw_rows = []
    for i in range(m_ub):
        coeffs = [convert(x) for x in lp.ub_rows[i]]
        rhs = convert(lp.ub_rhs[i])
        slack = [zero] * n_slack
        slack[i] = convert(1)
        if rhs < 0:
            coeffs = [-x for x in coeffs]
            slack = [-x for x in slack]
            rhs = -rhs
            needs_artificial.append(True)
        else:
            needs_artificial.append(False)
        raw_rows.append((coeffs + slack, rhs))
    for i in range(m_eq):
        coeffs = [convert(x) for x in lp.eq_rows[i]]
        rhs = convert(lp.eq_rhs[i])
        if rhs < 0:
            coeffs = [-x for x in coeffs]
            rhs = -rhs
        raw_rows.append((coeffs + [zero] * n_slack, rhs))
        needs_artificial.append(True)

    n_art = sum(needs_artificial)
    n_cols = n + n_slack + n_art
    rows: List[List[Any]] = []
    basis: List[int] = []
    art_index = n + n_slack
    for i, (coeffs, rhs) in enumerate(raw_rows):
        art = [zero] * n_art
        if needs_artificial[i]:
            art[art_index - n - n_slack] = convert(1)
            basis.append(art_index)
            art_index += 1
        else:
            basis.append(n + i)
        rows.append(coeffs + art + [rhs])

    tableau = _Tableau(rows, basis, n_cols, tol, zero)

    # Phase 1
    if n_art:
        tableau.set_costs([zero] * (n + n_slack) + [convert(1)] * n_art)
        tableau.run(max_iterations)
        if tableau.objective_value() > tol:
            return LPSolution(status=INFEASIBLE, x=[], objective=None)

        # Drive artificials out of the basis or drop redundant rows
        first_art = n + n_slack
        r = 0
        while r < len(tableau.rows):
            if tableau.basis[r] >= first_art:
                row = tableau.rows[r]
                col = next((j for j in range(first_art) if abs(row[j]) > tol), None)
                if col is None:
                    del tableau.rows[r]
                    del tableau.basis[r]
                    continue
                tableau.pivot(r, col)
            r += 1
        for j in range(first_art, n_cols):
            tableau.allowed[j] = False

    # Phase 2
    costs = [convert(c) for c in lp.objective] + [zero] * (n_slack + n_art)
    tableau.set_costs(costs)
    status = tableau.run(max_iterations)
    if status == UNBOUNDED:
        return LPSolution(status=UNBOUNDED, x=[], objective=None)

    x = [zero] * n
    for i, b in enumerate(tableau.basis):
        if b < n:
            x[b] = tableau.rows[i][n_cols]
    objective = sum((c * v for c, v in zip(costs, x)), zero)
    logger.debug(f"LP solved: {n} variables, {m} constraints, objective {objective}")
    return LPSolution(status=OPTIMAL, x=x, objective=objective)
