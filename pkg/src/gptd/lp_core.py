"""Exact rational linear programming.

Two-phase primal simplex with Bland's smallest-index rule, so it cannot cycle.
The tableau is kept in integers: every constraint row is scaled so that its
entry in its own basic column is the row denominator, and rows are reduced by
their gcd after each update. Fractions only appear at the boundary.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Sequence

from .convex_geometry import to_fraction

PIVOT_LIMIT_ENV = "GPTD_LP_PIVOT_LIMIT"


class Relation(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class MalformedLP(ValueError):
    pass


class PivotLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    def __init__(self, coeffs: Iterable, relation: Relation | str, rhs):
        object.__setattr__(self, "coeffs", tuple(to_fraction(a) for a in coeffs))
        object.__setattr__(self, "relation", Relation(relation))
        object.__setattr__(self, "rhs", to_fraction(rhs))

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((a * v for a, v in zip(self.coeffs, x) if a), Fraction(0))
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """minimize objective . x subject to constraints and per-variable bounds.

    ``objective`` defaults to all zeros (pure feasibility); a bound of ``None``
    means the variable is unbounded on that side.
    """

    num_vars: int
    constraints: tuple[Constraint, ...] = ()
    objective: tuple[Fraction, ...] | None = None
    lower: tuple[Fraction | None, ...] | None = None
    upper: tuple[Fraction | None, ...] | None = None

    def __post_init__(self):
        n = self.num_vars
        if not isinstance(n, int) or n < 0:
            raise MalformedLP(f"num_vars must be a non-negative int, got {n!r}")
        cons = tuple(c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints)
        for k, c in enumerate(cons):
            if len(c.coeffs) != n:
                raise MalformedLP(f"constraint {k} has {len(c.coeffs)} coefficients, expected {n}")
        obj = (Fraction(0),) * n if self.objective is None else tuple(to_fraction(a) for a in self.objective)
        if len(obj) != n:
            raise MalformedLP(f"objective has {len(obj)} coefficients, expected {n}")
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "objective", obj)
        for name in ("lower", "upper"):
            bounds = getattr(self, name)
            bounds = (None,) * n if bounds is None else tuple(None if b is None else to_fraction(b) for b in bounds)
            if len(bounds) != n:
                raise MalformedLP(f"{name} bounds have length {len(bounds)}, expected {n}")
            object.__setattr__(self, name, bounds)

    def is_satisfied_by(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.num_vars:
            return False
        for v, lo, hi in zip(x, self.lower, self.upper):
            if (lo is not None and v < lo) or (hi is not None and v > hi):
                return False
        return all(c.satisfied_by(x) for c in self.constraints)

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.objective, x) if a), Fraction(0))


@dataclass(frozen=True)
class LPResult:
    status: Status
    witness: tuple[Fraction, ...] | None = None
    objective_value: Fraction | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def pivot_ceiling(lp: LinearProgram) -> int:
    m = len(lp.constraints)
    return comb(lp.num_vars + m, m)


def _env_pivot_limit() -> int | None:
    raw = os.environ.get(PIVOT_LIMIT_ENV)
    return int(raw) if raw else None


def _int_row(values: Sequence[Fraction]) -> list[int]:
    scale = lcm(*(v.denominator for v in values)) if values else 1
    return [v.numerator * (scale // v.denominator) for v in values]


class _Tableau:
    """Integer tableau; row i represents rows[i] / rows[i][basis[i]]."""

    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int, limit: int | None):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.obj: list[int] = [0] * (ncols + 1)
        self.obj_den = 1
        self.pivots = 0
        self.limit = limit

    def set_objective(self, costs: Sequence[Fraction]) -> None:
        obj = _int_row([*costs, Fraction(0)])
        den = 1
        for row, b in zip(self.rows, self.basis):
            a = obj[b]
            if a:
                d = row[b]
                obj = [x * d - a * y for x, y in zip(obj, row)]
                den *= d
                g = gcd(*obj, den)
                if g > 1:
                    obj = [x // g for x in obj]
                    den //= g
        self.obj, self.obj_den = obj, den

    def objective_value(self) -> Fraction:
        return Fraction(-self.obj[-1], self.obj_den)

    def pivot(self, r: int, c: int) -> None:
        self.pivots += 1
        if self.limit is not None and self.pivots > self.limit:
            raise PivotLimitExceeded(f"more than {self.limit} pivots")
        rows = self.rows
        pr = rows[r]
        p = pr[c]
        if p < 0:
            pr = [-x for x in pr]
            rows[r] = pr
            p = -p
        nz = [(j, y) for j, y in enumerate(pr) if y]
        sparse = 4 * len(nz) < len(pr)
        for i, row in enumerate(rows):
            a = row[c]
            if i == r or not a:
                continue
            if sparse:
                new = [x * p for x in row] if p != 1 else row[:]
                for j, y in nz:
                    new[j] -= a * y
            else:
                new = [x * p - a * y for x, y in zip(row, pr)]
            g = gcd(*new)
            if g > 1:
                new = [x // g for x in new]
            rows[i] = new
        a = self.obj[c]
        if a:
            new = [x * p - a * y for x, y in zip(self.obj, pr)]
            den = self.obj_den * p
            g = gcd(*new, den)
            if g > 1:
                new = [x // g for x in new]
                den //= g
            self.obj, self.obj_den = new, den
        self.basis[r] = c

    def run(self, allowed: int) -> bool:
        """Bland's rule over columns [0, allowed). Returns False when unbounded."""
        rows, basis = self.rows, self.basis
        while True:
            obj = self.obj
            c = next((j for j in range(allowed) if obj[j] < 0), None)
            if c is None:
                return True
            best = -1
            best_rhs = best_a = 0
            for i, row in enumerate(rows):
                a = row[c]
                if a > 0:
                    rhs = row[-1]
                    if best < 0:
                        better = True
                    else:
                        lhs_cmp = rhs * best_a
                        rhs_cmp = best_rhs * a
                        better = lhs_cmp < rhs_cmp or (lhs_cmp == rhs_cmp and basis[i] < basis[best])
                    if better:
                        best, best_rhs, best_a = i, rhs, a
            if best < 0:
                return False
            self.pivot(best, c)

    def values(self) -> list[Fraction]:
        y = [Fraction(0)] * self.ncols
        for row, b in zip(self.rows, self.basis):
            y[b] = Fraction(row[-1], row[b])
        return y


def solve(lp: LinearProgram, pivot_limit: int | None = None) -> LPResult:
    """Exact optimum of ``lp`` or an exact infeasible/unbounded verdict.

    The pivot limit (default: ``$GPTD_LP_PIVOT_LIMIT`` if set, else none) exists
    for debugging only; Bland's rule terminates on its own.
    """
    if pivot_limit is None:
        pivot_limit = _env_pivot_limit()
    n = lp.num_vars

    # x_i = offset_i + sum(sign * y_col) with every y_col >= 0.
    columns: list[list[tuple[int, int]]] = []
    offsets: list[Fraction] = []
    bounded: list[tuple[int, Fraction]] = []
    ncols = 0
    for lo, hi in zip(lp.lower, lp.upper):
        if lo is not None:
            columns.append([(ncols, 1)])
            offsets.append(lo)
            if hi is not None:
                bounded.append((ncols, hi - lo))
            ncols += 1
        elif hi is not None:
            columns.append([(ncols, -1)])
            offsets.append(hi)
            ncols += 1
        else:
            columns.append([(ncols, 1), (ncols + 1, -1)])
            offsets.append(Fraction(0))
            ncols += 2
    nstruct = ncols

    specs: list[tuple[list[Fraction], Relation, Fraction]] = []
    for con in lp.constraints:
        coeffs = [Fraction(0)] * nstruct
        rhs = con.rhs
        for i, a in enumerate(con.coeffs):
            if a:
                rhs -= a * offsets[i]
                for col, sign in columns[i]:
                    coeffs[col] += a * sign
        specs.append((coeffs, con.relation, rhs))
    for col, width in bounded:
        coeffs = [Fraction(0)] * nstruct
        coeffs[col] = Fraction(1)
        specs.append((coeffs, Relation.LE, width))

    # Slack columns follow the structural ones; artificials go last so that
    # Bland's rule prefers real columns and phase two can simply cut them off.
    nslack = sum(1 for _, rel, _ in specs if rel is not Relation.EQ)
    nreal = nstruct + nslack
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    needs_artificial: list[int] = []
    slack = nstruct
    for coeffs, rel, rhs in specs:
        row = coeffs + [Fraction(0)] * nslack
        sign = 0
        if rel is not Relation.EQ:
            sign = 1 if rel is Relation.LE else -1
            row[slack] = Fraction(sign)
            basis.append(slack)
            slack += 1
        else:
            basis.append(-1)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            sign = -sign
        if sign != 1:
            needs_artificial.append(len(rows))
        rows.append(row + [rhs])

    nart = len(needs_artificial)
    total = nreal + nart
    for k, row in enumerate(rows):
        rows[k] = row[:-1] + [Fraction(0)] * nart + row[-1:]
    for a, k in enumerate(needs_artificial):
        rows[k][nreal + a] = Fraction(1)
        basis[k] = nreal + a
    int_rows = [_int_row(row) for row in rows]
    tab = _Tableau(int_rows, basis, total, pivot_limit)

    if nart:
        tab.set_objective([Fraction(0)] * nreal + [Fraction(1)] * nart)
        tab.run(total)
        if tab.obj[-1] != 0:
            return LPResult(Status.INFEASIBLE, pivots=tab.pivots)
        _drive_out_artificials(tab, nreal)

    costs = [Fraction(0)] * total
    for i, c in enumerate(lp.objective):
        if c:
            for col, sign in columns[i]:
                costs[col] += c * sign
    tab.set_objective(costs)
    if not tab.run(nreal):
        return LPResult(Status.UNBOUNDED, pivots=tab.pivots)

    y = tab.values()
    x = tuple(off + sum((sign * y[col] for col, sign in cols), Fraction(0)) for off, cols in zip(offsets, columns))
    return LPResult(Status.OPTIMAL, x, lp.evaluate(x), tab.pivots)


def _drive_out_artificials(tab: _Tableau, nreal: int) -> None:
    k = 0
    while k < len(tab.rows):
        if tab.basis[k] >= nreal:
            row = tab.rows[k]
            col = next((j for j in range(nreal) if row[j]), None)
            if col is None:
                # Redundant equality: the row is zero on every real column.
                del tab.rows[k]
                del tab.basis[k]
                continue
            tab.pivot(k, col)
        k += 1


def feasible(lp: LinearProgram, pivot_limit: int | None = None) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Phase one only: is there any point satisfying every constraint and bound?"""
    zero = LinearProgram(lp.num_vars, lp.constraints, None, lp.lower, lp.upper)
    res = solve(zero, pivot_limit)
    if res.status is Status.OPTIMAL:
        return True, res.witness
    return False, None
