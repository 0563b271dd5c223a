"""Perfect distinguishability and minimum error for states of a polytope state space.

A measurement with m outcomes on an n-dimensional state space is an m x n
matrix M whose columns each sum to 1; it is valid when M v has no negative
entry for every generator v. Nonnegativity on generators is enough because it
survives convex combination, so the whole hull is covered.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .convex_geometry import RPoint, StateSpace
from .indep_system import IndependenceSystem, IndexSubset
from .lp_core import Constraint, LinearProgram, Relation, Status, solve


class StateListError(ValueError):
    pass


@dataclass(frozen=True)
class Measurement:
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(a) for a in row) for row in self.matrix)
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("measurement matrix must be a non-empty rectangle")
        object.__setattr__(self, "matrix", rows)

    @property
    def outcomes(self) -> int:
        return len(self.matrix)

    @property
    def dim(self) -> int:
        return len(self.matrix[0])

    def apply(self, point: RPoint | Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(sum((a * t for a, t in zip(row, point) if a), Fraction(0)) for row in self.matrix)

    def preserves_sums(self) -> bool:
        return all(sum(col) == 1 for col in zip(*self.matrix))

    def is_valid_for(self, space: StateSpace) -> bool:
        if self.dim != space.n or not self.preserves_sums():
            return False
        return all(t >= 0 for g in space.generators for t in self.apply(g))

    def to_json(self) -> list[list[str]]:
        return [[str(a) for a in row] for row in self.matrix]


@dataclass(frozen=True)
class ErrorReport:
    """Minimum summed error over all measurements, with a measurement attaining it."""

    value: Fraction
    optimal_measurement: Measurement
    states: tuple[int, ...]

    @property
    def average(self) -> Fraction:
        return self.value / len(self.states)


def _check_states(space: StateSpace, states: Sequence[int]) -> tuple[int, ...]:
    states = tuple(states)
    if not states:
        raise StateListError("need at least one state")
    for pos in states:
        if not isinstance(pos, int) or not 0 <= pos < len(space):
            raise StateListError(f"generator position {pos!r} out of range [0, {len(space)})")
    if len(set(states)) != len(states):
        raise StateListError(f"duplicate generator positions in {states}")
    return states


def _measurement_lp(
    space: StateSpace, states: tuple[int, ...], pin: bool
) -> LinearProgram:
    n, m = space.n, len(states)
    nv = m * n

    def var(i: int, c: int) -> int:
        return i * n + c

    cons: list[Constraint] = []
    for c in range(n):
        row = [0] * nv
        for i in range(m):
            row[var(i, c)] = 1
        cons.append(Constraint(row, Relation.EQ, 1))

    skip: set[tuple[Fraction, ...]] = set()
    if pin:
        for k, pos in enumerate(states):
            v = space[pos].coords
            skip.add(v)
            for i in range(m):
                row = [Fraction(0)] * nv
                for c, t in enumerate(v):
                    row[var(i, c)] = t
                cons.append(Constraint(row, Relation.EQ, 1 if i == k else 0))

    seen: set[tuple[Fraction, ...]] = set()
    for g in space.generators:
        v = g.coords
        if v in seen or v in skip:
            continue
        seen.add(v)
        for i in range(m):
            row = [Fraction(0)] * nv
            for c, t in enumerate(v):
                row[var(i, c)] = t
            cons.append(Constraint(row, Relation.GE, 0))

    objective = None
    if not pin:
        objective = [Fraction(0)] * nv
        for k, pos in enumerate(states):
            for c, t in enumerate(space[pos].coords):
                objective[var(k, c)] -= t
    return LinearProgram(nv, tuple(cons), objective)


def _as_measurement(witness: Sequence[Fraction], m: int, n: int) -> Measurement:
    return Measurement(tuple(tuple(witness[i * n:(i + 1) * n]) for i in range(m)))


def find_jpd_measurement(space: StateSpace, states: Sequence[int]) -> Measurement | None:
    """A measurement sending the k-th listed state to outcome k with certainty, if one exists.

    Outcome k is pinned to state k; relabelling outcomes is itself a valid
    measurement, so no other assignment needs to be tried.
    """
    states = _check_states(space, states)
    if len(states) == 1:
        return Measurement(((Fraction(1),) * space.n,))
    res = solve(_measurement_lp(space, states, pin=True))
    if res.status is not Status.OPTIMAL:
        return None
    return _as_measurement(res.witness, len(states), space.n)


def is_jpd(space: StateSpace, states: Sequence[int]) -> bool:
    return find_jpd_measurement(space, states) is not None


def is_antipodal(space: StateSpace, a: int, b: int) -> bool:
    if a == b:
        raise StateListError("an antipodal pair needs two different states")
    return is_jpd(space, [a, b])


def symmetric_error(space: StateSpace, states: Sequence[int]) -> ErrorReport:
    """Minimum over measurements of sum_k P(outcome != k | state k)."""
    states = _check_states(space, states)
    m, n = len(states), space.n
    if m == 1:
        return ErrorReport(Fraction(0), Measurement(((Fraction(1),) * n,)), states)
    res = solve(_measurement_lp(space, states, pin=False))
    # The constraint set is non-empty and keeps every outcome probability in [0, 1].
    assert res.status is Status.OPTIMAL, res.status
    return ErrorReport(m + res.objective_value, _as_measurement(res.witness, m, n), states)


def summed_error(measurement: Measurement, space: StateSpace, states: Sequence[int]) -> Fraction:
    return sum((1 - measurement.apply(space[pos])[k] for k, pos in enumerate(states)), Fraction(0))


@dataclass
class SubsetVerdict:
    jpd: bool
    lp_calls: int


def jpd_verdicts(
    space: StateSpace, states: Sequence[int], prune: bool = True
) -> dict[int, SubsetVerdict]:
    """Verdict for every subset of the listed states, keyed by bitmask over list positions.

    Subsets are visited by increasing size. With ``prune`` on, a subset is only
    sent to the LP when all its one-smaller subsets passed; otherwise it fails
    without an LP call.
    """
    states = _check_states(space, states)
    n = len(states)
    verdicts: dict[int, SubsetVerdict] = {0: SubsetVerdict(True, 0)}
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            mask = sum(1 << i for i in combo)
            if size == 1:
                verdicts[mask] = SubsetVerdict(True, 0)
                continue
            if prune and not all(verdicts[mask & ~(1 << i)].jpd for i in combo):
                verdicts[mask] = SubsetVerdict(False, 0)
                continue
            verdicts[mask] = SubsetVerdict(is_jpd(space, [states[i] for i in combo]), 1)
    return verdicts


def jpd_family(space: StateSpace, states: Sequence[int], prune: bool = True) -> IndependenceSystem:
    """Index sets H (1-based over the list) whose states are jointly perfectly distinguishable."""
    verdicts = jpd_verdicts(space, states, prune)
    return IndependenceSystem(len(states), (mask for mask, v in verdicts.items() if v.jpd))


def subset_states(states: Sequence[int], h: IndexSubset) -> list[int]:
    return [states[i - 1] for i in h.indices]
