"""State space whose perfectly distinguishable vertex subsets are a prescribed independence system.

Start from the simplex vertices s_1..s_n. For every circuit H of the system and
every j in H add one "ruin point" that pushes coordinate j slightly negative;
that is enough to break joint distinguishability of (s_i) for i in H, while any
member of the system can still be separated by the orthogonal projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .convex_geometry import RPoint, StateSpace, simplex_vertices
from .indep_system import IndependenceSystem, IndexSubset


def epsilon(n: int) -> Fraction:
    if n < 2:
        raise ValueError(f"epsilon needs n >= 2, got {n}")
    return Fraction(1, 3 * n * n)


def ruin_point(h: IndexSubset | Iterable[int], j: int, n: int) -> RPoint:
    if not isinstance(h, IndexSubset):
        h = IndexSubset.of(n, h)
    if h.n != n:
        raise ValueError(f"subset {h} lives on [{h.n}], expected [{n}]")
    m = len(h)
    if m < 2:
        raise ValueError(f"ruin points need |H| >= 2, got {h}")
    if j not in h:
        raise ValueError(f"{j} is not an element of {h}")
    eps = epsilon(n)
    if m == n:
        rest = (1 + eps) / (n - 1)
        return RPoint(-eps if i == j else rest for i in range(1, n + 1))
    inside = (1 - eps * (m - 2)) / (m - 1)
    outside = eps * m / (n - m)
    return RPoint(
        -2 * eps if i == j else inside if i in h else outside for i in range(1, n + 1)
    )


def ruin_label(h: IndexSubset, j: int) -> str:
    return "q_{" + ",".join(map(str, h.indices)) + "}^" + str(j)


@dataclass(frozen=True)
class ConstructionOutput:
    space: StateSpace
    vertex_indices: dict[int, int]
    ruin_points: dict[tuple[IndexSubset, int], int]
    epsilon: Fraction | None

    @property
    def n(self) -> int:
        return self.space.n

    def vertex_positions(self) -> list[int]:
        return [self.vertex_indices[j] for j in range(1, self.n + 1)]

    def to_json(self) -> dict:
        data = self.space.to_json()
        data["epsilon"] = None if self.epsilon is None else str(self.epsilon)
        roles: list[dict | None] = [None] * len(self.space)
        for j, pos in self.vertex_indices.items():
            roles[pos] = {"vertex": j}
        for (h, j), pos in self.ruin_points.items():
            roles[pos] = {"circuit": list(h.indices), "j": j}
        for item, role in zip(data["generators"], roles):
            item["role"] = role
        return data


def build(system: IndependenceSystem) -> ConstructionOutput:
    n = system.n
    gens = simplex_vertices(n)
    labels = [f"s{j}" for j in range(1, n + 1)]
    vertex_indices = {j: j - 1 for j in range(1, n + 1)}
    ruins: dict[tuple[IndexSubset, int], int] = {}
    if n == 1:
        return ConstructionOutput(StateSpace(1, tuple(gens), tuple(labels)), vertex_indices, ruins, None)
    for h in sorted(system.circuits(), key=lambda c: c.indices):
        for j in h.indices:
            ruins[(h, j)] = len(gens)
            gens.append(ruin_point(h, j, n))
            labels.append(ruin_label(h, j))
    space = StateSpace(n, tuple(gens), tuple(labels))
    return ConstructionOutput(space, vertex_indices, ruins, epsilon(n))


def ruin_point_violations(q: RPoint, h: IndexSubset, j: int, n: int) -> list[str]:
    """Check the coordinate bounds a ruin point must satisfy; returns human-readable failures."""
    eps = epsilon(n)
    m = len(h)
    c = q.coords
    out = []
    if sum(c) != 1:
        out.append(f"coordinate sum {sum(c)} != 1")
    if not c[j - 1] < 0:
        out.append(f"coordinate {j} = {c[j - 1]} is not negative")
    for i in range(1, n + 1):
        if i != j and not c[i - 1] > 0:
            out.append(f"coordinate {i} = {c[i - 1]} is not positive")
        if c[i - 1] < -2 * eps:
            out.append(f"coordinate {i} = {c[i - 1]} below -2*eps")
    inside = [c[i - 1] for i in h.indices if i != j]
    outside = [c[i - 1] for i in range(1, n + 1) if i not in h]
    if any(t < 2 * n * eps for t in inside):
        out.append(f"an H\\{{j}} coordinate is below 2*n*eps = {2 * n * eps}")
    if 1 < m < n and not min(inside) > max(outside):
        out.append("H\\{j} coordinates do not exceed the [n]\\H coordinates")
    return out


def inner_coordinate_bound_holds(n: int) -> bool:
    """min((1 - eps(m-2))/(m-1), (1+eps)/(n-1)) >= 2/(3n) for every 2 <= m <= n."""
    eps = epsilon(n)
    full = (1 + eps) / (n - 1)
    return all(min((1 - eps * (m - 2)) / (m - 1), full) >= Fraction(2, 3 * n) for m in range(2, n + 1))
