"""Exact points of the hyperplane {t : t_1 + ... + t_n = 1} and V-represented state spaces.

All coordinates are :class:`fractions.Fraction`; nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .indep_system import IndexSubset

Vector = tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Exact conversion; floats are refused because they carry binary rounding."""
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def format_fraction(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class RPoint:
    """A point with exact rational coordinates summing to 1."""

    coords: Vector

    def __init__(self, coords: Iterable):
        coords = tuple(to_fraction(c) for c in coords)
        if not coords:
            raise ValueError("a point needs at least one coordinate")
        if sum(coords) != 1:
            raise ValueError(f"coordinates sum to {sum(coords)}, not 1")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.coords)) + ")"


def simplex_vertex(j: int, n: int) -> RPoint:
    """The j-th (1-based) vertex of the probability simplex in dimension n."""
    if not 1 <= j <= n:
        raise IndexError(f"vertex index {j} outside [1, {n}]")
    return RPoint(1 if i == j else 0 for i in range(1, n + 1))


def simplex_vertices(n: int) -> list[RPoint]:
    return [simplex_vertex(j, n) for j in range(1, n + 1)]


def indicator(h: IndexSubset | Iterable[int], n: int) -> Vector:
    """0/1 vector of a subset of [n]. Not an RPoint unless the subset is a singleton."""
    if not isinstance(h, IndexSubset):
        h = IndexSubset.of(n, h)
    elif h.n != n:
        raise ValueError(f"subset {h} lives on [{h.n}], expected [{n}]")
    return tuple(Fraction(1) if j in h else Fraction(0) for j in range(1, n + 1))


def project(p: RPoint, m: int) -> RPoint:
    """Orthogonal projection onto the m-dimensional hyperplane.

    The trailing n - m coordinates are spread evenly over the first m.
    """
    n = p.dim
    if not 1 <= m <= n:
        raise ValueError(f"target dimension {m} outside [1, {n}]")
    if m == n:
        return p
    r = sum(p.coords[m:], Fraction(0)) / m
    return RPoint(t + r for t in p.coords[:m])


def in_simplex(p: RPoint) -> bool:
    return all(t >= 0 for t in p.coords)


def convex_combination(points: Sequence[RPoint], weights: Sequence) -> RPoint:
    if len(points) != len(weights):
        raise ValueError(f"{len(points)} points but {len(weights)} weights")
    if not points:
        raise ValueError("empty convex combination")
    weights = [to_fraction(w) for w in weights]
    if any(w < 0 for w in weights):
        raise ValueError("negative weight in convex combination")
    if sum(weights) != 1:
        raise ValueError(f"weights sum to {sum(weights)}, not 1")
    n = points[0].dim
    if any(p.dim != n for p in points):
        raise ValueError("points of different dimensions")
    return RPoint(
        sum((w * p.coords[i] for p, w in zip(points, weights)), Fraction(0)) for i in range(n)
    )


@dataclass(frozen=True)
class StateSpace:
    """Convex hull of finitely many generators. Redundant generators are kept as given."""

    n: int
    generators: tuple[RPoint, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        gens = tuple(g if isinstance(g, RPoint) else RPoint(g) for g in self.generators)
        if not gens:
            raise ValueError("a state space needs at least one generator")
        for g in gens:
            if g.dim != self.n:
                raise ValueError(f"generator {g} has dimension {g.dim}, expected {self.n}")
        labels = tuple(self.labels) or tuple(f"g{i + 1}" for i in range(len(gens)))
        if len(labels) != len(gens):
            raise ValueError(f"{len(labels)} labels for {len(gens)} generators")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def simplex(cls, n: int) -> "StateSpace":
        return cls(n, tuple(simplex_vertices(n)), tuple(f"s{j}" for j in range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, pos: int) -> RPoint:
        return self.generators[pos]

    def position(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "generators": [
                {"label": lab, "coords": [format_fraction(c) for c in g.coords]}
                for lab, g in zip(self.labels, self.generators)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StateSpace":
        n = int(data["n"])
        gens, labels = [], []
        for i, item in enumerate(data["generators"]):
            if isinstance(item, dict):
                gens.append(RPoint(item["coords"]))
                labels.append(str(item.get("label", f"g{i + 1}")))
            else:
                gens.append(RPoint(item))
                labels.append(f"g{i + 1}")
        return cls(n, tuple(gens), tuple(labels))
