"""Independence systems on the ground set [n] = {1, ..., n}.

Subsets are bitmasks internally (bit ``j - 1`` stands for element ``j``);
everything user-facing is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class IndependenceSystemError(ValueError):
    pass


class NotDownwardClosed(IndependenceSystemError):
    def __init__(self, present: "IndexSubset", missing: "IndexSubset"):
        self.present = present
        self.missing = missing
        super().__init__(f"{present} is a member but its subset {missing} is not")


class MissingSingleton(IndependenceSystemError):
    def __init__(self, j: int):
        self.j = j
        super().__init__(f"singleton {{{j}}} is not a member")


@dataclass(frozen=True, order=False)
class IndexSubset:
    """A subset of [n] stored as a bitmask."""

    bits: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ground set size must be positive, got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bitmask {self.bits:#b} has bits outside [{self.n}]")

    @classmethod
    def of(cls, n: int, indices: Iterable[int] = ()) -> "IndexSubset":
        bits = 0
        for j in indices:
            if not 1 <= j <= n:
                raise ValueError(f"index {j} outside [1, {n}]")
            bits |= 1 << (j - 1)
        return cls(bits, n)

    @classmethod
    def full(cls, n: int) -> "IndexSubset":
        return cls((1 << n) - 1, n)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(j + 1 for j in range(self.n) if self.bits >> j & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, j: int) -> bool:
        return 1 <= j <= self.n and bool(self.bits >> (j - 1) & 1)

    def issubset(self, other: "IndexSubset") -> bool:
        return self.bits & ~other.bits == 0

    def __le__(self, other: "IndexSubset") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "IndexSubset") -> bool:
        return self.bits != other.bits and self.issubset(other)

    def __or__(self, other: "IndexSubset") -> "IndexSubset":
        return IndexSubset(self.bits | other.bits, max(self.n, other.n))

    def add(self, j: int) -> "IndexSubset":
        return IndexSubset.of(self.n, (*self.indices, j))

    def remove(self, j: int) -> "IndexSubset":
        if j not in self:
            raise KeyError(j)
        return IndexSubset(self.bits & ~(1 << (j - 1)), self.n)

    def complement(self) -> "IndexSubset":
        return IndexSubset(((1 << self.n) - 1) & ~self.bits, self.n)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return len(self), self.indices

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.indices)) + "}"

    def __repr__(self) -> str:
        return f"IndexSubset({self}, n={self.n})"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _canonical_order(masks: Iterable[int], n: int) -> list[int]:
    return sorted(masks, key=lambda b: IndexSubset(b, n).sort_key())


def _maximal_masks(n: int, masks: frozenset[int]) -> frozenset[int]:
    # In a downward-closed family H is maximal iff no one-element extension is present.
    return frozenset(
        h for h in masks
        if not any(not h >> j & 1 and (h | 1 << j) in masks for j in range(n))
    )


def _downward_closure(n: int, generators: Iterable[int]) -> set[int]:
    closed: set[int] = {0}
    frontier = [g for g in generators]
    while frontier:
        h = frontier.pop()
        if h in closed:
            continue
        closed.add(h)
        rest = h
        while rest:
            low = rest & -rest
            rest ^= low
            sub = h & ~low
            if sub not in closed:
                frontier.append(sub)
    return closed


class IndependenceSystem:
    """A downward-closed family of subsets of [n] containing every singleton.

    Instances are immutable; construct them with :meth:`from_members` or
    :meth:`from_maximal`.
    """

    __slots__ = ("_n", "_masks", "_maximal")

    def __init__(self, n: int, masks: Iterable[int]):
        if n < 1:
            raise ValueError(f"ground set size must be positive, got {n}")
        masks = frozenset(masks)
        for h in masks:
            if h < 0 or h >> n:
                raise ValueError(f"bitmask {h:#b} has bits outside [{n}]")
        _validate(n, masks)
        self._n = n
        self._masks = masks
        self._maximal = _maximal_masks(n, masks)

    @classmethod
    def from_members(cls, n: int, sets: Iterable[IndexSubset | Iterable[int]]) -> "IndependenceSystem":
        return cls(n, (_as_subset(n, s).bits for s in sets))

    @classmethod
    def from_maximal(
        cls, n: int, maximal_sets: Iterable[IndexSubset | Iterable[int]], strict: bool = True
    ) -> "IndependenceSystem":
        """Downward closure of ``maximal_sets``, plus the empty set and singletons.

        With ``strict`` on, every element of [n] must occur in some input set;
        otherwise the missing singletons are added silently.
        """
        gens = [_as_subset(n, s).bits for s in maximal_sets]
        covered = 0
        for g in gens:
            covered |= g
        for j in range(n):
            if not covered >> j & 1:
                if strict:
                    raise MissingSingleton(j + 1)
                gens.append(1 << j)
        return cls(n, _downward_closure(n, gens))

    @classmethod
    def power_set(cls, n: int) -> "IndependenceSystem":
        return cls(n, range(1 << n))

    @property
    def n(self) -> int:
        return self._n

    @property
    def masks(self) -> frozenset[int]:
        return self._masks

    @property
    def members(self) -> list[IndexSubset]:
        return [IndexSubset(b, self._n) for b in _canonical_order(self._masks, self._n)]

    @property
    def maximal(self) -> list[IndexSubset]:
        return [IndexSubset(b, self._n) for b in _canonical_order(self._maximal, self._n)]

    def __contains__(self, h: IndexSubset | Iterable[int]) -> bool:
        return _as_subset(self._n, h).bits in self._masks

    def contains(self, h: IndexSubset | Iterable[int]) -> bool:
        return h in self

    def __len__(self) -> int:
        return len(self._masks)

    def __iter__(self) -> Iterator[IndexSubset]:
        return iter(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndependenceSystem):
            return NotImplemented
        return self._n == other._n and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self._n, self._masks))

    def __repr__(self) -> str:
        maxes = ", ".join(str(h) for h in self.maximal)
        return f"IndependenceSystem(n={self._n}, maximal=[{maxes}])"

    def circuits(self) -> list[IndexSubset]:
        """Minimally dependent sets: non-members all of whose one-smaller subsets are members."""
        return [IndexSubset(b, self._n) for b in _canonical_order(self.circuit_masks(), self._n)]

    def circuit_masks(self) -> frozenset[int]:
        # Every circuit is a member plus one element, so scan those extensions only.
        found = set()
        for h in self._masks:
            for j in range(self._n):
                bit = 1 << j
                if h & bit:
                    continue
                cand = h | bit
                if cand in self._masks or cand in found:
                    continue
                if all((cand & ~(1 << i)) in self._masks for i in range(self._n) if cand >> i & 1):
                    found.add(cand)
        return frozenset(found)

    def is_power_set(self) -> bool:
        return len(self._masks) == 1 << self._n

    def to_json(self, form: str = "maximal") -> dict:
        if form == "maximal":
            return {"n": self._n, "maximal_independent": [list(h.indices) for h in self.maximal]}
        if form == "members":
            return {"n": self._n, "members": [list(h.indices) for h in self.members]}
        raise ValueError(f"unknown form {form!r}")

    @classmethod
    def from_json(cls, data: dict, strict: bool = True) -> "IndependenceSystem":
        n = int(data["n"])
        if "members" in data:
            return cls.from_members(n, data["members"])
        if "maximal_independent" in data:
            return cls.from_maximal(n, data["maximal_independent"], strict=strict)
        raise ValueError("expected a 'members' or 'maximal_independent' key")


def _as_subset(n: int, s: IndexSubset | Iterable[int]) -> IndexSubset:
    if isinstance(s, IndexSubset):
        if s.n != n:
            raise ValueError(f"subset {s} lives on [{s.n}], expected [{n}]")
        return s
    return IndexSubset.of(n, s)


def _validate(n: int, masks: frozenset[int]) -> None:
    for j in range(n):
        if (1 << j) not in masks:
            raise MissingSingleton(j + 1)
    for h in _canonical_order(masks, n):
        for i in range(n):
            if h >> i & 1 and (h & ~(1 << i)) not in masks:
                raise NotDownwardClosed(IndexSubset(h, n), IndexSubset(h & ~(1 << i), n))


def from_member_list(n: int, sets: Iterable[IndexSubset | Iterable[int]]) -> IndependenceSystem:
    return IndependenceSystem.from_members(n, sets)


def from_maximal(n: int, maximal_sets: Iterable[IndexSubset | Iterable[int]], strict: bool = True) -> IndependenceSystem:
    return IndependenceSystem.from_maximal(n, maximal_sets, strict=strict)


def circuits(system: IndependenceSystem) -> list[IndexSubset]:
    return system.circuits()
