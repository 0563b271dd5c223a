"""End-to-end checks: build the state space for a system and read the system back off it."""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .convex_geometry import StateSpace
from .distinguishability import jpd_verdicts, symmetric_error
from .gpt_construction import build, ruin_point_violations
from .indep_system import IndependenceSystem, IndexSubset, popcount

MAX_EXHAUSTIVE_N = 4


@dataclass
class RealizationReport:
    input_system: IndependenceSystem
    realized_system: IndependenceSystem
    verdicts: dict[IndexSubset, dict]
    ruin_violations: list[str]
    num_generators: int
    timings: dict[str, float]
    seed: int | None = None

    @property
    def match(self) -> bool:
        return self.input_system == self.realized_system

    @property
    def lp_calls(self) -> int:
        return sum(v["lp_calls"] for v in self.verdicts.values())

    @property
    def ok(self) -> bool:
        return self.match and not self.ruin_violations

    def mismatches(self) -> list[IndexSubset]:
        return [h for h, v in self.verdicts.items() if v["expected"] != v["got"]]

    def to_json(self) -> dict:
        n = self.input_system.n
        return {
            "n": n,
            "match": self.match,
            "seed": self.seed,
            "input_system": self.input_system.to_json(),
            "realized_system": self.realized_system.to_json(),
            "num_generators": self.num_generators,
            "lp_calls": self.lp_calls,
            "ruin_point_violations": self.ruin_violations,
            "verdicts": [
                {"subset": list(h.indices), **v}
                for h, v in sorted(self.verdicts.items(), key=lambda kv: kv[0].sort_key())
            ],
            "timings": self.timings,
        }


def verify_realization(system: IndependenceSystem, seed: int | None = None) -> RealizationReport:
    n = system.n
    t0 = time.perf_counter()
    out = build(system)
    t1 = time.perf_counter()
    raw = jpd_verdicts(out.space, out.vertex_positions())
    t2 = time.perf_counter()
    realized = IndependenceSystem(n, (mask for mask, v in raw.items() if v.jpd))
    verdicts = {
        IndexSubset(mask, n): {"expected": mask in system.masks, "got": v.jpd, "lp_calls": v.lp_calls}
        for mask, v in raw.items()
    }
    violations = []
    for (h, j), pos in out.ruin_points.items():
        for msg in ruin_point_violations(out.space[pos], h, j, n):
            violations.append(f"{out.space.labels[pos]}: {msg}")
    return RealizationReport(
        system, realized, verdicts, violations, len(out.space),
        {"build": t1 - t0, "family": t2 - t1}, seed,
    )


def _antichains(layer: Sequence[int], start: int, chosen: list[int]) -> Iterator[list[int]]:
    yield list(chosen)
    for i in range(start, len(layer)):
        h = layer[i]
        if any(h & g == g or h & g == h for g in chosen):
            continue
        chosen.append(h)
        yield from _antichains(layer, i + 1, chosen)
        chosen.pop()


def enumerate_systems(n: int, allow_large: bool = False) -> Iterator[IndependenceSystem]:
    """Every independence system on [n], each once.

    Systems correspond one-to-one with antichains among the subsets of size >= 2
    (their maximal non-singleton members).
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > MAX_EXHAUSTIVE_N and not allow_large:
        raise ValueError(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_N}; sample instead")
    layer = sorted(
        (b for b in range(1 << n) if popcount(b) >= 2),
        key=lambda b: IndexSubset(b, n).sort_key(),
    )
    for antichain in _antichains(layer, 0, []):
        gens = [IndexSubset(b, n) for b in antichain]
        yield IndependenceSystem.from_maximal(n, gens, strict=False)


def random_system(n: int, rng: random.Random, k: int | None = None) -> IndependenceSystem:
    """Draw k random subsets of size >= 2, keep the ones incomparable with those already kept."""
    if n < 2:
        return IndependenceSystem.power_set(n)
    if k is None:
        k = rng.randint(1, n)
    kept: list[int] = []
    for _ in range(k):
        size = rng.randint(2, n)
        h = sum(1 << (j - 1) for j in rng.sample(range(1, n + 1), size))
        if all(h & g != g and h & g != h for g in kept):
            kept.append(h)
    return IndependenceSystem.from_maximal(n, [IndexSubset(b, n) for b in kept], strict=False)


def random_systems(n: int, count: int, seed: int) -> list[IndependenceSystem]:
    rng = random.Random(seed)
    return [random_system(n, rng) for _ in range(count)]


def verify_many(systems: Iterable[IndependenceSystem], parallel: bool = False, seed: int | None = None) -> list[RealizationReport]:
    systems = list(systems)
    if parallel:
        with ProcessPoolExecutor() as pool:
            reports = list(pool.map(verify_realization, systems, chunksize=4))
    else:
        reports = [verify_realization(a) for a in systems]
    for r in reports:
        r.seed = seed
    return reports


def summarize(reports: Sequence[RealizationReport]) -> dict:
    failed = [r for r in reports if not r.ok]
    return {
        "systems": len(reports),
        "matched": sum(r.match for r in reports),
        "ruin_point_violations": sum(len(r.ruin_violations) for r in reports),
        "lp_calls": sum(r.lp_calls for r in reports),
        "all_ok": not failed,
        "failures": [r.to_json() for r in failed],
    }


@dataclass
class PeProfile:
    """F(H) for every subset H of the listed states, plus checks on one-element extensions."""

    n: int
    values: dict[IndexSubset, Fraction]
    checks: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c["monotone"] and c["lipschitz"] for c in self.checks)

    def table(self) -> list[tuple[IndexSubset, Fraction]]:
        return sorted(
            ((h, v) for h, v in self.values.items() if len(h) >= 2), key=lambda hv: hv[0].sort_key()
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "profile": [{"subset": list(h.indices), "F": str(v), "F_float": float(v)} for h, v in self.table()],
            "checks": [
                {**c, "smaller": list(c["smaller"].indices), "larger": list(c["larger"].indices)}
                for c in self.checks
            ],
            "ok": self.ok,
        }


def pe_profile(space: StateSpace, states: Sequence[int]) -> PeProfile:
    n = len(states)
    values: dict[IndexSubset, Fraction] = {}
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            h = IndexSubset.of(n, combo)
            values[h] = symmetric_error(space, [states[i - 1] for i in combo]).value
    checks = []
    for h, fh in sorted(values.items(), key=lambda hv: hv[0].sort_key()):
        for j in range(1, n + 1):
            if j in h:
                continue
            big = h.add(j)
            fb = values[big]
            checks.append({
                "smaller": h, "larger": big, "added": j,
                "monotone": fh <= fb, "lipschitz": fb <= fh + 1,
            })
    return PeProfile(n, values, checks)
