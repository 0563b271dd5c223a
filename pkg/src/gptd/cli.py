"""Command line entry point ``gptd``.

Generator positions on the command line are 1-based, matching the ``s1``,
``s2``, ... labels that ``gptd build`` writes.

Exit codes: 0 success (or "is jpd" / "all matched"), 1 negative verdict,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .convex_geometry import StateSpace
from .distinguishability import StateListError, find_jpd_measurement, jpd_family, symmetric_error
from .gpt_construction import build
from .indep_system import IndependenceSystem, IndependenceSystemError
from .verifier import (
    enumerate_systems,
    pe_profile,
    random_systems,
    summarize,
    verify_many,
    verify_realization,
)


class CliError(Exception):
    pass


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(f"cannot read {path}: {e}") from e


def _write_json(data, path: str | None) -> None:
    text = json.dumps(data, indent=2)
    if path:
        Path(path).write_text(text + "\n")
    else:
        print(text)


def _positions(raw: str, space: StateSpace) -> list[int]:
    try:
        pos = [int(tok) - 1 for tok in raw.split(",") if tok.strip()]
    except ValueError as e:
        raise CliError(f"bad position list {raw!r}") from e
    if any(not 0 <= p < len(space) for p in pos):
        raise CliError(f"positions must lie in 1..{len(space)}")
    return pos


def _default_states(space: StateSpace) -> list[int]:
    wanted = [f"s{j}" for j in range(1, space.n + 1)]
    if all(lab in space.labels for lab in wanted):
        return [space.position(lab) for lab in wanted]
    return list(range(len(space)))


def cmd_build(args) -> int:
    system = IndependenceSystem.from_json(_read_json(args.system))
    _write_json(build(system).to_json(), args.out)
    return 0


def cmd_check_jpd(args) -> int:
    space = StateSpace.from_json(_read_json(args.space))
    witness = find_jpd_measurement(space, _positions(args.subset, space))
    if args.witness and witness is not None:
        _write_json({"jpd": True, "witness": witness.to_json()}, None)
    else:
        print("jpd" if witness is not None else "not jpd")
    return 0 if witness is not None else 1


def cmd_pe(args) -> int:
    space = StateSpace.from_json(_read_json(args.space))
    report = symmetric_error(space, _positions(args.subset, space))
    print(f"{report.value}\t{float(report.value):.12g}")
    return 0


def cmd_family(args) -> int:
    space = StateSpace.from_json(_read_json(args.space))
    states = _positions(args.states, space) if args.states else _default_states(space)
    _write_json(jpd_family(space, states).to_json(args.form), None)
    return 0


def _finish(reports, seed, report_path) -> int:
    summary = summarize(reports)
    summary["seed"] = seed
    if report_path:
        summary["reports"] = [r.to_json() for r in reports]
        _write_json(summary, report_path)
    print(f"{summary['matched']}/{summary['systems']} systems realized exactly; "
          f"{summary['ruin_point_violations']} ruin-point violations; {summary['lp_calls']} LP calls")
    return 0 if summary["all_ok"] else 1


def cmd_verify(args) -> int:
    system = IndependenceSystem.from_json(_read_json(args.system))
    report = verify_realization(system)
    if args.report:
        _write_json(report.to_json(), args.report)
    print(f"match={report.match} generators={report.num_generators} lp_calls={report.lp_calls}")
    for h in report.mismatches():
        print(f"  mismatch on {h}: expected {h in system}, got {not (h in system)}")
    return 0 if report.ok else 1


def cmd_verify_all(args) -> int:
    systems = list(enumerate_systems(args.n, allow_large=args.force))
    return _finish(verify_many(systems, parallel=args.parallel), None, args.report)


def cmd_verify_random(args) -> int:
    systems = random_systems(args.n, args.count, args.seed)
    return _finish(verify_many(systems, parallel=args.parallel, seed=args.seed), args.seed, args.report)


def cmd_pe_profile(args) -> int:
    space = StateSpace.from_json(_read_json(args.space))
    states = _positions(args.states, space) if args.states else _default_states(space)
    profile = pe_profile(space, states)
    if args.json:
        _write_json(profile.to_json(), None)
    else:
        for h, v in profile.table():
            print(f"{h}\t{v}\t{float(v):.12g}")
        print("properties: " + ("pass" if profile.ok else "FAIL"))
    return 0 if profile.ok else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gptd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build the state space realizing an independence system")
    p.add_argument("--system", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check-jpd", help="decide joint perfect distinguishability")
    p.add_argument("--space", required=True)
    p.add_argument("--subset", required=True, help="comma separated 1-based generator positions")
    p.add_argument("--witness", action="store_true", help="print a distinguishing measurement")
    p.set_defaults(func=cmd_check_jpd)

    p = sub.add_parser("pe", help="minimum summed error probability")
    p.add_argument("--space", required=True)
    p.add_argument("--subset", required=True)
    p.set_defaults(func=cmd_pe)

    p = sub.add_parser("family", help="independence system of perfectly distinguishable subsets")
    p.add_argument("--space", required=True)
    p.add_argument("--states")
    p.add_argument("--form", choices=["maximal", "members"], default="maximal")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", help="check that the construction realizes one system")
    p.add_argument("--system", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-all", help="check every system on [n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--force", action="store_true", help="allow n above the exhaustive limit")
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("verify-random", help="check randomly drawn systems")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify_random)

    p = sub.add_parser("pe-profile", help="F(H) for every subset of the states")
    p.add_argument("--space", required=True)
    p.add_argument("--states")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pe_profile)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, IndependenceSystemError, StateListError, ValueError, KeyError) as e:
        print(f"gptd: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
