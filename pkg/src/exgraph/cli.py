"""Command line interface.

Subcommands: bell-check, theta, ctheta, reduce, reproduce, selftest.
Exit codes: 0 on success/pass, 1 when a verdict is negative (reject, fail,
inconclusive), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .bell import bell_check
from .errors import InvalidArgumentError, ResourceLimitError
from .experiments import (PASS, ExperimentReport, reproduce_theorem6,
                          reproduce_theorem8, selftest_cycles)
from .graphs import (multigraph_from_json, multigraph_to_json, shadow)
from .reductions import (break_edge, merge_colours, path_profile,
                         plus_one_reduce, remove_edge)
from .seesaw import ctheta_seesaw, theta_seesaw


def _load_multigraph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return multigraph_from_json(fh.read())


def _write_output(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit_opr(opr, path: str):
    projectors = []
    for row in opr.projectors:
        vertex = []
        for mat in row:
            if mat is None:
                vertex.append(None)
            else:
                vertex.append([[float(x) for x in r] for r in mat])
        projectors.append(vertex)
    payload = {
        "dims": list(opr.dims),
        "projectors": projectors,
        "handle": [float(x) for x in opr.handle],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _cmd_bell_check(args) -> int:
    cm = _load_multigraph(args.graph)
    decision = bell_check(cm)
    print(f"verdict: {decision.verdict}")
    if decision.accepted:
        shorthand = decision.scenario.uniform_shorthand()
        if shorthand:
            print(f"scenario: ({shorthand[0]}, {shorthand[1]}, {shorthand[2]})")
        else:
            for party, row in zip(decision.scenario.parties,
                                  decision.scenario.outcome_counts):
                print(f"party {party}: outcomes per measurement {list(row)}")
        if args.labels:
            for k, label in enumerate(decision.labels):
                event = {p: [m, o] for p, m, o in label.assignments}
                print(json.dumps({"vertex": k, "event": event}, sort_keys=True))
        return 0
    colour, component, triple = decision.witness
    print(f"witness: colour {colour}, component {list(component)}, "
          f"one-edge triple {list(triple)}")
    return 1


def _cmd_theta(args) -> int:
    cm = _load_multigraph(args.graph)
    g = shadow(cm)
    report = theta_seesaw(g, dim=args.dim, restarts=args.restarts,
                          max_iters=args.max_iters, tol=args.tol,
                          seed=args.seed, kicks=args.kicks, polish=args.polish)
    if args.emit_opr:
        _emit_opr(report.opr, args.emit_opr)
    _write_output(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n",
                  args.out)
    return 0


def _cmd_ctheta(args) -> int:
    cm = _load_multigraph(args.graph)
    dims = tuple(args.dims) if args.dims else None
    report = ctheta_seesaw(cm, dims=dims, restarts=args.restarts,
                           max_iters=args.max_iters, tol=args.tol,
                           seed=args.seed, kicks=args.kicks, polish=args.polish)
    if args.emit_opr:
        _emit_opr(report.opr, args.emit_opr)
    _write_output(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n",
                  args.out)
    return 0


def _cmd_reduce(args) -> int:
    cm = _load_multigraph(args.graph)
    if args.op == "remove":
        if args.u is None or args.v is None or args.colour is None:
            raise InvalidArgumentError("remove needs --u, --v and --colour")
        result = remove_edge(cm, args.u, args.v, args.colour)
    elif args.op == "merge":
        if not args.colours or len(args.colours.split(",")) != 2:
            raise InvalidArgumentError("merge needs --colours C1,C2")
        c1, c2 = args.colours.split(",")
        result = merge_colours(cm, c1, c2)
    elif args.op == "plus-one":
        if args.vertex is None:
            raise InvalidArgumentError("plus-one needs --vertex")
        result = plus_one_reduce(cm, args.vertex)
    elif args.op == "break":
        if args.u is None or args.v is None:
            raise InvalidArgumentError("break needs --u and --v")
        result = break_edge(cm, args.u, args.v)
    else:
        profile = path_profile(cm)
        payload = {
            "lengths": list(profile.lengths),
            "colours": list(profile.colours),
            "t": profile.t,
            "singles": profile.singles,
        }
        _write_output(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                      args.out)
        return 0
    _write_output(multigraph_to_json(result), args.out)
    return 0


def _report_csv(report: ExperimentReport) -> str:
    columns = []
    for row in report.rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, restval="")
    writer.writeheader()
    for row in report.rows:
        writer.writerow(row)
    return buf.getvalue()


def _finish_experiment(report: ExperimentReport, args) -> int:
    if args.csv:
        _write_output(_report_csv(report), args.out)
    else:
        _write_output(report.to_json(), args.out)
    if not args.csv or args.out:
        print(f"verdict: {report.verdict}", file=sys.stderr)
    return 0 if report.verdict == PASS else 1


def _cmd_reproduce(args) -> int:
    if args.experiment == "theorem6":
        report = reproduce_theorem6(n_list=args.n, restarts=args.restarts,
                                    kicks=args.kicks, polish=args.polish,
                                    seed=args.seed, tol=args.tol)
    else:
        report = reproduce_theorem8(restarts=args.restarts, kicks=args.kicks,
                                    polish=args.polish, seed=args.seed,
                                    tol=args.tol)
    return _finish_experiment(report, args)


def _cmd_selftest(args) -> int:
    report = selftest_cycles(n_list=args.n, restarts=args.restarts,
                             kicks=args.kicks, polish=args.polish,
                             seed=args.seed, tol=args.tol)
    return _finish_experiment(report, args)


def _add_seesaw_args(sub, restarts, kicks, polish):
    sub.add_argument("--restarts", type=int, default=restarts)
    sub.add_argument("--max-iters", type=int, default=3000)
    sub.add_argument("--tol", type=float, default=1e-9)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--kicks", type=int, default=kicks)
    sub.add_argument("--polish", type=int, default=polish)
    sub.add_argument("--emit-opr", metavar="FILE")
    sub.add_argument("--out", metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exgraph",
        description="Exclusivity graphs: Bell structure, Lovász-number "
                    "see-saws, and coloured-cycle reductions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bell-check", help="decide Bell representability")
    p.add_argument("--graph", required=True)
    p.add_argument("--labels", action="store_true")
    p.set_defaults(func=_cmd_bell_check)

    p = sub.add_parser("theta", help="see-saw the Lovász number of the shadow")
    p.add_argument("--graph", required=True)
    p.add_argument("--dim", type=int, default=None)
    _add_seesaw_args(p, restarts=20, kicks=200, polish=800)
    p.set_defaults(func=_cmd_theta)

    p = sub.add_parser("ctheta", help="see-saw the coloured Lovász number")
    p.add_argument("--graph", required=True)
    p.add_argument("--dims", type=_int_list, default=None,
                   help="per-colour dimensions, e.g. 3,3")
    _add_seesaw_args(p, restarts=20, kicks=200, polish=800)
    p.set_defaults(func=_cmd_ctheta)

    p = sub.add_parser("reduce", help="apply a reduction to a coloured graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--op", required=True,
                   choices=["remove", "merge", "plus-one", "break", "profile"])
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--colour")
    p.add_argument("--colours", help="two colours C1,C2 for merge")
    p.add_argument("--vertex", type=int)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("reproduce", help="run a headline experiment")
    p.add_argument("experiment", choices=["theorem6", "theorem8"])
    p.add_argument("--n", type=_int_list, default=(5, 7, 9))
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--kicks", type=int, default=None)
    p.add_argument("--polish", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-11)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("selftest", help="cycle closed-form self-test")
    p.add_argument("--n", type=_int_list, default=(5, 7))
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--kicks", type=int, default=200)
    p.add_argument("--polish", type=int, default=800)
    p.add_argument("--seed", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-11)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=_cmd_selftest)
    return parser


_EXPERIMENT_DEFAULTS = {
    "theorem6": {"restarts": 10, "kicks": 150, "polish": 500, "seed": 7},
    "theorem8": {"restarts": 100, "kicks": 40, "polish": 800, "seed": 11},
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "reproduce":
        defaults = _EXPERIMENT_DEFAULTS[args.experiment]
        for key, value in defaults.items():
            if getattr(args, key) is None:
                setattr(args, key, value)
    try:
        return args.func(args)
    except (InvalidArgumentError, ResourceLimitError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
