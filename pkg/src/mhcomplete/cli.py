"""Command-line front end.

Exit codes: 0 success, 1 no completion or violations found, 2 invalid
parameters, 3 I/O or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import completion, obstacles, oracle
from .errors import EmptyBaseUnsupported, MHError, NotAdmissible, TooLarge
from .graph import EdgeLabelledGraph
from .params import (INF, Kind, ParameterSet, admissibility_verdict, enumerate_admissible,
                     parse_henson, valid_completion_parameters)

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_IO = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _value(text: str):
    if text.lower() in ("inf", "infinity"):
        return INF
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'inf', got {text!r}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _add_params(sp: argparse.ArgumentParser, required: bool = True):
    g = sp.add_argument_group("parameters")
    g.add_argument("--delta", type=_value, required=required)
    g.add_argument("--k1", type=_value)
    g.add_argument("--k2", type=_value)
    g.add_argument("--c0", type=_value)
    g.add_argument("--c1", type=_value)
    g.add_argument("--henson", default="",
                   help="constraints such as '4' or '1,1,1' separated by ';' (trailing * = antipodal)")


def _params(args) -> ParameterSet:
    fields = (args.delta, args.k1, args.k2, args.c0, args.c1)
    if any(x is None for x in fields):
        raise CliError("--delta, --k1, --k2, --c0 and --c1 are all required", EXIT_PARAMS)
    try:
        p = ParameterSet(*fields, henson=parse_henson(args.henson))
    except MHError as exc:
        raise CliError(str(exc), EXIT_PARAMS)
    v = admissibility_verdict(p)
    if not v.admissible:
        raise CliError(f"{p} is not admissible: " + "; ".join(v.failed_conditions), EXIT_PARAMS)
    return p


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text + "\n")
        return
    try:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO)


# -- admissible --------------------------------------------------------------

def _magic_column(p: ParameterSet, kind: Kind) -> str:
    if kind is not Kind.PRIMITIVE:
        return "--"
    return ",".join(map(str, valid_completion_parameters(p)))


def cmd_admissible(args) -> int:
    if args.delta == INF or not 3 <= args.delta <= 16:
        raise CliError("--delta must be an integer between 3 and 16", EXIT_PARAMS)
    rows = enumerate_admissible(args.delta, include_bipartite=not args.no_bipartite)
    if args.format == "json":
        out = [{**p.to_json(), "case": v.case.value, "kind": v.kind.value,
                "magic": valid_completion_parameters(p) if v.kind is Kind.PRIMITIVE else []}
               for p, v in rows]
        _emit(_dump(out), None)
        return EXIT_OK
    fmt = "{:>4} {:>4} {:>4} {:>4}  {:<6} {:<5} {}"
    lines = [fmt.format("K1", "K2", "C0", "C1", "M", "Case", "Kind")]
    for p, v in rows:
        k1 = "inf" if p.k1 == INF else p.k1
        lines.append(fmt.format(k1, p.k2, p.c0, p.c1, _magic_column(p, v.kind),
                                v.case.value, v.kind.value))
    _emit("\n".join(lines), None)
    return EXIT_OK


# -- complete ----------------------------------------------------------------

def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}", EXIT_IO)


def _read_graph(path: str) -> EdgeLabelledGraph:
    obj = _read_json(path)
    try:
        return EdgeLabelledGraph.from_json(obj)
    except (MHError, AttributeError) as exc:
        raise CliError(f"malformed graph in {path}: {exc}", EXIT_IO)


def _int_list(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"expected comma-separated integers, got {text!r}", EXIT_IO)


def cmd_complete(args) -> int:
    p = _params(args)
    g = _read_graph(args.input)
    pode = _int_list(args.pode)
    try:
        res = completion.dispatch_complete(g, p, M=args.magic, pode=pode)
    except NotAdmissible as exc:
        raise CliError(str(exc), EXIT_PARAMS)
    except MHError as exc:
        raise CliError(str(exc), EXIT_IO)
    _emit(_dump(res.to_json(with_trace=args.trace)), args.output)
    if not res.ok:
        cert = res.certificate.to_json() if res.certificate else {}
        sys.stderr.write(f"no completion: {json.dumps(cert)}\n")
        return EXIT_FAIL
    return EXIT_OK


# -- obstacles ---------------------------------------------------------------

def cmd_obstacles(args) -> int:
    p = _params(args)
    try:
        cat = obstacles.enumerate_obstacles(p, args.max_len, args.decider)
    except NotAdmissible as exc:
        raise CliError(str(exc), EXIT_PARAMS)
    except MHError as exc:
        raise CliError(str(exc), EXIT_IO)
    _emit(_dump(cat.to_json()), args.output)
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def _targets(args) -> list[ParameterSet]:
    if args.k1 is not None or args.k2 is not None or args.c0 is not None or args.c1 is not None:
        return [_params(args)]
    if args.delta is None or args.delta == INF or not 3 <= args.delta <= 16:
        raise CliError("--delta must be an integer between 3 and 16", EXIT_PARAMS)
    return [p for p, _ in enumerate_admissible(args.delta)]


def _suite(name: str, p: ParameterSet, args) -> oracle.Report:
    v = admissibility_verdict(p)
    rep = oracle.Report()
    if p.delta == INF:
        rep.skipped.append(f"{p}: infinite diameter")
        return rep
    if name in ("oracle", "optimality", "parity", "aut"):
        checks = {"oracle": None, "optimality": ("optimality",), "parity": ("parity",),
                  "aut": ("automorphism",)}[name]
        if v.kind in completion.ANTIPODAL_KINDS and checks is not None and name != "aut":
            rep.skipped.append(f"{p}: {name} clauses are stated for single-M engines")
            return rep
        return oracle.exhaustive_suite(p, args.max_vertices, checks)
    if name == "sir":
        try:
            return oracle.sir_property_suite(p, size_bound=args.max_vertices, seed=args.seed)
        except (NotAdmissible, EmptyBaseUnsupported) as exc:
            rep.skipped.append(f"{p}: {exc}")
            return rep
    if name == "obstacles":
        if v.kind is not Kind.PRIMITIVE:
            rep.skipped.append(f"{p}: obstacle catalogues are built for primitive classes")
            return rep
        eng = obstacles.enumerate_obstacles(p, args.max_len, obstacles.Decider.ENGINE)
        ora = obstacles.enumerate_obstacles(p, args.max_len, obstacles.Decider.ORACLE)
        rep.checked += sum(len(c) for c in ora.by_length.values())
        for k in eng.by_length:
            if eng.by_length[k] != ora.by_length[k]:
                rep.violations.append({"params": p.to_json(), "clause": "decider agreement",
                                       "length": k})
        return rep.merge(obstacles.verify_obstacle_closure(p, eng, args.samples, args.seed))
    raise CliError(f"unknown suite {name}", EXIT_PARAMS)


def cmd_verify(args) -> int:
    total = oracle.Report()
    lines = []
    for p in _targets(args):
        rep = _suite(args.suite, p, args)
        lines.append(f"{p}: checked {rep.checked}, violations {len(rep.violations)}")
        total.merge(rep)
    if args.format == "json":
        _emit(_dump({"suite": args.suite, "seed": args.seed, **total.to_json()}), args.output)
    else:
        lines.append(f"total: checked {total.checked}, violations {len(total.violations)}")
        for viol in total.violations[:20]:
            lines.append("violation: " + json.dumps(viol, sort_keys=True))
        _emit("\n".join(lines), args.output)
    return EXIT_OK if total.ok else EXIT_FAIL


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mhcomplete",
                                 description="Completion of partial metric spaces in "
                                             "metrically homogeneous classes.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("admissible", help="list admissible parameters for one diameter")
    sp.add_argument("--delta", type=_value, required=True)
    sp.add_argument("--no-bipartite", action="store_true")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_admissible)

    sp = sub.add_parser("complete", help="complete a graph given as JSON")
    sp.add_argument("input", help="graph JSON file, or - for stdin")
    _add_params(sp)
    sp.add_argument("--trace", action="store_true", help="include the trace")
    sp.add_argument("--pode", help="comma-separated pode vertices (antipodal classes)")
    sp.add_argument("--magic", type=int, help="magic distance to use")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_complete)

    sp = sub.add_parser("obstacles", help="list non-completable cycles")
    _add_params(sp)
    sp.add_argument("--max-len", type=int, default=5)
    sp.add_argument("--decider", choices=[d.value for d in obstacles.Decider], default="ENGINE")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_obstacles)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True,
                    choices=("optimality", "parity", "aut", "sir", "oracle", "obstacles"))
    sp.add_argument("--seed", type=int, required=True)
    _add_params(sp, required=False)
    sp.add_argument("--max-vertices", type=int, default=4)
    sp.add_argument("--max-len", type=int, default=5)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which matches bad parameters
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except TooLarge as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARAMS
    except MHError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
