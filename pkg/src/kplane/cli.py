"""Command-line entry point (``kplane``).

Exit status: 0 when the command succeeds or the checked property holds,
1 when the property fails, 2 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions
from .arrangement import build
from .discharging import remove_empty_flags, thm1_charges, thm2_charges
from .drawing import DrawingError, DrawingFormatError, load, save, serialize, validate
from .experiments import ExperimentSpec, bounds_table, format_bounds, run_experiment
from .render import render_svg
from .router import RoutingPolicy
from .saturation import adjudicate_n3, is_saturated, place_isolated_vertices
from .structure import analyze

OK, FAILS, INVALID = 0, 1, 2


class InputError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _load(path: str, check: bool = True):
    try:
        return load(path, check=check)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except DrawingFormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    except DrawingError as exc:
        raise InputError(f"{path}: {exc}") from None


def _int_range(text: str) -> list[int]:
    """'5', '2..10' or '1,4,7'."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, A..B or a comma list, got {text!r}") from None


def cmd_validate(args) -> int:
    d = _load(args.file, check=False)
    report = validate(d)
    _emit(report.as_dict())
    return OK if report.ok else FAILS


def cmd_analyze(args) -> int:
    d = _load(args.file)
    rep = analyze(d, args.k, args.l)
    sys.stdout.write(rep.to_json() + "\n")
    return OK


def cmd_saturate_check(args) -> int:
    d = _load(args.file)
    arr = build(d)
    try:
        rep = is_saturated(d, args.k, args.l, arr)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(rep.to_json(arr) + "\n")
    return OK if rep.saturated else FAILS


def cmd_construct(args) -> int:
    kind, params = args.kind, args.params
    need = 0 if kind == "k2" else 1
    if len(params) != need:
        raise InputError(f"construct {kind} takes {need} integer parameter(s)")
    try:
        if kind == "propeller":
            d = constructions.propeller(params[0])
        elif kind == "k2":
            d = constructions.complete_drawing(2)
        elif kind == "kn":
            d = constructions.complete_drawing(params[0])
        elif kind == "family2":
            d = constructions.family_2simple(params[0])
        else:
            d = constructions.family_3simple(params[0])
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.output:
        save(d, args.output)
    else:
        sys.stdout.write(serialize(d))
    return OK


def cmd_discharge(args) -> int:
    d = _load(args.file)
    if args.prepare:
        d = place_isolated_vertices(remove_empty_flags(d))
    arr = build(d)
    if args.theorem == "thm1":
        rep = thm1_charges(d, arr)
        _emit({**rep.to_dict(), "certified": rep.certified})
        return OK if rep.certified else FAILS
    if args.l is None:
        raise InputError("discharge thm2 needs --l 2 or --l 3")
    try:
        rep = thm2_charges(d, args.l, arr)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(rep.to_dict())
    return OK if rep.preconditions_met and rep.conserved else FAILS


def cmd_render(args) -> int:
    d = _load(args.file)
    Path(args.output).write_text(render_svg(d), encoding="utf-8")
    return OK


def cmd_bounds(args) -> int:
    if args.n_max < 1:
        raise InputError("--n-max must be at least 1")
    rows = bounds_table(args.n_max, args.greedy_seeds)
    sys.stdout.write(format_bounds(rows))
    good = all(r.family2_edges == r.f_n and r.family2_saturated and r.family3_saturated for r in rows)
    good = good and all(r.family3_edges == r.two_thirds for r in rows if r.n != 3)
    return OK if good else FAILS


def cmd_experiment(args) -> int:
    policy = RoutingPolicy(order=args.order)
    spec = ExperimentSpec(args.n, list(range(args.seeds)), args.k, args.l, policy, args.workers)
    summary = run_experiment(spec)
    text = json.dumps(summary.to_dict(), indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        _emit({"spec": summary.spec, "per_n": summary.to_dict()["per_n"], "pass_rate": summary.pass_rate})
    else:
        sys.stdout.write(text)
    return OK if summary.pass_rate == 1.0 else FAILS


def cmd_adjudicate(args) -> int:
    adj = adjudicate_n3()
    for line in adj.lines():
        print(line)
    return OK if adj.consistent else FAILS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kplane", description="k-plane l-simple drawing toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a drawing file for geometric validity")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", help="flags, special cells, components")
    s.add_argument("file")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--l", type=int, default=1)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("saturate-check", help="decide whether any edge can be added")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.set_defaults(func=cmd_saturate_check)

    s = sub.add_parser("construct", help="write a generated drawing")
    s.add_argument("kind", choices=["propeller", "k2", "kn", "family2", "family3"])
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("discharge", help="run a charge certificate")
    s.add_argument("theorem", choices=["thm1", "thm2"])
    s.add_argument("file")
    s.add_argument("--l", type=int)
    s.add_argument("--prepare", action="store_true", help="remove empty flags and fill special cells first")
    s.set_defaults(func=cmd_discharge)

    s = sub.add_parser("render", help="write an SVG picture")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("bounds", help="construction sizes against the bound formulas")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--greedy-seeds", type=int, default=0)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("experiment", help="greedy saturation over random point sets")
    s.add_argument("--n", type=_int_range, required=True)
    s.add_argument("--seeds", type=int, required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--l", type=int, default=1)
    s.add_argument("--order", choices=["lexicographic", "shuffled"], default="lexicographic")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("adjudicate-n3", help="saturation verdict for the 3-vertex 2-propeller")
    s.set_defaults(func=cmd_adjudicate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
