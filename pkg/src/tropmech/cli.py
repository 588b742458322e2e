"""Command-line front end.

Exit codes:

    0  affirmative answer (IC, affine maximizer, equal IC sets, all checks pass)
    1  negative answer
    2  malformed input or unusable arguments
    3  an enumeration cap was exceeded
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .counterexamples import default_lambda_grid, parse_lambda_grid
from .errors import InputError, NotIC, TooLarge, TropmechError
from .feasibility import check_point, difference_system
from .io import InputDocument, document_to_json, load_document
from .mechanism import (ENUM_CAP, OutcomeFunction, TypeSpace, ic_equal, ic_multi_failures, ic_set,
                        is_ic_single, is_ic_single_minor, minkowski_combine)
from .plot import PlotConfig, apexes, arrangement_svg
from .rational import format_rat
from .reproduce import certificate_json, matrix_json, verify_paper
from .roberts import (AMWitness, am_refutation, am_system, check_am_witness,
                      perturb_second_player, var)

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _rats(values) -> List[Any]:
    return [format_rat(v) for v in values]


def _document(args) -> InputDocument:
    if not args.input:
        raise _Usage("--input FILE is required for this command")
    return load_document(args.input)


def _spaces(doc: InputDocument, args, count: Optional[int] = None) -> List[TypeSpace]:
    names = args.space or []
    if count is not None and len(names) != count:
        raise _Usage(f"expected {count} --space argument(s), got {len(names)}")
    if not names:
        raise _Usage("at least one --space is required")
    return [doc.space(n) for n in names]


def _outcome(doc: InputDocument, args, spaces: Sequence[TypeSpace]) -> OutcomeFunction:
    """A named outcome function, or an inline one such as ``2,4`` or ``2,1;3,3``."""
    spec = args.outcome
    if spec is None:
        raise _Usage("-g/--outcome is required")
    if spec in doc.outcome_functions:
        return doc.outcome(spec)
    try:
        rows = [[int(v) for v in row.split(",")] for row in spec.split(";")]
    except ValueError:
        raise InputError(f"outcome {spec!r}: not a known name and not an inline list") from None
    m = spaces[0].m
    try:
        if len(rows) == 1:
            return OutcomeFunction.vector(rows[0], m)
        return OutcomeFunction.nested(rows, m)
    except TropmechError as exc:
        raise InputError(f"outcome {spec!r}: {exc}") from None


def _payments_valid(values, space: TypeSpace, x) -> bool:
    system = difference_system(values, space.matrix)
    return check_point(system, {f"x[{k}]": v for k, v in enumerate(x, start=1)})


# ---------------------------------------------------------------------------
# commands return (exit code, JSON payload, text lines)

def cmd_ic_check(args):
    doc = _document(args)
    spaces = _spaces(doc, args)
    g = _outcome(doc, args, spaces)
    if len(spaces) == 1 and g.n == 1:
        space = spaces[0]
        x = is_ic_single(g.values, space)
        if x is not None and not _payments_valid(g.values, space, x):
            raise RuntimeError("payment vector failed re-validation")
        out: Dict[str, Any] = {"command": "ic-check", "outcomes": list(g.values),
                               "ic": x is not None, "payments": None if x is None else _rats(x)}
        lines = [f"g = {tuple(g.values)} is {'IC' if x is not None else 'not IC'} on {space.label}"]
        if x is not None:
            lines.append(f"payments: {' '.join(str(v) for v in _rats(x))}")
        if args.cross_check:
            minor = is_ic_single_minor(g.values, space)
            out["cross_check"] = {"difference_constraints": x is not None,
                                  "determinants": minor, "agree": minor == (x is not None)}
            lines.append(f"cross-check: determinant test says {'IC' if minor else 'not IC'}; "
                         f"{'agree' if out['cross_check']['agree'] else 'DISAGREE'}")
        return (EXIT_OK if x is not None else EXIT_NO), out, lines
    failures = ic_multi_failures(g, spaces)
    out = {"command": "ic-check", "ic": not failures,
           "failing_fibers": [{"axis": a, "fiber": [i + 1 if i >= 0 else "*" for i in f],
                               "outcomes": list(v)} for a, f, v in failures]}
    lines = [f"g is {'IC' if not failures else 'not IC'} on the product of "
             f"{', '.join(s.label or '?' for s in spaces)}"]
    for item in out["failing_fibers"]:
        lines.append(f"  axis {item['axis']} fiber {item['fiber']}: {tuple(item['outcomes'])} not IC")
    return (EXIT_NO if failures else EXIT_OK), out, lines


def cmd_payments(args):
    doc = _document(args)
    spaces = _spaces(doc, args)
    g = _outcome(doc, args, spaces)
    if len(spaces) != g.n:
        raise InputError(f"outcome function has {g.n} axes but {len(spaces)} spaces were given")
    fibers = []
    ok = True
    for axis, space in enumerate(spaces):
        for fixed, vec in g.fibers(axis):
            x = is_ic_single(vec, space)
            if x is not None and not _payments_valid(vec, space, x):
                raise RuntimeError("payment vector failed re-validation")
            ok &= x is not None
            fibers.append({"axis": axis + 1, "fiber": [i + 1 if i >= 0 else "*" for i in fixed],
                           "outcomes": list(vec), "payments": None if x is None else _rats(x)})
    lines = []
    for f in fibers:
        pay = "none" if f["payments"] is None else " ".join(map(str, f["payments"]))
        lines.append(f"axis {f['axis']} fiber {f['fiber']} outcomes {tuple(f['outcomes'])}: {pay}")
    return (EXIT_OK if ok else EXIT_NO), {"command": "payments", "ic": ok, "fibers": fibers}, lines


def cmd_ic_set(args):
    doc = _document(args)
    (space,) = _spaces(doc, args, 1)
    vectors = ic_set(space, cap=args.max_enum)
    out = {"command": "ic-set", "space": space.label, "r": space.r, "m": space.m,
           "count": len(vectors), "ic_set": [list(v) for v in vectors]}
    lines = [f"{len(vectors)} IC outcome vectors on {space.label} ({space.r} types, {space.m} outcomes)"]
    lines += ["  (" + ", ".join(map(str, v)) + ")" for v in vectors]
    return EXIT_OK, out, lines


def cmd_ic_equal(args):
    doc = _document(args)
    a, b = _spaces(doc, args, 2)
    res = ic_equal(a, b)
    out: Dict[str, Any] = {"command": "ic-equal", "equal": res.equal}
    lines = [f"IC({a.label}) {'=' if res.equal else '!='} IC({b.label})"]
    if not res.equal:
        rows, cols = res.minor
        out["minor"] = {"rows": list(rows), "cols": list(cols),
                        "first": [list(s) for s in res.left],
                        "second": [list(s) for s in res.right]}
        lines.append(f"  minor rows {rows} cols {cols}: optimal permutations "
                     f"{list(res.left)} vs {list(res.right)}")
    return (EXIT_OK if res.equal else EXIT_NO), out, lines


def cmd_am_check(args):
    doc = _document(args)
    spaces = _spaces(doc, args)
    g = _outcome(doc, args, spaces)
    if len(spaces) != g.n:
        raise InputError(f"outcome function has {g.n} axes but {len(spaces)} spaces were given")
    system, result = am_refutation(g, spaces)
    if result.feasible:
        point = result.point
        alphas = [point[var("alpha", j)] for j in range(1, g.n + 1)]
        scale = min(alphas)
        alphas = [x / scale for x in alphas]
        z = [point[var("z", k)] / scale for k in range(1, g.m + 1)]
        witness = AMWitness(tuple(alphas), tuple(z))
        if not check_am_witness(g, spaces, witness):
            raise RuntimeError("witness failed re-validation")
        out = {"command": "am-check", "affine_maximizer": True,
               "witness": {"alphas": _rats(alphas), "z": _rats(z)}}
        lines = ["g is an affine maximizer",
                 f"  alphas: {' '.join(map(str, _rats(alphas)))}",
                 f"  z: {' '.join(map(str, _rats(z)))}"]
        return EXIT_OK, out, lines
    cert = certificate_json(system, result.certificate)
    if not cert["valid"]:
        raise RuntimeError("certificate failed re-validation")
    out = {"command": "am-check", "affine_maximizer": False, "certificate": cert}
    lines = ["g is not an affine maximizer; certificate:"]
    lines += [f"  {r['weight']} x [{r['label']}]" for r in cert["multipliers"]]
    lines.append(f"  sum: {cert['combination']}")
    return EXIT_NO, out, lines


def cmd_perturb(args):
    doc = _document(args)
    (first,) = _spaces(doc, args, 1)
    g = _outcome(doc, args, [first])
    S2 = perturb_second_player(g, first)
    name = args.name
    fixed = am_system(g, [first, S2], alphas=(1, 1))
    if not check_point(fixed, {var("z", k): 0 for k in range(1, g.m + 1)}):
        raise RuntimeError("perturbed space failed re-validation")
    new = InputDocument(dict(doc.type_spaces), dict(doc.outcome_functions))
    new.type_spaces[name] = TypeSpace(S2.matrix, label=name)
    if args.outcome not in new.outcome_functions:
        new.outcome_functions["g_inline"] = g
    out = document_to_json(new)
    lines = [f"{name} (g is an affine maximizer on ({first.label}, {name}) with alpha = (1, 1), z = 0):"]
    lines += ["  " + " ".join(str(v) for v in row) for row in matrix_json(S2)]
    return EXIT_OK, out, lines


def cmd_verify_paper(args):
    grid = parse_lambda_grid(args.lambda_grid) if args.lambda_grid else default_lambda_grid()
    report = verify_paper(grid, suites=not args.skip_suites, seed=args.seed)
    failed = report["summary"]["failed"]
    lines = [f"{c['status'].upper():4}  {c['id']}  [{c['level']}]" for c in report["checks"]]
    lines.append(f"{report['summary']['passed']}/{report['summary']['checks']} checks passed")
    return (EXIT_NO if failed else EXIT_OK), report, lines


def cmd_plot(args):
    doc = _document(args)
    spaces = _spaces(doc, args)
    space = spaces[0] if len(spaces) == 1 else minkowski_combine(spaces)
    if space.m != 3:
        raise InputError(f"plot needs m = 3, {space.label or 'the space'} has m = {space.m}")
    title = " + ".join(s.label or "?" for s in spaces)
    svg = arrangement_svg(space, PlotConfig(labels=args.labels, title=title))
    points = [[format_rat(x), format_rat(y)] for x, y in apexes(space)]
    return EXIT_OK, {"command": "plot", "apexes": points, "svg": svg}, [svg]


COMMANDS = {
    "ic-check": cmd_ic_check, "ic-set": cmd_ic_set, "ic-equal": cmd_ic_equal,
    "payments": cmd_payments, "am-check": cmd_am_check, "perturb": cmd_perturb,
    "verify-paper": cmd_verify_paper, "plot": cmd_plot,
}


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--input", metavar="FILE", default=d(None), help="input JSON document")
    p.add_argument("--output", metavar="FILE", default=d(None), help="write output here")
    p.add_argument("--json", action="store_true", default=d(False), help="JSON output")
    p.add_argument("--lambda-grid", metavar="SPEC", default=d(None),
                   help="'default' or comma-separated ratios for the weight sweeps")
    p.add_argument("--max-enum", metavar="N", type=int, default=d(ENUM_CAP),
                   help="cap on enumerated outcome vectors (exit 3 beyond it)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropmech", description=__doc__.split("\n\n")[0],
                                     epilog="exit codes: 0 yes, 1 no, 2 input error, 3 cap exceeded")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text, space=True, outcome=False):
        p = sub.add_parser(name, help=help_text)
        _add_globals(p, suppress=True)
        if space:
            p.add_argument("-s", "--space", action="append", metavar="NAME",
                           help="type space name (repeat for several players)")
        if outcome:
            p.add_argument("-g", "--outcome", metavar="NAME|LIST",
                           help="outcome function name, or inline values like 2,4 or 2,1;3,3")
        return p

    command("ic-check", "is g incentive compatible?", outcome=True).add_argument(
        "--cross-check", action="store_true", help="also run the determinant test")
    command("ic-set", "list every IC outcome vector of one type space")
    command("ic-equal", "do two type spaces have the same IC set?")
    command("payments", "payment vectors for every fiber of g", outcome=True)
    command("am-check", "is g an affine maximizer?", outcome=True)
    command("perturb", "second-player space making g an affine maximizer", outcome=True
            ).add_argument("--name", default="S2", help="name of the new type space")
    p = command("verify-paper", "run every built-in check", space=False)
    p.add_argument("--skip-suites", action="store_true", help="skip the randomized suites")
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized suites")
    command("plot", "SVG of the arrangement (m = 3); several spaces are summed").add_argument(
        "--labels", action="store_true", help="label sampled cells with their covectors")
    return parser


def _emit(args, code: int, payload: Any, lines: List[str]) -> None:
    if args.command == "plot":
        text = lines[0]
        if args.json:
            text = json.dumps(payload, indent=2) + "\n"
    elif args.json or args.command == "perturb" and args.output:
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
        if args.command == "perturb" and not args.json:
            sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        code, payload, lines = COMMANDS[args.command](args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotIC as exc:
        print(f"not IC: {exc}", file=sys.stderr)
        return EXIT_NO
    except (_Usage, TropmechError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(args, code, payload, lines)
    return code


if __name__ == "__main__":
    sys.exit(main())
