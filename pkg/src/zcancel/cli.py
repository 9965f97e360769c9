"""Command-line front end.

Exit status is 0 for a decisive answer (negative answers included), 2 when
the answer is Unknown and 1 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .blowups import extended_graph
from .cancellation import (
    Status,
    Verdict,
    check_verdict,
    cylinders_isomorphic,
    generate_family,
    zariski_status,
)
from .covering import (
    DPDDivisor,
    cover_order,
    dpd_cover,
    hj_string,
    line_bundle_divisor,
    singularity_type,
)
from .divisors import GraphDivisor, Mode
from .equations import (
    DanielewskiForm,
    MMForm,
    Outcome,
    classify,
    mm_classify,
    tree_of_equation,
    verify_witness,
)
from .errors import InputError, ZcancelError
from .invariants import analyze
from .stretching import StretchSpec, stretch

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2


class CommandError(Exception):
    """Raised for problems that should be reported as input errors."""


def _located(path: str, exc: InputError) -> str:
    if exc.line is not None:
        return f"{path}:{exc.line}:{exc.column or 1}: {exc.message}"
    return f"{path}: {exc.message}"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CommandError(f"{path}: {exc.strerror}") from None


def _load_json(path: str):
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CommandError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_divisor(path: str) -> GraphDivisor:
    """A graph divisor document, or a Danielewski form (converted through its fiber tree)."""
    obj = _load_json(path)
    try:
        if isinstance(obj, dict) and "b" in obj and "fibers" not in obj:
            return tree_of_equation(DanielewskiForm.from_json(obj))
        d = GraphDivisor.from_json(obj)
    except InputError as exc:
        raise CommandError(_located(path, exc)) from None
    issues = d.validate()
    if issues:
        raise CommandError(f"{path}: " + "; ".join(str(i) for i in issues))
    return d


def _load_form(path: str, family: str):
    text = _read(path)
    stripped = text.strip()
    cls = MMForm if family == "mm" else DanielewskiForm
    try:
        if stripped.startswith("{"):
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise CommandError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
            return cls.from_json(obj)
        return cls.parse(stripped)
    except InputError as exc:
        raise CommandError(_located(path, exc)) from None


def _emit(obj, fmt: str, text_lines=None, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _no_dot(args):
    if args.format == "dot":
        raise CommandError(f"--format dot is not available for '{args.command}'")


# commands


def cmd_analyze(args) -> int:
    d = load_divisor(args.path)
    if args.format == "dot":
        sys.stdout.write(extended_graph(d).to_dot())
        return EXIT_OK
    dpd = None
    if args.dpd:
        try:
            dpd = DPDDivisor.parse(args.dpd)
        except InputError as exc:
            raise CommandError(_located("--dpd", exc)) from None
    report = analyze(d, dpd)
    zs = zariski_status(d, dpd.multiplicities if dpd else None)
    obj = report.to_json()
    obj["zariski"] = zs.to_json()
    lines = [
        f"vertex count: {report.vertex_count}",
        f"picard number: {report.picard_number if report.picard_number is not None else 'n/a'}",
        f"class group: {report.class_group}",
        f"zariski status: {zs.status.value}",
    ]
    for f in report.fibers:
        lines.append(
            f"fiber {f.point}: height {f.height}, {f.components} component(s), type {list(f.type_sequence)}"
        )
    _emit(obj, args.format, lines)
    return EXIT_UNKNOWN if zs.status is Status.UNKNOWN else EXIT_OK


def cmd_compare(args) -> int:
    _no_dot(args)
    d1, d2 = load_divisor(args.first), load_divisor(args.second)
    mode = Mode.OVER_BASE if args.over_base else Mode.ABSTRACT
    verdict = cylinders_isomorphic(d1, d2, mode, args.equivariant)
    if not check_verdict(d1, d2, verdict, mode, args.equivariant):
        raise RuntimeError("certificate failed re-validation")
    obj = verdict.to_json()
    obj["certificate_checked"] = True
    lines = [f"verdict: {verdict.verdict.value}"]
    if verdict.citation:
        lines.append(f"reason: {verdict.citation}")
    if verdict.certificate:
        lines.append(f"certificate: {verdict.certificate['kind']}")
    _emit(obj, args.format, lines)
    return EXIT_UNKNOWN if verdict.verdict is Verdict.UNKNOWN else EXIT_OK


def cmd_stretch(args) -> int:
    d = load_divisor(args.path)
    try:
        spec = StretchSpec.parse(args.stretch, principal=args.principal)
    except InputError as exc:
        raise CommandError(_located("--stretch", exc)) from None
    result = stretch(d, spec)
    if args.format == "dot":
        sys.stdout.write(extended_graph(result).to_dot())
        return EXIT_OK
    obj = {"spec": spec.to_json(), "divisor": result.to_json()}
    lines = [f"{p}: {result.tree(p).to_literal()}" for p in result.points]
    _emit(obj, args.format, lines)
    return EXIT_OK


def cmd_family(args) -> int:
    _no_dot(args)
    if args.k < 1:
        raise CommandError("--k must be positive")
    d = load_divisor(args.path)
    members = generate_family(d, args.k)
    obj = {
        "members": [
            {"divisor": m.divisor.to_json(), "certificate": m.certificate} for m in members
        ]
    }
    lines = [
        f"member {i}: v={m.vertex_count}, cylinder {m.certificate['cylinder']['verdict']}"
        for i, m in enumerate(members, 1)
    ]
    _emit(obj, args.format, lines)
    decisive = all(m.certificate["cylinder"]["verdict"] == "Yes" for m in members)
    return EXIT_OK if decisive else EXIT_UNKNOWN


def cmd_classify(args) -> int:
    _no_dot(args)
    g, h = _load_form(args.first, args.family), _load_form(args.second, args.family)
    if args.family == "mm":
        res = mm_classify(g, h)
        obj = res.to_json()
        lines = [f"outcome: {obj['outcome']}", f"reason: {res.reason}"]
        if res.lam is not None:
            lines.append(f"lambda: {obj['lambda']}")
        _emit(obj, args.format, lines)
        return EXIT_OK
    res = classify(g, h)
    if res.witness is not None and not verify_witness(g, h, res.witness):
        raise RuntimeError("witness failed re-validation")
    obj = res.to_json()
    lines = [f"outcome: {res.outcome.value}", f"reason: {res.reason}"]
    if res.witness is not None:
        w = obj["witness"]
        lines.append(f"alpha={w['alpha']} lambda={w['lambda']} beta={w['beta']} gamma={w['gamma']}")
    _emit(obj, args.format, lines)
    return EXIT_UNKNOWN if res.outcome is Outcome.UNKNOWN else EXIT_OK


def cmd_cover(args) -> int:
    _no_dot(args)
    try:
        dpd = DPDDivisor.parse(args.dpd)
    except InputError as exc:
        raise CommandError(_located("--dpd", exc)) from None
    if not dpd.entries:
        raise CommandError("--dpd lists no points")
    d = cover_order(dpd.multiplicities)
    lifted = dpd_cover(dpd, d)
    status = zariski_status(line_bundle_divisor([p for p, _ in lifted]))
    singular = []
    for p, e, m in dpd.entries:
        if m > 1:
            n, q = singularity_type(e, m)
            singular.append({"point": p, "type": [n, q], "hj": hj_string(n, q)})
    obj = {
        "order": d,
        "cover": {p: c for p, c in lifted},
        "singularities": singular,
        "zariski": status.to_json(),
    }
    lines = [f"cover order: {d}"]
    lines += [f"{p}: {c}" for p, c in lifted]
    lines += [f"{s['point']}: type {tuple(s['type'])}, string {s['hj']}" for s in singular]
    lines.append(f"zariski status of the cover: {status.status.value}")
    _emit(obj, args.format, lines)
    return EXIT_OK


def cmd_hj(args) -> int:
    _no_dot(args)
    s = hj_string(args.n, args.q)
    sys.stdout.write(json.dumps(s, separators=(",", ":")) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zcancel", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="invariants and Zariski status")
    p.add_argument("path")
    p.add_argument("--dpd", help="parabolic data such as 'p1:1/2,p2:3/4'")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", parents=[common], help="compare cylinders of two divisors")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--over-base", action="store_true", help="keep base points fixed")
    p.add_argument("--equivariant", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("stretch", parents=[common], help="apply a stretching")
    p.add_argument("path")
    p.add_argument("--stretch", required=True, help="e.g. 'b1:level=top,a=3;b2:level=-1,a=2'")
    p.add_argument("--principal", action="store_true")
    p.set_defaults(func=cmd_stretch)

    p = sub.add_parser("family", parents=[common], help="non-cancellation family")
    p.add_argument("path")
    p.add_argument("--k", type=int, default=3)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("classify-eq", parents=[common], help="classify two equations")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--family", choices=("gdw", "mm"), default="gdw")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cover", parents=[common], help="cyclic cover of parabolic data")
    p.add_argument("--dpd", required=True)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("hj", parents=[common], help="Hirzebruch-Jung string of type (n, q)")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_hj)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except InputError as exc:
        print(f"error: {_located('<input>', exc)}", file=sys.stderr)
    except ZcancelError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
