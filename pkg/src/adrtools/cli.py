"""Command-line entry point ``adrtools``.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on bad
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import (
    basic_algebra,
    gabriel_quiver,
    is_rigid,
    is_semisimple,
    jacobson_radical,
    loewy_length,
    radical_series,
    validate_algebra,
)
from .construct import build_A, verify_chain_theorem
from .formats import FormatError, format_algebra_file, read_algebra
from .quiver import QuiverParseError
from .reports import CheckReport, NonSplitSemisimpleQuotient, NotDeltaFiltered, VerificationError
from .systems import (
    dump_system,
    enumerate_semisimple_systems,
    is_semisimple_system,
    jacobson_system,
    parse_system,
    validate_system,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_algebra(args):
    if args.algebra is None:
        from .a2cases import a2_algebra

        a = a2_algebra()
    else:
        try:
            a = read_algebra(_read(args.algebra), args.max_path_len)
        except (FormatError, QuiverParseError) as exc:
            raise InputError(f"{args.algebra}: {exc}") from None
    rep = validate_algebra(a)
    if not rep.ok:
        raise VerificationError(rep)
    return a


def _load_system(args, a):
    if args.system is None:
        return jacobson_system(a)
    try:
        s = parse_system(_read(args.system), a)
    except ValueError as exc:
        raise InputError(f"{args.system}: {exc}") from None
    rep = validate_system(s)
    if not rep.ok:
        raise VerificationError(rep)
    return s


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if getattr(args, "report", None):
        Path(args.report).write_text(text)
    sys.stdout.write(text)


def _report_lines(reports: list[CheckReport]) -> list[str]:
    out = []
    for r in reports:
        out.append(f"{r.name}: {r.status}")
        if r.dims:
            out.append("  dims: " + ", ".join(f"{k}={v}" for k, v in r.dims.items()))
        out += [f"  FAIL {f}" for f in r.failures]
    return out


def _status(reports: list[CheckReport]) -> int:
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


# commands --------------------------------------------------------------------

def cmd_algebra_info(args) -> int:
    a = _load_algebra(args)
    rad = jacobson_radical(a)
    rigid = is_rigid(a)
    info = {
        "dim": a.dim,
        "labels": list(a.labels),
        "radical_dims": [s.dim for s in radical_series(a)],
        "jacobson_dim": rad.dim,
        "loewy_length": loewy_length(a),
        "semisimple": is_semisimple(a),
        "rigid": rigid.rigid,
    }
    try:
        basic, _ = basic_algebra(a)
        q = gabriel_quiver(basic)
        info["basic_dim"] = basic.dim
        info["quiver"] = q.to_dict()
    except NonSplitSemisimpleQuotient as exc:
        info["quiver"] = f"unavailable: {exc}"
    lines = [f"{k}: {v}" for k, v in info.items()]
    _emit(args, info, lines)
    return EXIT_OK


def cmd_system(args) -> int:
    a = _load_algebra(args)
    if args.action == "jacobson":
        s = jacobson_system(a)
        sys.stdout.write(dump_system(s))
        return EXIT_OK
    s = _load_system(args, a)
    if args.action == "dual":
        from .systems import dual_system

        sys.stdout.write(dump_system(dual_system(s)))
        return EXIT_OK
    rep = validate_system(s)
    flags = is_semisimple_system(s)
    rep.certificates["semisimple_levels"] = list(flags.levels)
    rep.certificates["semisimple"] = bool(flags)
    _emit(args, rep.to_dict(), _report_lines([rep]) + [f"semisimple: {bool(flags)}"])
    return _status([rep])


def cmd_construct(args) -> int:
    a = _load_algebra(args)
    s = _load_system(args, a)
    c = build_A(a, s)
    text = format_algebra_file(c.algebra)
    grading = {"d": c.d, "dim": c.dim, "grading": [list(g) for g in c.grading]}
    if args.out:
        Path(args.out).write_text(text)
        Path(args.out + ".grading.json").write_text(json.dumps(grading, indent=2) + "\n")
        sys.stdout.write(f"wrote {args.out} (dim {c.dim})\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import strat

    a = _load_algebra(args)
    s = _load_system(args, a)
    c = build_A(a, s)
    stage = args.stage
    if stage == "chain":
        reports = [verify_chain_theorem(c)]
        payload = reports[0].to_dict()
    elif stage == "qh":
        if not is_semisimple_system(s):
            raise InputError("quasi-heredity is only checked for semisimple systems; use 'verify stratified'")
        cert = strat.verify_quasi_hereditary(c)
        reports = [cert.report]
        payload = cert.to_dict()
    elif stage == "ringel":
        if not is_semisimple_system(s):
            raise InputError("Ringel duality is only checked for semisimple systems; use 'verify stratified'")
        r = strat.ringel_dual_report(c)
        reports = [r.report]
        payload = r.to_dict()
    elif stage == "stratified":
        r = strat.stratified_report(c)
        reports = [r.report]
        payload = r.to_dict()
    else:  # faithful
        t = strat.build_T(c)
        if args.quotient_column is not None:
            if args.quotient_column not in t.columns:
                raise InputError(f"column {args.quotient_column} is out of range 1..{c.d}")
            t = strat.quotient_action(t, args.quotient_column)
        reports = [strat.verify_faithful(t)]
        payload = reports[0].to_dict()
    _emit(args, payload, _report_lines(reports))
    return _status(reports)


def cmd_enumerate(args) -> int:
    a = _load_algebra(args)
    systems = enumerate_semisimple_systems(a, args.d)
    rows = []
    trivial = 0
    for s in systems:
        c = build_A(a, s)
        degenerate = c.dim == 0 or is_semisimple(c.algebra)
        trivial += degenerate
        row = {"upper_dims": list(s.dims()), "dim": c.dim, "zero_or_semisimple": degenerate,
               "system": json.loads(dump_system(s))}
        if not degenerate:
            basic, _ = basic_algebra(c.algebra)
            row["basic_dim"] = basic.dim
            row["quiver"] = gabriel_quiver(basic).to_dict()
        rows.append(row)
    payload = {"d": args.d, "count": len(systems), "zero_or_semisimple": trivial,
               "nontrivial": len(systems) - trivial, "systems": rows}
    lines = [f"{len(systems)} semisimple {args.d}-systems, {trivial} zero or semisimple, "
             f"{len(systems) - trivial} nontrivial"]
    for row in rows:
        extra = "" if row["zero_or_semisimple"] else f", basic dim {row['basic_dim']}"
        lines.append(f"  dims {row['upper_dims']}: A dim {row['dim']}{extra}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_demo(args) -> int:
    from .a2cases import a2_algebra, check_all_cases, verify_swap_duality

    a = a2_algebra()
    reports = check_all_cases(a) + [verify_swap_duality(a)]
    _emit(args, {"cases": [r.to_dict() for r in reports]}, _report_lines(reports))
    return _status(reports)


# parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="quiver or algebra file (default: the bundled a -> b quiver)")
    common.add_argument("--max-path-len", type=int, default=None, help="path length bound for quiver files")
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--report", help="also write the output to this file")
    with_system = argparse.ArgumentParser(add_help=False)
    with_system.add_argument("--system", help="system JSON file (default: the Jacobson system)")

    p = argparse.ArgumentParser(prog="adrtools", description="Ideal systems, A(R, I) and Ringel duality.")
    sub = p.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="algebra commands")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    alg_sub.add_parser("info", parents=[common]).set_defaults(func=cmd_algebra_info)

    sysp = sub.add_parser("system", help="system commands")
    sys_sub = sysp.add_subparsers(dest="action", required=True)
    for name in ("validate", "dual", "jacobson"):
        sys_sub.add_parser(name, parents=[common, with_system]).set_defaults(func=cmd_system)

    con = sub.add_parser("construct", parents=[common, with_system], help="build A(R, I)")
    con.add_argument("--out", help="algebra file to write; a .grading.json sidecar is written next to it")
    con.set_defaults(func=cmd_construct)

    ver = sub.add_parser("verify", parents=[common, with_system], help="certificates")
    ver.add_argument("stage", choices=["qh", "ringel", "stratified", "chain", "faithful"])
    ver.add_argument("--quotient-column", type=int, default=None,
                     help="faithful only: let A act on T / T[*, l] instead of T")
    ver.set_defaults(func=cmd_verify)

    enum = sub.add_parser("enumerate", parents=[common], help="semisimple systems from the ideal pool")
    enum.add_argument("--d", type=int, required=True)
    enum.set_defaults(func=cmd_enumerate)

    demo = sub.add_parser("demo", parents=[common], help="worked examples over a -> b")
    demo.add_argument("which", choices=["section7"])
    demo.set_defaults(func=cmd_demo)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (VerificationError, NotDeltaFiltered) as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_FAIL
    except (ValueError, NonSplitSemisimpleQuotient) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
