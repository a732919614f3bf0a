"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 input parse error, 4 failed precondition
(including a failed `oa check`), 5 disagreement between independent methods.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report
from .construct import OrthogonalArray, RowPartition, bent_from_oa, bush_construct, validate_oa
from .duality import classify_regularity, verify_dual_structure
from .pfunc import PAryFunction, anf_interpolate, render_anf

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INCONSISTENT = 0, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_function(args) -> PAryFunction:
    """Parse --poly or --table; every failure here is an input error (exit 3)."""
    try:
        if args.poly is not None:
            if args.p is None or args.n is None:
                raise CliError("--poly needs --p and --n", EXIT_USAGE)
            f = PAryFunction.from_poly(args.poly, args.p, args.n)
        else:
            f = PAryFunction.loads(Path(args.table).read_text())
            for name in ("p", "n"):
                given = getattr(args, name)
                if given is not None and given != getattr(f, name):
                    raise CliError(f"--{name} {given} disagrees with the table ({getattr(f, name)})", EXIT_USAGE)
    except CliError:
        raise
    except OSError as e:
        raise CliError(f"cannot read table: {e}", EXIT_PARSE) from None
    except (ValueError, json.JSONDecodeError) as e:
        raise CliError(str(e), EXIT_PARSE) from None
    if getattr(args, "normalize", False):
        f = f.shifted()
    return f


def _add_input(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int)
    sp.add_argument("--n", type=int)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help='polynomial such as "-x0^2+x1^2"')
    src.add_argument("--table", help="JSON function table {p, n, values}")


def cmd_analyze(args) -> int:
    f = _load_function(args)
    if args.threads is not None and args.threads < 1:
        raise CliError("--threads must be positive", EXIT_USAGE)
    try:
        sections = report.analyze(f)
    except report.InconsistencyError as e:
        raise CliError(f"internal inconsistency: {e}", EXIT_INCONSISTENT) from None
    text = report.render_json(sections) if args.json else report.render_text(sections)
    _emit(text, args.report)
    return EXIT_OK


def cmd_oa(args) -> int:
    if args.action == "gen":
        try:
            a = bush_construct(args.p, args.m)
        except ValueError as e:
            raise CliError(str(e), EXIT_PRECONDITION) from None
        _emit(a.dumps(), args.out)
        return EXIT_OK
    try:
        a = OrthogonalArray.loads(Path(args.input).read_text())
    except OSError as e:
        raise CliError(f"cannot read array: {e}", EXIT_PARSE) from None
    except ValueError as e:
        raise CliError(str(e), EXIT_PARSE) from None
    if args.action == "check":
        res = validate_oa(a)
        if not res.ok:
            i, j = res.rows
            c1, c2 = res.columns
            print(f"not orthogonal: rows {i} and {j} repeat the pair {res.pair} in columns {c1} and {c2}")
            return EXIT_PRECONDITION
        print(f"ok: OA({a.r},{a.N})")
        return EXIT_OK
    try:
        part = RowPartition.parse(args.partition, a.p)
    except ValueError as e:
        raise CliError(f"bad partition: {e}", EXIT_PARSE) from None
    try:
        f = bent_from_oa(a, part)
    except ValueError as e:
        raise CliError(str(e), EXIT_PRECONDITION) from None
    _emit(f.dumps() + "\n", args.out)
    return EXIT_OK


def cmd_dual(args) -> int:
    f = _load_function(args)
    try:
        reg = classify_regularity(f)
    except ValueError as e:
        raise CliError(str(e), EXIT_PRECONDITION) from None
    if reg.dual is None:
        raise CliError(f"f is {reg.kind}; no dual function", EXIT_PRECONDITION)
    lines = [f"dual: {render_anf(anf_interpolate(reg.dual))}", f"regularity: {reg.kind}", f"W(0): {reg.W0}"]
    try:
        bundle = verify_dual_structure(f)
    except ValueError as e:
        lines.append(f"structure: skipped ({e})")
    else:
        if bundle.dual != reg.dual:
            raise CliError("internal inconsistency: the two dual constructions differ", EXIT_INCONSISTENT)
        for name, flags in bundle.checks.items():
            lines.append(f"check {name}: {'pass' if all(flags) else 'FAIL'}")
        for name, i, x in bundle.witnesses:
            lines.append(f"witness {name}: class {i}, point {x}")
        lines.append("matches: " + " ".join(f"D{i}*=" + (f"D{j}" if j else "-") for i, j in bundle.matches.items()))
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pbent", description="Analyze p-ary bent functions and their Cayley graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="full analysis report")
    _add_input(an)
    an.add_argument("--normalize", action="store_true", help="replace f by f - f(0)")
    an.add_argument("--report", help="write the report here instead of stdout")
    an.add_argument("--threads", type=int, help="advisory; results never depend on it")
    an.add_argument("--json", action="store_true", help="machine-readable report")
    an.set_defaults(func=cmd_analyze)

    oa = sub.add_parser("oa", help="orthogonal arrays")
    oas = oa.add_subparsers(dest="action", required=True)
    gen = oas.add_parser("gen", help="Bush OA(N+1, N) over GF(p^m)")
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--out")
    chk = oas.add_parser("check", help="validate orthogonality")
    chk.add_argument("--in", dest="input", required=True)
    bent = oas.add_parser("bent", help="function from a row partition")
    bent.add_argument("--in", dest="input", required=True)
    bent.add_argument("--partition", required=True, help='groups such as "0|1|2,3:0"')
    bent.add_argument("--out")
    oa.set_defaults(func=cmd_oa)

    du = sub.add_parser("dual", help="dual function and its structure checks")
    _add_input(du)
    du.set_defaults(func=cmd_dual)
    return ap


def _attach_values(argv: list[str]) -> list[str]:
    # "--poly -x0^2" would otherwise read the polynomial as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--poly", "--partition"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_attach_values(argv))
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 after --help
        return int(e.code or 0)
    try:
        return args.func(args)
    except CliError as e:
        print(f"pbent: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
