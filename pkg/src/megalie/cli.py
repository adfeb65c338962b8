"""Command-line front end: ``megalie algebra ...``, ``megalie check-map``, ``megalie sbve ...``."""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .exactalg import (
    ConstraintSchemaError,
    ConstraintViolation,
    FormatError,
    JacobiError,
    LieAlgebra,
    LieAlgebraError,
    center,
    derived_series,
    dump_algebra,
    dump_matrix,
    extract_constraint_coefficients,
    is_automorphism,
    load_algebra,
    load_matrix,
    lower_central_series,
    megaideal_closure,
    stability_report,
    upper_central_series,
)
from .exactalg.closure import DEFAULT_MAX_COUNT, DEFAULT_MAX_DEPTH

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

SEED_ENV = "MEGALIE_SEED"


class InputError(Exception):
    """Unreadable or malformed input; maps to exit status 2."""


def _load_algebra(path: str) -> LieAlgebra:
    try:
        return load_algebra(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return args.seed


# algebra ---------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    try:
        g = load_algebra(args.path, validate=False)
    except OSError as exc:
        raise InputError(f"{args.path}: {exc.strerror or exc}") from exc
    except FormatError as exc:
        raise InputError(f"{args.path}: {exc}") from exc
    try:
        g.validate()
    except JacobiError as exc:
        i, j, k = (x + 1 for x in exc.triple)
        print(f"invalid: Jacobi identity fails for triple ({i},{j},{k}) = ({', '.join(exc.labels)})", file=out)
        print(f"  cyclic sum = {g.format(exc.value)}", file=out)
        return EXIT_FAIL
    except LieAlgebraError as exc:
        print(f"invalid: {exc}", file=out)
        return EXIT_FAIL
    print(f"valid: dim {g.dim}, labels {' '.join(g.labels)}", file=out)
    return EXIT_OK


SERIES = {
    "derived": derived_series,
    "lower": lower_central_series,
    "upper": upper_central_series,
}


def cmd_series(args, out) -> int:
    g = _load_algebra(args.path)
    if args.kind == "center":
        z = center(g)
        print(f"center: dim {z.dim}  {g.describe(z)}", file=out)
        return EXIT_OK
    terms = SERIES[args.kind](g)
    print(f"{args.kind} series: " + ", ".join(str(s.dim) for s in terms), file=out)
    for k, s in enumerate(terms):
        print(f"  {k:>2}  dim {s.dim:>3}  {g.describe(s)}", file=out)
    return EXIT_OK


def cmd_megaideals(args, out) -> int:
    g = _load_algebra(args.path)
    res = megaideal_closure(g, max_depth=args.depth, max_count=args.max)
    flags = {}
    big_res = None
    if args.stability:
        g_big = _load_algebra(args.stability)
        big_res = megaideal_closure(g_big, max_depth=args.depth, max_count=args.max)
        flags = {e.subspace: e.stable for e in stability_report(g, res.members, g_big, big_res.members)}
    status = "complete" if res.complete else "INCOMPLETE (budget exceeded)"
    print(f"megaideals: {len(res)} found, {res.rounds} rounds, {status}", file=out)
    if big_res is not None:
        bstatus = "complete" if big_res.complete else "INCOMPLETE (budget exceeded)"
        print(f"stability reference: {len(big_res)} found, {big_res.rounds} rounds, {bstatus}", file=out)
    for s in res.members:
        if flags:
            flag = "stable" if flags[s] else "truncation-sensitive"
            print(f"  dim {s.dim:>3}  {flag:<20}  {g.describe(s)}", file=out)
        else:
            print(f"  dim {s.dim:>3}  {g.describe(s)}", file=out)
    if not res.complete or (big_res is not None and not big_res.complete):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_check_map(args, out) -> int:
    g = _load_algebra(args.algebra)
    try:
        m = load_matrix(args.matrix)
    except OSError as exc:
        raise InputError(f"{args.matrix}: {exc.strerror or exc}") from exc
    except (FormatError, ValueError) as exc:
        raise InputError(f"{args.matrix}: {exc}") from exc
    if m.dim != g.dim:
        raise InputError(f"matrix of size {m.dim} does not match algebra of dim {g.dim}")
    ok = True
    aut = is_automorphism(g, m)
    if aut:
        print("automorphism: yes", file=out)
    else:
        ok = False
        detail = aut.reason
        if aut.witness is not None:
            i, j = aut.witness
            detail += f" at [{g.labels[i]}, {g.labels[j]}]"
        print(f"automorphism: no ({detail})", file=out)
    res = megaideal_closure(g)
    kept = 0
    for s in res.members:
        if all(m(row) in s for row in s.basis):
            kept += 1
        else:
            ok = False
            print(f"  not preserved: {g.describe(s)}", file=out)
    print(f"megaideals preserved: {kept}/{len(res)}", file=out)
    try:
        cc = extract_constraint_coefficients(g, m)
    except ConstraintSchemaError:
        print("constraint coefficients: not applicable (labels)", file=out)
    except ConstraintViolation as exc:
        ok = False
        print(f"constraint coefficients: violated {exc.condition}", file=out)
        if exc.image is not None:
            print(f"  witness: {exc.image if exc.condition == 'rotation-block' else g.format(exc.image)}", file=out)
    else:
        b = "; ".join(" ".join(str(x) for x in row) for row in cc.B)
        print(f"constraint coefficients: c={cc.c} d0={cc.d0} d1={cc.d1} a1={cc.a1} B=[{b}]", file=out)
    print("verdict: " + ("PASS" if ok else "FAIL"), file=out)
    return EXIT_OK if ok else EXIT_FAIL


# sbve ------------------------------------------------------------------------


def cmd_sbve_verify(args, out) -> int:
    from .sbve.generators import MIN_TRUNCATION
    from .sbve.verify import verify

    if args.nmax < MIN_TRUNCATION:
        raise InputError(f"--nmax must be at least {MIN_TRUNCATION}, got {args.nmax}")
    report = verify(args.omega, args.nmax, _seed(args))
    text = report.render()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    fail = report.first_failure()
    if fail is not None:
        print(f"FAILED in section '{fail[0]}': {fail[1].name}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_sbve_export(args, out) -> int:
    from .sbve.generators import MIN_TRUNCATION, build_truncated_algebra, generators
    from .sbve.transforms import discrete_symmetries, pushforward_matrix

    if args.nmax < MIN_TRUNCATION:
        raise InputError(f"--nmax must be at least {MIN_TRUNCATION}, got {args.nmax}")
    gs = generators(args.omega, args.nmax)
    g = build_truncated_algebra(gs)
    if args.out is None:
        out.write(dump_algebra(g))
        return EXIT_OK
    d = Path(args.out)
    d.mkdir(parents=True, exist_ok=True)
    name = f"b{args.nmax}.json" if args.omega == 0 else f"b{args.nmax}_omega.json"
    (d / name).write_text(dump_algebra(g), encoding="utf-8")
    written = [name]
    if args.omega == 0:
        for label, tr in zip(("sigma1", "sigma2"), discrete_symmetries()):
            fname = f"{label}_b{args.nmax}.json"
            (d / fname).write_text(dump_matrix(pushforward_matrix(gs, tr)), encoding="utf-8")
            written.append(fname)
    for w in written:
        print(f"wrote {d / w}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="megalie", description="Megaideals and point symmetries of the vorticity equation on the sphere.")
    p.add_argument("--version", action="version", version=f"megalie {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="operations on Lie algebra JSON files")
    asub = alg.add_subparsers(dest="action", required=True)
    v = asub.add_parser("validate", help="check antisymmetry and the Jacobi identity")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)
    s = asub.add_parser("series", help="print a series of ideals")
    s.add_argument("path")
    s.add_argument("--kind", choices=["derived", "lower", "upper", "center"], default="derived")
    s.set_defaults(func=cmd_series)
    m = asub.add_parser("megaideals", help="closure search for megaideals")
    m.add_argument("path")
    m.add_argument("--depth", type=int, default=DEFAULT_MAX_DEPTH)
    m.add_argument("--max", type=int, default=DEFAULT_MAX_COUNT)
    m.add_argument("--stability", metavar="PATH2", help="larger truncation used to flag sensitive entries")
    m.set_defaults(func=cmd_megaideals)

    c = sub.add_parser("check-map", help="automorphism and megaideal checks for a matrix")
    c.add_argument("algebra")
    c.add_argument("matrix")
    c.set_defaults(func=cmd_check_map)

    sb = sub.add_parser("sbve", help="the vorticity equation case study")
    ssub = sb.add_subparsers(dest="action", required=True)
    ver = ssub.add_parser("verify", help="run the full verification pipeline")
    ver.add_argument("--omega", type=_rational, default=Fraction(0))
    ver.add_argument("--nmax", type=int, default=4)
    ver.add_argument("--seed", type=int, default=42, help=f"sampling seed (overridden by ${SEED_ENV})")
    ver.add_argument("--out", help="write the report here instead of stdout")
    ver.set_defaults(func=cmd_sbve_verify)
    ex = ssub.add_parser("export", help="write the truncated algebra (and σ matrices for Ω=0)")
    ex.add_argument("--omega", type=_rational, default=Fraction(0))
    ex.add_argument("--nmax", type=int, default=4)
    ex.add_argument("--out", metavar="DIR", help="output directory; stdout gets the algebra if omitted")
    ex.set_defaults(func=cmd_sbve_export)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LieAlgebraError as exc:
        print(f"invalid algebra: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
