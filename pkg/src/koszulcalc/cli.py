"""Command-line interface.

    koszulcalc wspaces        --preset symmetric:3 --max-weight 6
    koszulcalc koszulness     --preset preprojective:1-2,2-3 --max-weight 8
    koszulcalc hk             --preset symmetric:2 --max-weight 5 [--coefficients Ae]
    koszulcalc hk-higher      --preset symmetric:2 --max-weight 5
    koszulcalc duality-verify --preset symmetric:2 --max-weight 5 --trials 40
    koszulcalc strong-kc      --preset symmetric:2 --max-weight 5
    koszulcalc selftest

Input is either an algebra description file (see spec_io) or a preset
flag; --field and --max-weight override the file's directives.  Exit
codes: 0 computed/verified, 1 a mathematical verification failed, 2 bad
input.  JSON and CSV output are byte-deterministic for a fixed
(description, seed); timing appears only in the text format.
"""

from __future__ import annotations

import argparse
import sys
import time

from .algebra import EnvelopingBimodule, ShiftedBimodule, TruncationExceeded
from .calculus import Calculus, SquareNotZero
from .complex import check_koszulness
from .duality import poincare_duality_on_classes, strong_kc_verify, \
    verify_duality_identities
from .fields import field_from_name
from .report import Report, emit
from .spec_io import AlgebraSpec, SpecError, emit_spec, parse_spec
from .wspaces import WSpaces

COMMANDS = ("wspaces", "koszulness", "hk", "hk-higher", "duality-verify",
            "strong-kc", "selftest")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="koszulcalc",
        description="Exact Koszul calculus of quadratic quiver algebras.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name != "selftest":
            p.add_argument("specfile", nargs="?", default=None,
                           help="algebra description file")
            p.add_argument("--preset",
                           help="symmetric:<n> | exterior:<n> | "
                                "preprojective:<u-v,...>")
            p.add_argument("--field", default=None, help="Q | Fp:<prime>")
            p.add_argument("--max-weight", type=int, default=None,
                           help="truncation weight T")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", default="text",
                       choices=("json", "csv", "text"))
        p.add_argument("--out", default=None, help="write the report here")
        if name in ("duality-verify",):
            p.add_argument("--trials", type=int, default=40)
        if name in ("hk", "hk-higher"):
            p.add_argument("--direction", default="cohomology",
                           choices=("cohomology", "homology"))
        if name == "hk":
            p.add_argument("--coefficients", default="A",
                           help="A | Ae | shifted:<k>")
        if name == "selftest":
            p.add_argument("--only", default=None,
                           help="comma-separated criterion ids")
    return ap


def _preset_from_flag(text: str):
    kind, _, rest = text.partition(":")
    if kind in ("symmetric", "exterior"):
        if not rest.isdigit() or int(rest) < 1:
            raise SpecError(f"bad preset argument {text!r}", 0)
        return (kind, int(rest))
    if kind == "preprojective":
        edges = []
        for tok in rest.split(","):
            u, sep, v = tok.partition("-")
            if not sep or not u or not v or u == v:
                raise SpecError(f"bad edge {tok!r} in preset", 0)
            edges.append((u, v))
        if not edges:
            raise SpecError("preprojective preset needs edges", 0)
        return ("preprojective", tuple(edges))
    raise SpecError(f"unknown preset {kind!r}", 0)


def _resolve_spec(args) -> AlgebraSpec:
    if args.specfile and args.preset:
        raise SpecError("give a description file or --preset, not both", 0)
    if args.specfile:
        with open(args.specfile, encoding="utf-8") as fh:
            spec = parse_spec(fh.read())
    elif args.preset:
        spec = AlgebraSpec(preset=_preset_from_flag(args.preset))
    else:
        raise SpecError("a description file or --preset is required", 0)
    if args.field:
        field_from_name(args.field)  # validate eagerly
        spec.field_desc = args.field if args.field != "Q" else "Q"
    if args.max_weight is not None:
        spec.weight = args.max_weight
    if spec.weight is None:
        raise SpecError("--max-weight is required with --preset", 0)
    return spec


def _coefficients(calc: Calculus, text: str):
    if text == "A":
        return calc.regular, "A"
    if text == "Ae":
        return EnvelopingBimodule(calc.A), "Ae"
    if text.startswith("shifted:"):
        k = int(text.split(":", 1)[1])
        return ShiftedBimodule(calc.regular, k), f"shifted:{k}"
    raise SpecError(f"unknown coefficients {text!r}", 0)


def _dispatch(args):
    """Returns (spec_text, field_name, weight, options, result, exit_code)."""
    if args.command == "selftest":
        from .selftest import run_selftest

        ids = args.only.split(",") if args.only else None
        rows, passed = run_selftest(ids)
        result = {"criteria": rows, "passed": passed}
        return ("selftest\n", "Q", 0, {}, result, 0 if passed else 1)

    spec = _resolve_spec(args)
    spec_text = emit_spec(spec)
    A = spec.build()
    calc = Calculus(A)
    options: dict = {}
    if args.command == "wspaces":
        rows = [{"p": p, "dim": calc.W.dim(p)} for p in range(0, A.T + 1)]
        result = {"rows": rows, "top_nonzero": calc.W.top_nonzero()}
        return spec_text, A.field.name, A.T, options, result, 0

    if args.command == "koszulness":
        rep = check_koszulness(A, A.T, calc.W)
        fail = rep.first_failure()
        result = {
            "rows": rep.rows(),
            "koszul": rep.is_koszul,
            "verdict": f"KOSZUL up to weight {A.T}" if rep.is_koszul
                       else "NOT-KOSZUL",
        }
        if fail:
            w, p, d = fail
            result["first_failure"] = [
                {"weight": w, "p": p, "dim": d}]
        return spec_text, A.field.name, A.T, options, result, \
            0 if rep.is_koszul else 1

    if args.command == "hk":
        module, modname = _coefficients(calc, args.coefficients)
        options = {"direction": args.direction, "coefficients": modname}
        table = calc.hk(module=module, direction=args.direction)
        return spec_text, A.field.name, A.T, options, {"rows": table.rows()}, 0

    if args.command == "hk-higher":
        options = {"direction": args.direction}
        table = calc.hk(direction=args.direction)
        try:
            higher = calc.higher(table)
        except SquareNotZero as exc:
            return spec_text, A.field.name, A.T, options, \
                {"rows": [], "diagnostic": str(exc)}, 1
        return spec_text, A.field.name, A.T, options, {"rows": higher.rows()}, 0

    if args.command == "duality-verify":
        import random

        options = {"trials": args.trials}
        rng = random.Random(args.seed)
        rep = verify_duality_identities(calc, args.trials, rng)
        pd = poincare_duality_on_classes(calc)
        checks = rep.rows() + pd.rows()
        ok = rep.verified and pd.verified
        result = {"checks": checks,
                  "verdict": "VERIFIED" if ok else "NOT-VERIFIED"}
        return spec_text, A.field.name, A.T, options, result, 0 if ok else 1

    if args.command == "strong-kc":
        rep = strong_kc_verify(calc)
        result = {"checks": rep.rows(),
                  "verdict": "VERIFIED" if rep.verified else "NOT-VERIFIED"}
        return spec_text, A.field.name, A.T, options, result, \
            0 if rep.verified else 1

    raise SpecError(f"unknown command {args.command!r}", 0)


def run_command(argv):
    """Parse and run; returns (report bytes, exit code)."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return b"", 2 if exc.code else 0
    t0 = time.monotonic()
    try:
        spec_text, field_name, weight, options, result, code = _dispatch(args)
    except (SpecError, TruncationExceeded, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return b"", 2
    status = "ok" if code == 0 else "failed"
    report = Report(
        command=args.command,
        spec_text=spec_text,
        field_name=field_name,
        max_weight=weight,
        seed=args.seed,
        options=options,
        result=result,
        status=status,
        exit_code=code,
        timing_seconds=time.monotonic() - t0,
    )
    return emit(report, args.format), code


def main(argv=None) -> int:
    out, code = run_command(sys.argv[1:] if argv is None else argv)
    args_out = None
    if out:
        # honor --out if it was given (re-parse cheaply)
        argv_list = sys.argv[1:] if argv is None else argv
        if "--out" in argv_list:
            args_out = argv_list[argv_list.index("--out") + 1]
        if args_out:
            with open(args_out, "wb") as fh:
                fh.write(out)
        else:
            sys.stdout.buffer.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
