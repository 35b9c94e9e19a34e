"""Command-line interface: ``charseq <subcommand> ...``.

Validation errors print a one-line message to stderr and exit with status 2.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .asym import AsymptoticCase, Family, Subcase, acdf
from .chars import MultiplicativeCharacter, parse_char_spec
from .corr import crosscorrelate, metrics
from .errors import BadArgs, CharSeqError
from .experiments import FIGURES, DEFAULT_SAMPLES, ExperimentSpec, Table, fmt, reproduce, scan_shifts
from .gf import parse_field_spec
from .optim import minimize_acdf
from .seqgen import ComplexSequence, Family as SeqFamily, SequenceSpec, unimodularize


def _add_sequence_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", help="builtin name (e.g. F512) or 'p=<p>; modulus=<c0,c1,...>'")
    p.add_argument("--char", action="append", help="mult:p=<p>,j=<j> (give twice for a pair with different characters)")
    p.add_argument("--shift", action="append", type=int, help="shift; give twice for the pair (f, g)")
    p.add_argument("--len", type=int, dest="length", help="sequence length (default: natural period)")
    p.add_argument("--d", type=int, default=1, help="generator power of g (additive); of the sequence for gen")
    p.add_argument("--unimodularize", action="store_true", help="replace zero terms by 1")


def _sequence_specs(args, count: int) -> list[SequenceSpec]:
    shifts = list(args.shift or [])
    if len(shifts) > count:
        raise BadArgs(f"at most {count} --shift values")
    shifts += [0] * (count - len(shifts))
    if bool(args.field) == bool(args.char):
        raise BadArgs("give exactly one of --field and --char")
    if args.field:
        field = parse_field_spec(args.field)
        length = args.length or field.q - 1
        powers = [args.d] if count == 1 else [1, args.d]
        return [SequenceSpec(SeqFamily.ADDITIVE, s, length, field, d) for s, d in zip(shifts, powers)]
    chars = [parse_char_spec(c) for c in args.char]
    if not all(isinstance(c, MultiplicativeCharacter) for c in chars):
        raise BadArgs("sequence characters must be multiplicative (mult:p=..,j=..)")
    if len(chars) > count:
        raise BadArgs(f"at most {count} --char values")
    chars += [chars[-1]] * (count - len(chars))
    length = args.length or chars[0].p
    return [SequenceSpec(SeqFamily.MULTIPLICATIVE, s, length, char=c) for s, c in zip(shifts, chars)]


def _build(spec: SequenceSpec, args) -> ComplexSequence:
    seq = spec.build()
    return unimodularize(seq) if args.unimodularize else seq


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> None:
    (spec,) = _sequence_specs(args, 1)
    seq = _build(spec, args)
    rows = [(float(z.real), float(z.imag)) for z in seq.terms]
    _emit(Table(None, rows).to_csv(), args.out)


def cmd_corr(args) -> None:
    fs, gs = _sequence_specs(args, 2)
    prof = crosscorrelate(_build(fs, args), _build(gs, args))
    rows = [(int(s), float(v.real), float(v.imag), float(abs(v) ** 2)) for s, v in zip(prof.shifts, prof.values)]
    _emit(Table(("s", "re", "im", "abs2"), rows).to_csv(), args.out)


def cmd_metrics(args) -> None:
    fs, gs = _sequence_specs(args, 2)
    r = metrics(_build(fs, args), _build(gs, args))
    _emit(Table(("df_f", "df_g", "cdf", "cmf", "ps_lower", "ps_upper"), [r.as_row()]).to_csv(), args.out)


def cmd_scan(args) -> None:
    fs, gs = _sequence_specs(args, 2)
    if args.unimodularize:
        raise BadArgs("scan works on the raw sequences")
    shifts = range(gs.period) if args.shifts is None else _parse_range(args.shifts)
    res = scan_shifts(fs, gs, shifts, threads=args.threads)
    rows = list(zip(res.shifts.tolist(), res.sigma, res.cdf, res.df_f, res.df_g))
    header = ("shift", "fractional_shift_sum", "cdf_measured", "df_f", "df_g")
    _emit(Table(header, rows).to_csv(), args.out)


def _parse_range(text: str) -> range:
    try:
        if ":" in text:
            parts = [int(x) for x in text.split(":")]
            return range(*parts)
        return range(int(text))
    except (ValueError, TypeError) as exc:
        raise BadArgs(f"bad shift range {text!r}") from exc


def cmd_asymptote(args) -> None:
    try:
        family = Family(args.family)
        subcase = Subcase(args.subcase)
    except ValueError as exc:
        raise BadArgs(str(exc)) from exc
    case = AsymptoticCase(family, subcase, args.lam, args.delta, args.sigma, args.p)
    _emit(fmt(acdf(case)) + "\n", args.out)


def cmd_optimize(args) -> None:
    try:
        subcase = Subcase(args.case)
    except ValueError as exc:
        raise BadArgs(str(exc)) from exc
    r = minimize_acdf(subcase, p=args.p)
    argmin = ",".join(f"{k}={fmt(v)}" for k, v in r.argmin.items() if k != "lam_interval")
    if "lam_interval" in r.argmin:
        lo, hi = r.argmin["lam_interval"]
        argmin += f" (any lam in ({fmt(lo)},{fmt(hi)}])"
    lines = [
        f"case: {r.subcase.value}",
        f"argmin: {argmin}",
        f"min_value: {fmt(r.min_value)}",
        f"matched_cubic: {r.cubic if r.cubic is not None else 'constant 1'}",
        f"matched_root: {fmt(r.matched_root)}",
        f"residual: {r.residual:.3e}",
    ]
    _emit("\n".join(lines) + "\n", args.out)


def cmd_reproduce(args) -> None:
    spec = ExperimentSpec(
        figure=args.figure,
        scale=args.scale,
        out=Path(args.out or "."),
        threads=args.threads,
        seed=args.seed,
        samples=args.samples,
        full=args.full,
    )
    for path in reproduce(spec):
        print(path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charseq", description="Character sequences and their correlation demerit factors.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (directory for reproduce); default stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="print one sequence as re,im lines")
    _add_sequence_args(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("corr", parents=[common], help="aperiodic crosscorrelation profile of a pair")
    _add_sequence_args(p)
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("metrics", parents=[common], help="demerit factors of a pair")
    _add_sequence_args(p)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("scan", parents=[common], help="CDF over the shifts of g")
    _add_sequence_args(p)
    p.add_argument("--shifts", help="N (0..N-1) or start:stop[:step]; default all shifts")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("asymptote", parents=[common], help="limiting CDF formula")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--subcase", required=True, choices=[s.value for s in Subcase])
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--p", type=int, default=2)
    p.set_defaults(func=cmd_asymptote)

    p = sub.add_parser("optimize", parents=[common], help="global minimum of a limiting formula")
    p.add_argument("--case", required=True, choices=[s.value for s in Subcase])
    p.add_argument("--p", type=int, default=2)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("reproduce", parents=[common], help="write a figure's data as CSV")
    p.add_argument("figure", choices=FIGURES)
    p.add_argument("--scale", choices=("full", "reduced"), default="full")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="shift pairs per generator pair (histograms)")
    p.add_argument("--full", action="store_true", help="enumerate every shift pair (histograms)")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CharSeqError as exc:
        print(f"charseq: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
