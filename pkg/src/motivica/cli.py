"""Command-line front end."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import convolution, kapranov, mckay, zeta
from .errors import InputError, MotivicaError, ValidationError
from .fixtures import NAMES
from .grothendieck import spe, spectrum_poly
from .parse import parse_epoly, parse_series
from .resolution import (
    ResolutionData, builtin_fixture, parse_resolution, validate_resolution,
)
from .serialize import Report, render

COMMANDS = [
    "zeta", "nearby", "vanishing", "spectrum", "topzeta", "igusa", "dlzeta", "monodromy",
    "acampo", "pushforward", "convolve", "mckay", "kapranov", "validate", "fixtures",
]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="motivica", description="Motivic, topological and p-adic zeta functions from resolution data.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="resolution JSON file, or a directory of them")
    p.add_argument("--fixture", help="built-in resolution, e.g. cuspA or xN(3)")
    p.add_argument("--mode", choices=["local", "global"], default="global")
    p.add_argument("--order", type=int, default=None, help="truncation order K")
    p.add_argument("--format", choices=["text", "json", "latex"], default="text")
    p.add_argument("--q", type=int, default=None, help="specialize q (igusa)")
    p.add_argument("--n", type=int, default=None, help="iterate of the monodromy (acampo)")
    p.add_argument("--with", dest="other", help="second resolution for convolve (file or fixture name)")
    p.add_argument("--series", help="first measure as a series literal (convolve)")
    p.add_argument("--with-series", dest="other_series", help="second measure as a series literal (convolve)")
    p.add_argument("--at-infinity", action="store_true", help="convolve: value at infinity of a massless pair")
    p.add_argument("--reduced", action="store_true", help="convolve: use the massless measures F(1,1) - S(f)")
    p.add_argument("--group", help="group JSON file or inline JSON (mckay)")
    p.add_argument("--epoly", help="class as a polynomial in u, v, L (kapranov)")
    p.add_argument("--genus", type=int, help="smooth projective curve of this genus (kapranov)")
    p.add_argument("--motivic", action="store_true", help="nearby: print S(f) instead of its value at infinity")
    p.add_argument("--closed", action="store_true", help="pushforward via closed strata")
    return p


def _load_text(path: Path) -> ResolutionData:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_resolution(text)


def _resolve(name_or_path: str) -> ResolutionData:
    p = Path(name_or_path)
    if p.is_file():
        res = _load_text(p)
        validate_resolution(res)
        return res
    return builtin_fixture(name_or_path)


def _inputs(args) -> list[tuple[str | None, ResolutionData | Exception]]:
    """(header, data) pairs; per-file failures are carried instead of raised."""
    if args.input and args.fixture:
        raise InputError("give either --input or --fixture, not both")
    if args.fixture:
        return [(None, builtin_fixture(args.fixture))]
    if not args.input:
        raise InputError("need --input FILE or --fixture NAME")
    path = Path(args.input)
    if path.is_dir():
        files = sorted(path.glob("*.json"))
        if not files:
            raise InputError(f"no .json files in {path}")
        out = []
        for f in files:
            try:
                res = _load_text(f)
                if args.command != "validate":
                    validate_resolution(res)
                out.append((f.name, res))
            except MotivicaError as exc:
                out.append((f.name, exc))
        return out
    res = _load_text(path)
    if args.command != "validate":
        validate_resolution(res)
    return [(None, res)]


def _measure(args, res: ResolutionData | None, literal: str | None) -> convolution.MeasureZeta:
    if literal:
        return convolution.MeasureZeta(parse_series(literal, 1), "series literal")
    if res is None:
        raise InputError("convolve needs a resolution or --series for each measure")
    return convolution.reduced_measure(res) if args.reduced else convolution.nearby_measure(res)


def _group(spec: str) -> mckay.AbelianAction:
    p = Path(spec)
    if p.is_file():
        return mckay.parse_group(p.read_text(encoding="utf-8"))
    return mckay.parse_group(spec)


def compute(args, res: ResolutionData | None):
    cmd = args.command
    if cmd == "zeta":
        return zeta.contact_series(res, args.mode)
    if cmd == "nearby":
        return zeta.motivic_nearby(res) if args.motivic else zeta.nearby_class(res)
    if cmd == "vanishing":
        return zeta.vanishing_class(res)
    if cmd == "spectrum":
        return spectrum_poly(spe(zeta.vanishing_class(res)))
    if cmd == "topzeta":
        return zeta.topological_zeta(res, args.mode)
    if cmd == "igusa":
        return zeta.igusa_zeta(res, args.q, args.mode)
    if cmd == "dlzeta":
        return zeta.denef_loeser_I(res, args.mode)
    if cmd == "monodromy":
        return zeta.monodromy_zeta(res)
    if cmd == "acampo":
        if args.n is not None:
            return zeta.acampo_lefschetz(res, args.n)
        return Report({f"n={n}": zeta.acampo_lefschetz(res, n) for n in range(1, (args.order or 12) + 1)})
    if cmd == "pushforward":
        cls, ev = zeta.measure_pushforward(res, "closed" if args.closed else "open", args.mode)
        return Report({"class": cls, "euler_value": ev})
    if cmd == "convolve":
        a = _measure(args, res, args.series)
        other = _resolve(args.other) if args.other else None
        b = _measure(args, other, args.other_series)
        if args.at_infinity:
            return convolution.ts_infinity(a, b)
        return convolution.convolve(a, b, args.order or 8).coefficients(args.order or 8)
    if cmd == "mckay":
        if not args.group:
            raise InputError("mckay needs --group")
        return mckay.mckay_compare(_group(args.group), res)
    if cmd == "validate":
        report = validate_resolution(res)
        return str(report)
    raise AssertionError(cmd)


def _kapranov(args):
    K = args.order or 8
    if args.genus is not None:
        e = kapranov.curve_class(args.genus)
    elif args.epoly:
        e = parse_epoly(args.epoly)
    else:
        raise InputError("kapranov needs --epoly or --genus")
    fields = {"class": e, "coefficients": kapranov.kapranov_series(e, K)}
    if args.genus is not None:
        fields["numerator"] = kapranov.curve_numerator(e, K)
        fields["rational"] = kapranov.verify_rational(fields["coefficients"], [(0, 0), (1, 1)])
        fields["functional_equation"] = kapranov.functional_equation_check(e, K)
    return Report(fields)


def _fixtures(args):
    if args.fixture:
        return builtin_fixture(args.fixture)
    return "\n".join(NAMES)


def _emit(value, fmt: str, out) -> None:
    out.write(render(value, fmt) + "\n")


def _fail(exc: MotivicaError, err, where: str | None = None) -> int:
    prefix = f"{where}: " if where else ""
    if isinstance(exc, ValidationError) and len(exc.problems) > 1:
        err.write(f"{prefix}{type(exc).__name__}: {len(exc.problems)} problems\n")
        for p in exc.problems:
            err.write(f"  - {p}\n")
    else:
        err.write(f"{prefix}{type(exc).__name__}: {exc}\n")
    return exc.exit_code


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        if args.command == "kapranov":
            _emit(_kapranov(args), args.format, out)
            return 0
        if args.command == "fixtures":
            _emit(_fixtures(args), args.format, out)
            return 0
        if args.command == "convolve" and args.series and not (args.input or args.fixture):
            _emit(compute(args, None), args.format, out)
            return 0
        batch = _inputs(args)
    except MotivicaError as exc:
        return _fail(exc, err)
    status = 0
    for header, res in batch:
        if header is not None:
            out.write(f"== {header} ==\n")
        if isinstance(res, MotivicaError):
            status = max(status, _fail(res, err, header))
            continue
        try:
            _emit(compute(args, res), args.format, out)
        except MotivicaError as exc:
            status = max(status, _fail(exc, err, header))
    return status


def main() -> None:
    sys.exit(run())
