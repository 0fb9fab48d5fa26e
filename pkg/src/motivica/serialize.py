"""Text, JSON and LaTeX forms of every value the CLI prints.

JSON documents are ``{"kind": ..., "value": ...}`` with the canonical text form
as the value, so ``from_json(to_json(x)) == x`` reduces to the text parsers.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import SchemaError
from .exactring import (
    EPoly, MotivicRational, QTRational, SRational, TRational, UPoly, fmt_exp,
)
from .grothendieck import EqClass
from .mckay import McKayReport
from .parse import parse_eqclass, parse_epoly, parse_rational, parse_series, parse_sympy
from .resolution import ResolutionData, parse_resolution, serialize_resolution, to_document


@dataclass
class Report:
    """Named fields, printed one per line in insertion order."""

    fields: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Report) or list(self.fields) != list(other.fields):
            return False
        return all(_equal(self.fields[k], other.fields[k]) for k in self.fields)


def _equal(a, b) -> bool:
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(_equal(x, y) for x, y in zip(a, b))
    return a == b


def _is_eq_series(x: MotivicRational) -> bool:
    return any(isinstance(c, EqClass) for num, _ in x.terms for c in num.values())


def kind_of(x) -> str:
    if isinstance(x, bool):
        return "boolean"
    if isinstance(x, str):
        return "text"
    if isinstance(x, int):
        return "integer"
    if isinstance(x, Fraction):
        return "rational"
    if isinstance(x, EPoly):
        return "epoly"
    if isinstance(x, EqClass):
        return "eqclass"
    if isinstance(x, MotivicRational):
        return "eqseries" if _is_eq_series(x) else "series"
    if isinstance(x, SRational):
        return "srational"
    if isinstance(x, TRational):
        return "trational"
    if isinstance(x, QTRational):
        return "qtrational"
    if isinstance(x, UPoly):
        return "upoly"
    if isinstance(x, McKayReport):
        return "mckay"
    if isinstance(x, Report):
        return "report"
    if isinstance(x, ResolutionData):
        return "resolution"
    if isinstance(x, (list, tuple)):
        return "list"
    raise TypeError(f"no serialized form for {type(x).__name__}")


def to_text(x) -> str:
    k = kind_of(x)
    if k == "boolean":
        return "true" if x else "false"
    if k == "list":
        return "\n".join(f"[{i}] {to_text(v)}" for i, v in enumerate(x))
    if k == "report":
        lines = []
        for name, v in x.fields.items():
            body = to_text(v)
            lines.append(f"{name}:\n  " + body.replace("\n", "\n  ") if "\n" in body else f"{name}: {body}")
        return "\n".join(lines)
    if k == "resolution":
        return serialize_resolution(x)
    return str(x)


def _payload(x):
    k = kind_of(x)
    if k == "list":
        return {"kind": "list", "value": [_payload(v) for v in x]}
    if k == "report":
        return {"kind": "report", "value": {n: _payload(v) for n, v in x.fields.items()}}
    if k == "mckay":
        return {"kind": "mckay", "value": {"equal": x.equal, "orbifold": str(x.orbifold),
                                           "stringy": str(x.stringy), "difference": str(x.difference)}}
    if k == "boolean":
        return {"kind": k, "value": bool(x)}
    if k == "text":
        return {"kind": k, "value": x}
    if k == "resolution":
        return {"kind": k, "value": to_document(x)}
    if k == "integer":
        return {"kind": k, "value": int(x)}
    out = {"kind": k, "value": str(x)}
    if k in ("series", "eqseries"):
        out["r"] = x.r
    if k == "upoly":
        out["var"] = x.var
    return out


def to_json(x) -> str:
    return json.dumps(_payload(x), sort_keys=True, indent=2)


def _upoly_from_text(text: str, var: str) -> UPoly:
    sym = sympy.Symbol(var)
    expr = sympy.expand(parse_sympy(text, var))
    terms: dict = {}
    for t in sympy.Add.make_args(expr):
        c, e = t.as_coeff_exponent(sym)
        if c.free_symbols:
            raise SchemaError(f"{text!r} is not a polynomial in {var}")
        c = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
        e = Fraction(int(sympy.numer(e)), int(sympy.denom(e)))
        terms[e] = terms.get(e, 0) + (c.numerator if c.denominator == 1 else c)
    return UPoly(var, terms)


def _from_payload(d):
    if not isinstance(d, dict) or "kind" not in d or "value" not in d:
        raise SchemaError("serialized value needs 'kind' and 'value'")
    k, v = d["kind"], d["value"]
    if k == "list":
        return [_from_payload(e) for e in v]
    if k == "report":
        return Report({n: _from_payload(e) for n, e in v.items()})
    if k == "mckay":
        return McKayReport(bool(v["equal"]), parse_epoly(v["difference"]),
                           parse_epoly(v["orbifold"]), parse_epoly(v["stringy"]))
    if k in ("boolean", "integer", "text"):
        return v
    if k == "resolution":
        return parse_resolution(v)
    if k == "rational":
        return parse_rational(v)
    if k == "epoly":
        return parse_epoly(v)
    if k == "eqclass":
        return parse_eqclass(v)
    if k in ("series", "eqseries"):
        return parse_series(v, int(d.get("r", 1)))
    if k == "srational":
        return SRational(parse_sympy(v, "s"))
    if k == "trational":
        return TRational(parse_sympy(v, "t"))
    if k == "qtrational":
        return QTRational(parse_sympy(v, "qt"))
    if k == "upoly":
        return _upoly_from_text(v, d.get("var", "t"))
    raise SchemaError(f"unknown kind {k!r}")


def from_json(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}") from None
    return _from_payload(d)


def _series_latex(x: MotivicRational) -> str:
    def tvar(i):
        return "T" if x.r == 1 else f"T_{{{i + 1}}}"

    def coeff(c):
        return c.latex() if hasattr(c, "latex") else str(c)

    out = []
    for num, fs in x.terms:
        pieces = []
        for m in sorted(num, key=lambda m: (sum(m), m)):
            mono = "".join(f"{tvar(i)}^{{{e}}}" if e != 1 else tvar(i) for i, e in enumerate(m) if e)
            pieces.append(f"\\left({coeff(num[m])}\\right){mono}")
        s = " + ".join(pieces)
        for (nu, N), k in sorted(Counter(fs).items()):
            t = "".join(f"{tvar(i)}^{{{-n}}}" for i, n in enumerate(N) if n)
            f = f"\\left(\\mathbb{{L}}^{{{fmt_exp(nu)}}}{t}-1\\right)^{{{-k}}}"
            s = f"\\left({s}\\right){f}" if len(pieces) > 1 else s + f
        out.append(s)
    return " + ".join(out) if out else "0"


def to_latex(x) -> str:
    k = kind_of(x)
    if k == "list":
        return " \\\\\n".join(to_latex(v) for v in x)
    if k == "report":
        return " \\\\\n".join(f"\\text{{{n}}}: {to_latex(v)}" for n, v in x.fields.items())
    if k == "mckay":
        return to_latex(Report({"equal": x.equal, "orbifold": x.orbifold,
                                "stringy": x.stringy, "difference": x.difference}))
    if k == "boolean":
        return "\\text{true}" if x else "\\text{false}"
    if k == "integer":
        return str(x)
    if k == "text":
        return "\\text{" + x.replace("\n", "} \\\\ \\text{") + "}"
    if k == "resolution":
        return "\\begin{verbatim}\n" + serialize_resolution(x) + "\n\\end{verbatim}"
    if k == "rational":
        return str(x) if x.denominator == 1 else f"\\frac{{{x.numerator}}}{{{x.denominator}}}"
    if k in ("series", "eqseries"):
        return _series_latex(x)
    return x.latex()


def render(x, fmt: str) -> str:
    if fmt == "json":
        return to_json(x)
    if fmt == "latex":
        return to_latex(x)
    return to_text(x)
