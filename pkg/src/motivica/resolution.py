"""Combinatorial data of an embedded resolution with simple normal crossings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any

from .errors import MissingStratum, ParseError, SchemaError, ValidationError
from .exactring import EPoly
from .grothendieck import EqClass, char_str
from .parse import parse_character, parse_count, parse_epoly, parse_rational

AMBIENTS = ("affine", "quotient")


@dataclass(frozen=True)
class Component:
    id: str
    N: tuple[int, ...]
    nu: Fraction
    exceptional: bool = True


@dataclass(frozen=True)
class Cover:
    degree: int
    chars: EqClass


@dataclass(frozen=True)
class Stratum:
    components: frozenset[str]
    epoly: EPoly
    over_locus: bool
    count: EPoly | None = None
    cover: Cover | None = None

    def euler(self) -> int:
        return self.epoly.euler()


@dataclass(frozen=True)
class ResolutionData:
    r: int
    dim: int
    components: tuple[Component, ...]
    strata: tuple[Stratum, ...]
    ambient: str = "affine"
    name: str = ""

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def comps(self, s: Stratum) -> list[Component]:
        return [self.component(c) for c in sorted(s.components)]

    def has_global_strata(self) -> bool:
        return any(not s.components for s in self.strata)

    def strata_for(self, mode: str) -> list[Stratum]:
        if mode == "local":
            out = [s for s in self.strata if s.over_locus]
            if not out:
                raise MissingStratum("no strata lie over the distinguished locus")
            return out
        if mode == "global":
            if not self.has_global_strata():
                raise MissingStratum("global mode needs the open stratum (empty component set)")
            return list(self.strata)
        raise ValueError(f"mode must be 'local' or 'global', not {mode!r}")

    def N_of(self, s: Stratum) -> int:
        """gcd of the first-variable multiplicities over the stratum's components."""
        g = 0
        for c in self.comps(s):
            g = gcd(g, c.N[0])
        return g


# ---------------------------------------------------------------------------
# JSON documents

def _need(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    return obj[key]


def _typed(val, typ, where: str):
    if typ is int and isinstance(val, bool):
        raise SchemaError(f"{where}: expected int")
    if not isinstance(val, typ):
        raise SchemaError(f"{where}: expected {getattr(typ, '__name__', typ)}")
    return val


def _field_parse(fn, text, where: str):
    try:
        return fn(text)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def parse_resolution(document: str | dict) -> ResolutionData:
    """Build ResolutionData from a JSON string or an already-decoded object."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    r = _typed(_need(document, "r", "document"), int, "r")
    dim = _typed(_need(document, "dim", "document"), int, "dim")
    ambient = document.get("ambient", "affine")
    if ambient not in AMBIENTS:
        raise SchemaError(f"ambient: expected one of {AMBIENTS}")
    comps = []
    for i, c in enumerate(_typed(_need(document, "components", "document"), list, "components")):
        where = f"components[{i}]"
        cid = _typed(_need(c, "id", where), str, f"{where}.id")
        N = _typed(_need(c, "N", where), list, f"{where}.N")
        for n in N:
            _typed(n, int, f"{where}.N")
        nu = _need(c, "nu", where)
        nu = _field_parse(parse_rational, str(nu), f"{where}.nu")
        exc = _typed(c.get("exceptional", True), bool, f"{where}.exceptional")
        comps.append(Component(cid, tuple(N), nu, exc))
    strata = []
    for i, s in enumerate(_typed(_need(document, "strata", "document"), list, "strata")):
        where = f"strata[{i}]"
        ids = _typed(_need(s, "components", where), list, f"{where}.components")
        for x in ids:
            _typed(x, str, f"{where}.components")
        ep = _field_parse(parse_epoly, _typed(_need(s, "epoly", where), str, f"{where}.epoly"), f"{where}.epoly")
        over = _typed(_need(s, "over_locus", where), bool, f"{where}.over_locus")
        count = None
        if s.get("count") is not None:
            count = _field_parse(parse_count, _typed(s["count"], str, f"{where}.count"), f"{where}.count")
        cover = None
        if s.get("cover") is not None:
            cv = s["cover"]
            deg = _typed(_need(cv, "degree", f"{where}.cover"), int, f"{where}.cover.degree")
            chars = _typed(_need(cv, "chars", f"{where}.cover"), dict, f"{where}.cover.chars")
            parts = {}
            for k, txt in chars.items():
                a = _field_parse(parse_character, k, f"{where}.cover.chars key")
                if a in parts:
                    raise ParseError(f"{where}.cover.chars: duplicate character {k!r}")
                parts[a] = _field_parse(parse_epoly, _typed(txt, str, f"{where}.cover.chars"), f"{where}.cover.chars[{k}]")
            cover = Cover(deg, EqClass(parts))
        strata.append(Stratum(frozenset(ids), ep, over, count, cover))
    return ResolutionData(r, dim, tuple(comps), tuple(strata), ambient, str(document.get("name", "")))


def _nu_str(nu: Fraction) -> str:
    return str(nu)


def to_document(res: ResolutionData) -> dict:
    doc: dict[str, Any] = {"r": res.r, "dim": res.dim}
    if res.name:
        doc["name"] = res.name
    if res.ambient != "affine":
        doc["ambient"] = res.ambient
    doc["components"] = [
        {"id": c.id, "N": list(c.N), "nu": _nu_str(c.nu), "exceptional": c.exceptional}
        for c in res.components
    ]
    strata = []
    for s in res.strata:
        d: dict[str, Any] = {"components": sorted(s.components), "epoly": str(s.epoly), "over_locus": s.over_locus}
        if s.count is not None:
            d["count"] = str(s.count.count())
        if s.cover is not None:
            d["cover"] = {
                "degree": s.cover.degree,
                "chars": {char_str(a): str(e) for a, e in s.cover.chars.items()},
            }
        strata.append(d)
    doc["strata"] = strata
    return doc


def serialize_resolution(res: ResolutionData) -> str:
    return json.dumps(to_document(res), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    warnings: list[str] = field(default_factory=list)
    unavailable: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return True

    def __str__(self):
        lines = ["valid: true"]
        lines += [f"warning: {w}" for w in self.warnings]
        if self.unavailable:
            lines.append("unavailable: " + ", ".join(self.unavailable))
        return "\n".join(lines)


def _label(s: Stratum) -> str:
    return "{" + ",".join(sorted(s.components)) + "}"


def validate_resolution(res: ResolutionData) -> ValidationReport:
    problems: list[str] = []
    report = ValidationReport()
    if res.r < 0 or res.dim < 1:
        problems.append("r must be >= 0 and dim >= 1")
    ids = [c.id for c in res.components]
    if len(set(ids)) != len(ids):
        problems.append("component ids are not unique")
    for c in res.components:
        if len(c.N) != res.r:
            problems.append(f"component {c.id}: N has length {len(c.N)}, expected r = {res.r}")
        if any(n < 0 for n in c.N):
            problems.append(f"component {c.id}: negative multiplicity")
        if res.r and not any(c.N):
            problems.append(f"component {c.id}: N is zero")
        if c.nu <= 0:
            problems.append(f"component {c.id}: nu must be positive")
    seen = set()
    for s in res.strata:
        lab = _label(s)
        if s.components in seen:
            problems.append(f"stratum {lab} appears twice")
        seen.add(s.components)
        unknown = s.components - set(ids)
        if unknown:
            problems.append(f"stratum {lab}: unknown components {sorted(unknown)}")
            continue
        if not s.components and s.over_locus:
            problems.append("the open stratum cannot lie over the distinguished locus")
        if s.cover is not None:
            problems.extend(_check_cover(res, s, lab))
    if problems:
        raise ValidationError(problems)

    zeta_ready = res.r >= 1 and all(c.nu.denominator == 1 for c in res.components)
    if not res.has_global_strata():
        report.warnings.append("no open stratum: global mode unavailable")
        report.unavailable += ["pushforward", "stringy", "global zeta"]
    over = [s for s in res.strata if s.over_locus and s.components]
    if res.r == 1 and any(s.cover is None for s in over):
        report.warnings.append("over-locus strata without covers")
        report.unavailable += ["nearby", "vanishing", "spectrum", "motivic nearby fiber"]
    if zeta_ready and any(s.count is None for s in res.strata):
        report.warnings.append("strata without point counts")
        report.unavailable += ["igusa"]
    if res.r != 1:
        report.unavailable += ["nearby", "vanishing", "monodromy", "acampo", "igusa", "dlzeta"]
    report.unavailable = sorted(set(report.unavailable))
    return report


def _check_cover(res: ResolutionData, s: Stratum, lab: str) -> list[str]:
    out = []
    cv = s.cover
    if res.r != 1:
        return [f"stratum {lab}: covers are supported only for r = 1"]
    if not s.components:
        return [f"stratum {lab}: the open stratum carries no cover"]
    n = res.N_of(s)
    if cv.degree != n:
        out.append(f"stratum {lab}: cover degree {cv.degree} differs from N(I) = {n}")
    bad = [d for d in cv.chars.denominators() if cv.degree % d]
    if bad:
        out.append(f"stratum {lab}: characters of order {sorted(bad)} do not factor through mu_{cv.degree}")
    if cv.chars.augmentation() != s.epoly:
        out.append(f"stratum {lab}: cover quotient {cv.chars.augmentation()} differs from stratum class {s.epoly}")
    if cv.chars.euler() != cv.degree * s.epoly.euler():
        out.append(f"stratum {lab}: Euler characteristic of the cover is not degree times that of the stratum")
    return out


def load_resolution(path) -> ResolutionData:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    res = parse_resolution(text)
    validate_resolution(res)
    return res


def builtin_fixture(name: str) -> ResolutionData:
    from .fixtures import build

    res = build(name)
    validate_resolution(res)
    return res
