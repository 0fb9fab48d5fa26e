"""Both sides of the McKay correspondence for finite abelian diagonal actions."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, SchemaError, ValidationError
from .exactring import EPoly
from .resolution import ResolutionData
from .zeta import _weighted_strata_sum


@dataclass(frozen=True)
class AbelianAction:
    """Diagonal action of a finite abelian group of exponent dividing m on d-space.

    ``elements`` are exponent vectors a; g acts by diag(zeta_m^a_1, ..., zeta_m^a_d).
    """

    m: int
    d: int
    elements: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, m: int, d: int, generators) -> "AbelianAction":
        if m < 1 or d < 1:
            raise ValidationError("m and dim must be positive")
        gens = []
        for g in generators:
            if len(g) != d:
                raise ValidationError(f"generator {list(g)} does not have length {d}")
            gens.append(tuple(x % m for x in g))
        zero = (0,) * d
        seen = {zero}
        frontier = [zero]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = tuple((a + b) % m for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        act = cls(m, d, tuple(sorted(seen)))
        act.validate()
        return act

    def validate(self) -> None:
        els = set(self.elements)
        zero = (0,) * self.d
        problems = []
        if zero not in els:
            problems.append("group does not contain the identity")
        for x in els:
            if len(x) != self.d or any(not 0 <= a < self.m for a in x):
                problems.append(f"element {list(x)} is not reduced mod {self.m}")
            for y in els:
                if tuple((a + b) % self.m for a, b in zip(x, y)) not in els:
                    problems.append("elements are not closed under addition")
                    break
        if len(els) != len(self.elements):
            problems.append("duplicate elements")
        if problems:
            raise ValidationError(sorted(set(problems)))

    @property
    def order(self) -> int:
        return len(self.elements)


def parse_group(document) -> AbelianAction:
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(document, dict):
        raise SchemaError("group document must be an object")
    for key in ("m", "dim", "generators"):
        if key not in document:
            raise SchemaError(f"group document: missing field {key!r}")
    gens = document["generators"]
    if not isinstance(gens, list) or not all(isinstance(g, list) and all(isinstance(a, int) for a in g) for g in gens):
        raise SchemaError("generators must be a list of integer lists")
    return AbelianAction.from_generators(int(document["m"]), int(document["dim"]), gens)


def age(g, m: int) -> Fraction:
    return sum((Fraction(a % m, m) for a in g), Fraction(0))


def orbifold_weight(G: AbelianAction) -> EPoly:
    """Sum over elements of L^(dim of fixed space + age)."""
    out = EPoly()
    for g in G.elements:
        fix = sum(1 for a in g if a % G.m == 0)
        out = out + EPoly.Lpow(fix + age(g, G.m))
    return out


def stringy_invariant(res: ResolutionData) -> EPoly:
    """Sum_I [E_I] prod (L-1)/(L^nu*_i - 1) over the global strata."""
    return _weighted_strata_sum(res, res.strata_for("global"))


@dataclass(frozen=True)
class McKayReport:
    equal: bool
    difference: EPoly
    orbifold: EPoly
    stringy: EPoly

    def __str__(self):
        return (f"equal: {'true' if self.equal else 'false'}\n"
                f"orbifold: {self.orbifold}\nstringy: {self.stringy}\ndifference: {self.difference}")


def mckay_compare(G: AbelianAction, res: ResolutionData) -> McKayReport:
    if G.d != res.dim:
        raise ValidationError(f"group acts on dimension {G.d}, resolution has dimension {res.dim}")
    w = orbifold_weight(G)
    s = stringy_invariant(res)
    diff = w - s
    return McKayReport(diff.is_zero(), diff, w, s)


def cyclic_action(m: int, weights) -> AbelianAction:
    """The cyclic group (1/m)(w_1, ..., w_d)."""
    return AbelianAction.from_generators(m, len(weights), [list(weights)])
