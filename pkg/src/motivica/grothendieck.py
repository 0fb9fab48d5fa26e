"""Classes with a good action of the profinite group of roots of unity, seen
through their character-graded E-polynomials.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .exactring import EPoly, L, ONE, UPoly, _exp, _join_terms


def character(x) -> Fraction:
    """Reduce to the representative in [0, 1)."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def char_str(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


class EqClass:
    """Finite map character -> EPoly; immutable."""

    __slots__ = ("_p",)

    def __init__(self, parts: Mapping | None = None):
        p: dict = {}
        for a, e in (parts or {}).items():
            a = character(a)
            e = EPoly.coerce(e)
            p[a] = p[a] + e if a in p else e
        self._p = {a: e for a, e in p.items() if e}

    @classmethod
    def _raw(cls, p: dict) -> "EqClass":
        obj = cls.__new__(cls)
        obj._p = p
        return obj

    @classmethod
    def trivial(cls, e) -> "EqClass":
        return cls({0: EPoly.coerce(e)})

    @classmethod
    def regular(cls, n: int, e: EPoly = ONE) -> "EqClass":
        """Class of mu_n acting on itself, times e."""
        return cls({Fraction(k, n): e for k in range(n)})

    @classmethod
    def coerce(cls, x) -> "EqClass":
        if isinstance(x, EqClass):
            return x
        return cls.trivial(x)

    def items(self):
        return sorted(self._p.items())

    @property
    def parts(self) -> dict:
        return dict(self._p)

    def characters(self) -> list[Fraction]:
        return sorted(self._p)

    def __getitem__(self, a) -> EPoly:
        return self._p.get(character(a), EPoly())

    def __bool__(self):
        return bool(self._p)

    def is_zero(self) -> bool:
        return not self._p

    def __eq__(self, other):
        if isinstance(other, (int, EPoly)):
            other = EqClass.trivial(other)
        if not isinstance(other, EqClass):
            return NotImplemented
        return self._p == other._p

    def __hash__(self):
        return hash(frozenset(self._p.items()))

    def __add__(self, other):
        if isinstance(other, (int, EPoly)):
            other = EqClass.trivial(other)
        if not isinstance(other, EqClass):
            return NotImplemented
        p = dict(self._p)
        for a, e in other._p.items():
            s = p[a] + e if a in p else e
            if s:
                p[a] = s
            else:
                p.pop(a, None)
        return EqClass._raw(p)

    __radd__ = __add__

    def __neg__(self):
        return EqClass._raw({a: -e for a, e in self._p.items()})

    def __sub__(self, other):
        if isinstance(other, (int, EPoly)):
            other = EqClass.trivial(other)
        if not isinstance(other, EqClass):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, EPoly)):
            if not other:
                return EqClass()
            return EqClass._raw({a: c for a, e in self._p.items() if (c := e * other)})
        if not isinstance(other, EqClass):
            return NotImplemented
        p: dict = {}
        for a, x in self._p.items():
            for b, y in other._p.items():
                g = character(a + b)
                p[g] = p[g] + x * y if g in p else x * y
        return EqClass._raw({g: e for g, e in p.items() if e})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = EqClass.trivial(1)
        for _ in range(n):
            out = out * self
        return out

    def map_parts(self, f: Callable[[EPoly], EPoly]) -> "EqClass":
        return EqClass({a: f(e) for a, e in self._p.items()})

    def involute(self) -> "EqClass":
        return EqClass._raw({character(-a): e for a, e in self._p.items()})

    def augmentation(self) -> EPoly:
        return self._p.get(Fraction(0), EPoly())

    def total(self) -> EPoly:
        """Underlying class, forgetting the action."""
        out = EPoly()
        for e in self._p.values():
            out = out + e
        return out

    def euler(self) -> int:
        return self.total().euler()

    def denominators(self) -> set[int]:
        return {a.denominator for a in self._p}

    def __str__(self):
        if not self._p:
            return "0"
        return "{" + ", ".join(f"{char_str(a)}: {e}" for a, e in self.items()) + "}"

    def __repr__(self):
        return f"EqClass({self})"

    def latex(self) -> str:
        if not self._p:
            return "0"
        body = ", ".join(f"{char_str(a)}\\mapsto {e.latex()}" for a, e in self.items())
        return f"\\{{{body}\\}}"


def eq_arith(a: EqClass, b: EqClass | None, op: str) -> EqClass:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "involute":
        return a.involute()
    raise ValueError(f"unknown operation {op!r}")


def augmentation(a: EqClass) -> EPoly:
    """Realization of passing to the orbit space: the invariant part."""
    return EqClass.coerce(a).augmentation()


def mapping_torus(a: EqClass) -> EPoly:
    return (L - 1) * augmentation(a)


U = EPoly.mono(1, 0)
V = EPoly.mono(0, 1)


def quasi_convolution(a: EqClass, b: EqClass) -> EqClass:
    a, b = EqClass.coerce(a), EqClass.coerce(b)
    out: dict = {}
    for al, x in a.items():
        for be, y in b.items():
            g = character(al + be)
            xy = x * y
            if al and be:
                if g == 0:
                    xy = xy * L
                elif al + be < 1:
                    xy = xy * V
                else:
                    xy = xy * U
            out[g] = out[g] + xy if g in out else xy
    return EqClass(out)


def join(a: EqClass, b: EqClass) -> EqClass:
    a, b = EqClass.coerce(a), EqClass.coerce(b)
    return EqClass.trivial((L - 1) * (a * b).augmentation()) - quasi_convolution(a, b)


def spe(a: EqClass) -> EPoly:
    """Formation of the spectrum: shift the alpha-part by (alpha, 1 - alpha)."""
    out = EPoly()
    for al, e in EqClass.coerce(a).items():
        out = out + (e if al == 0 else e * EPoly.mono(al, 1 - al))
    return out


def is_frac_hodge(h: EPoly) -> bool:
    return all(Fraction(p + q).denominator == 1 for p, q in h.terms)


def spectrum_poly(h: EPoly) -> UPoly:
    t: dict = {}
    for (p, _), c in h.items():
        t[p] = t.get(p, 0) + c
    return UPoly("t", t)
