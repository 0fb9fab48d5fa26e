"""Text grammar for polynomials, classes and series.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | <juxtaposition>) unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' exponent)?
    atom   := INT | VAR | '(' expr ')' | 'F(' rat ',' INT (',' INT)* ')'
            | '{' char ':' expr (',' char ':' expr)* '}'

Variables are single letters (u v L t q s w) or T, T1, T2, ...; ``L`` means u*v.
Exponents are signed integers or a parenthesised rational such as ``(2/3)``.
"""
from __future__ import annotations

import re
from fractions import Fraction

import sympy

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|(T\d*|[A-Za-z])|(.))")
VARIABLES = set("uvLtqswT")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        if m.group(1):
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("id", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^(),{}:":
                raise ParseError(f"unexpected character {ch!r} at column {m.start(3) + 1}")
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str):
        _, val, pos = self.peek()
        raise ParseError(f"{msg} at column {pos + 1} (near {val!r}) in {self.text!r}")

    def expect(self, op: str):
        kind, val, _ = self.peek()
        if kind != "op" or val != op:
            self.error(f"expected {op!r}")
        self.take()

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error("trailing input")
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                node = ("add" if val == "+" else "sub", node, self.term())
            else:
                return node

    def _starts_atom(self) -> bool:
        kind, val, _ = self.peek()
        return kind in ("int", "id") or (kind == "op" and val in "({")

    def term(self):
        node = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                node = ("mul" if val == "*" else "div", node, self.unary())
            elif self._starts_atom():
                if kind == "int" and node[0] == "int":
                    self.error("two adjacent numbers")
                node = ("mul", node, self.unary())
            else:
                return node

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return ("neg", self.unary())
        if kind == "op" and val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            return ("pow", base, self.exponent())
        return base

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        kind, val, _ = self.peek()
        if kind != "int":
            self.error("expected an integer")
        self.take()
        return sign * int(val)

    def rational(self) -> Fraction:
        n = self.signed_int()
        if self.peek()[:2] == ("op", "/"):
            self.take()
            kind, val, _ = self.peek()
            if kind != "int" or int(val) == 0:
                self.error("expected a positive denominator")
            self.take()
            return Fraction(n, int(val))
        return Fraction(n)

    def exponent(self) -> Fraction:
        if self.peek()[:2] == ("op", "("):
            self.take()
            e = self.rational()
            self.expect(")")
            return e
        return Fraction(self.signed_int())

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "int":
            self.take()
            return ("int", int(val))
        if kind == "id":
            self.take()
            if val == "F" and self.peek()[:2] == ("op", "("):
                self.take()
                nu = self.rational()
                N = []
                while self.peek()[:2] == ("op", ","):
                    self.take()
                    N.append(self.signed_int())
                self.expect(")")
                if not N:
                    self.error("factor needs a multiplicity vector")
                return ("factor", nu, tuple(N))
            if val not in VARIABLES and not re.fullmatch(r"T\d+", val):
                raise ParseError(f"unknown variable {val!r} in {self.text!r}")
            return ("var", val)
        if kind == "op" and val == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if kind == "op" and val == "{":
            self.take()
            parts = []
            while True:
                ch = self.character()
                self.expect(":")
                parts.append((ch, self.expr()))
                if self.peek()[:2] == ("op", ","):
                    self.take()
                    continue
                self.expect("}")
                return ("eqclass", tuple(parts))
        self.error("expected a number, variable or parenthesis")

    def character(self) -> Fraction:
        kind, val, _ = self.peek()
        if kind != "int":
            self.error("expected a character such as 0 or 1/2")
        self.take()
        num, den = int(val), 1
        if self.peek()[:2] == ("op", "/"):
            self.take()
            kind, val, _ = self.peek()
            if kind != "int":
                self.error("expected a denominator")
            self.take()
            den = int(val)
        return parse_character(f"{num}/{den}" if den != 1 else str(num))


def parse_character(text: str) -> Fraction:
    """'0', '1/2', '2/3' -> Fraction in [0, 1).  Rejects unreduced fractions."""
    m = re.fullmatch(r"\s*(\d+)(?:\s*/\s*(\d+))?\s*", str(text))
    if not m:
        raise ParseError(f"malformed character {text!r}")
    a = int(m.group(1))
    n = int(m.group(2)) if m.group(2) else 1
    if n == 0:
        raise ParseError(f"zero denominator in character {text!r}")
    if m.group(2) and (Fraction(a, n).denominator != n or n == 1):
        raise ParseError(f"unreduced character {text!r}")
    if not 0 <= a < n and not (a == 0 and n == 1):
        raise ParseError(f"character {text!r} is not in [0, 1)")
    return Fraction(a, n)


def parse_ast(text: str):
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# evaluation into concrete rings

class Ring:
    """Maps AST leaves into a value domain; Python operators do the rest."""

    allow_division = False

    def num(self, n: int):
        return n

    def var(self, name: str):
        raise ParseError(f"variable {name!r} is not allowed here")

    def power(self, base, e: Fraction, node):
        if e.denominator == 1 and e >= 0:
            return base ** int(e)
        try:
            return base ** e
        except (ValueError, TypeError) as exc:
            raise ParseError(f"cannot raise to the power {e}: {exc}") from None

    def factor(self, nu, N):
        raise ParseError("factors F(nu,N) are not allowed here")

    def eqclass(self, parts):
        raise ParseError("equivariant literals are not allowed here")

    def div(self, a, b):
        raise ParseError("division is not allowed here")


def evaluate(node, ring: Ring):
    tag = node[0]
    if tag == "int":
        return ring.num(node[1])
    if tag == "var":
        return ring.var(node[1])
    if tag == "add":
        return evaluate(node[1], ring) + evaluate(node[2], ring)
    if tag == "sub":
        return evaluate(node[1], ring) - evaluate(node[2], ring)
    if tag == "mul":
        return evaluate(node[1], ring) * evaluate(node[2], ring)
    if tag == "div":
        return _divide(evaluate(node[1], ring), node[2], ring)
    if tag == "neg":
        return -evaluate(node[1], ring)
    if tag == "pow":
        return ring.power(evaluate(node[1], ring), node[2], node[1])
    if tag == "factor":
        return ring.factor(node[1], node[2])
    if tag == "eqclass":
        return ring.eqclass([(ch, evaluate(sub, ring)) for ch, sub in node[1]])
    raise ParseError(f"bad node {tag}")


def _divide(a, den, ring: Ring):
    # a/(b*c) and a/b^k divide factor by factor, so only irreducible pieces reach ring.div
    if den[0] == "mul":
        return _divide(_divide(a, den[1], ring), den[2], ring)
    if den[0] == "pow" and den[2].denominator == 1 and den[2] > 0:
        for _ in range(int(den[2])):
            a = _divide(a, den[1], ring)
        return a
    return ring.div(a, evaluate(den, ring))


class EPolyRing(Ring):
    def __init__(self):
        from .exactring import EPoly

        self.E = EPoly
        self.vars = {"u": EPoly.mono(1, 0), "v": EPoly.mono(0, 1), "L": EPoly.Lpow(1)}

    def num(self, n):
        return self.E.const(n)

    def var(self, name):
        if name not in self.vars:
            raise ParseError(f"variable {name!r} is not allowed in a class polynomial")
        return self.vars[name]


class EqClassRing(EPolyRing):
    def eqclass(self, parts):
        from .grothendieck import EqClass

        out = EqClass()
        for ch, val in parts:
            out = out + EqClass({ch: val})
        return out


class SeriesRing(EqClassRing):
    def __init__(self, r: int = 1):
        super().__init__()
        self.r = r

    def var(self, name):
        from .exactring import MotivicRational

        if name == "T" and self.r == 1:
            return MotivicRational.T()
        m = re.fullmatch(r"T(\d+)", name)
        if m and 1 <= int(m.group(1)) <= self.r:
            return MotivicRational.T(int(m.group(1)) - 1, self.r)
        return super().var(name)

    def power(self, base, e, node):
        from .exactring import MotivicRational

        if node[0] == "var" and node[1].startswith("T") and e.denominator == 1:
            nm = node[1]
            i = 0 if nm == "T" else int(nm[1:]) - 1
            return MotivicRational.T(i, self.r, int(e))
        return super().power(base, e, node)

    def div(self, a, b):
        from .exactring import MotivicRational

        if not isinstance(b, MotivicRational):
            b = MotivicRational.constant(b, self.r)
        return a * b.reciprocal()

    def factor(self, nu, N):
        from .exactring import MotivicRational

        if len(N) != self.r:
            raise ParseError(f"factor F({nu},{N}) does not match r = {self.r}")
        return MotivicRational.factor(nu, N)


class CountRing(EPolyRing):
    """Point counts: polynomials in q, stored as polynomials in L."""

    def var(self, name):
        if name != "q":
            raise ParseError(f"variable {name!r} is not allowed in a point count")
        return self.E.Lpow(1)


class SympyRing(Ring):
    allow_division = True

    def __init__(self, allowed: str = "stqw"):
        self.allowed = allowed

    def num(self, n):
        return sympy.Integer(n)

    def var(self, name):
        if name not in self.allowed:
            raise ParseError(f"variable {name!r} is not allowed here")
        return sympy.Symbol(name)

    def power(self, base, e, node):
        return base ** sympy.Rational(e.numerator, e.denominator)

    def div(self, a, b):
        if b == 0:
            raise ParseError("division by zero")
        return a / b


def _run(text: str, ring: Ring):
    try:
        return evaluate(parse_ast(text), ring)
    except ParseError:
        raise
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"{exc} in {text!r}") from None


def parse_epoly(text: str):
    from .exactring import EPoly

    val = _run(text, EPolyRing())
    if not isinstance(val, EPoly):
        raise ParseError(f"{text!r} is not a class polynomial")
    return val


def parse_eqclass(text: str):
    from .exactring import EPoly
    from .grothendieck import EqClass

    val = _run(text, EqClassRing())
    if isinstance(val, EPoly):
        return EqClass.trivial(val)
    return val


def parse_series(text: str, r: int = 1):
    from .exactring import MotivicRational

    val = _run(text, SeriesRing(r))
    if not isinstance(val, MotivicRational):
        val = MotivicRational.constant(val, r)
    return val


def parse_count(text: str):
    from .exactring import EPoly

    val = _run(text, CountRing())
    if not isinstance(val, EPoly):
        raise ParseError(f"{text!r} is not a polynomial in q")
    return val


def parse_sympy(text: str, allowed: str = "stqw"):
    return _run(text, SympyRing(allowed))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed rational {text!r}") from None
