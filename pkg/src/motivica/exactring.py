"""Exact arithmetic: fractional-exponent E-polynomials, the controlled-denominator
series ring, and rational functions in one or two auxiliary variables.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import gcd, lcm
from typing import Iterable, Mapping

import sympy

from .errors import NonDivisible, NonTateClass, NotRegularAtInfinity, ReconstructionFailed

Exp = int | Fraction


def _exp(x) -> Exp:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def fmt_exp(e: Exp) -> str:
    e = Fraction(e)
    if e.denominator == 1 and e >= 0:
        return str(e.numerator)
    return f"({e})"


def _power(var: str, e: Exp) -> str:
    if e == 1:
        return var
    return f"{var}^{fmt_exp(e)}"


def _join_terms(pieces: list[tuple[int | Fraction, str]]) -> str:
    """Render signed (coefficient, monomial) pairs; monomial '' means a constant."""
    if not pieces:
        return "0"
    out = []
    for i, (c, mono) in enumerate(pieces):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono == "":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}{mono}" if Fraction(a).denominator == 1 else f"({a}){mono}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(sign + body)
    return "".join(out)


class EPoly:
    """Laurent polynomial in u, v with rational exponents and integer coefficients.

    Immutable.  ``L`` is the monomial ``u*v``.
    """

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        t: dict = {}
        if terms:
            for (p, q), c in terms.items():
                if c:
                    k = (_exp(p), _exp(q))
                    t[k] = t.get(k, 0) + int(c)
            t = {k: c for k, c in t.items() if c}
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: dict) -> "EPoly":
        obj = cls.__new__(cls)
        obj._t = t
        obj._h = None
        return obj

    # constructors
    @classmethod
    def const(cls, c: int) -> "EPoly":
        return cls._raw({(0, 0): int(c)} if c else {})

    @classmethod
    def mono(cls, p: Exp = 0, q: Exp = 0, c: int = 1) -> "EPoly":
        return cls._raw({(_exp(p), _exp(q)): int(c)} if c else {})

    @classmethod
    def Lpow(cls, k: Exp, c: int = 1) -> "EPoly":
        return cls.mono(k, k, c)

    @classmethod
    def coerce(cls, x) -> "EPoly":
        if isinstance(x, EPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            return cls.const(x.numerator)
        raise TypeError(f"cannot coerce {x!r} to EPoly")

    # basic protocol
    def items(self):
        return self._t.items()

    @property
    def terms(self) -> dict:
        return dict(self._t)

    @property
    def denominator_bound(self) -> int:
        m = 1
        for p, q in self._t:
            m = lcm(m, Fraction(p).denominator, Fraction(q).denominator)
        return m

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, int):
            other = EPoly.const(other)
        if not isinstance(other, EPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    def __add__(self, other):
        if isinstance(other, int):
            other = EPoly.const(other)
        if not isinstance(other, EPoly):
            return NotImplemented
        if not other._t:
            return self
        t = dict(self._t)
        for k, c in other._t.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return EPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return EPoly._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = EPoly.const(other)
        if not isinstance(other, EPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return EPoly()
            return EPoly._raw({k: c * other for k, c in self._t.items()})
        if not isinstance(other, EPoly):
            return NotImplemented
        t: dict = {}
        for (p1, q1), c1 in self._t.items():
            for (p2, q2), c2 in other._t.items():
                k = (p1 + p2, q1 + q2)
                t[k] = t.get(k, 0) + c1 * c2
        return EPoly._raw({k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if isinstance(n, int) and n >= 0:
            out = EPoly.const(1)
            base = self
            while n:
                if n & 1:
                    out = out * base
                base = base * base
                n >>= 1
            return out
        if self.is_monomial():
            ((p, q), c), = self._t.items()
            n = Fraction(n)
            if c != 1 and not (n.denominator == 1 and c == -1):
                raise ValueError("fractional or negative power of a non-unit monomial")
            sign = c ** n.numerator if c == -1 else 1
            return EPoly.mono(p * n, q * n, sign)
        raise ValueError("negative or fractional power of a non-monomial")

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_unit(self) -> bool:
        return len(self._t) == 1 and abs(next(iter(self._t.values()))) == 1

    def inverse_unit(self) -> "EPoly":
        if not self.is_unit():
            raise ValueError("not a unit")
        ((p, q), c), = self._t.items()
        return EPoly.mono(-p, -q, c)

    def map_exponents(self, f) -> "EPoly":
        t: dict = {}
        for k, c in self._t.items():
            k2 = f(*k)
            t[k2] = t.get(k2, 0) + c
        return EPoly({k: c for k, c in t.items() if c})

    def adams(self, k: int) -> "EPoly":
        """u -> u^k, v -> v^k."""
        return EPoly._raw({(p * k, q * k): c for (p, q), c in self._t.items()})

    def subs_T_free(self):
        return self

    # realizations
    def euler(self) -> int:
        return sum(self._t.values())

    def weight(self) -> "UPoly":
        t: dict = {}
        for (p, q), c in self._t.items():
            t[p + q] = t.get(p + q, 0) + c
        return UPoly("w", t)

    def count(self, q=None):
        """Point-count realization uv -> q.  Requires a polynomial in uv."""
        t: dict = {}
        for (a, b), c in self._t.items():
            if a != b or Fraction(a).denominator != 1:
                raise NonTateClass(f"class {self} is not a polynomial in uv")
            t[a] = t.get(a, 0) + c
        poly = UPoly("q", t)
        return poly if q is None else poly.eval(q)

    def mod_L_minus_1(self) -> "UPoly":
        """Image in Z[u^(±1/m)] under uv -> 1."""
        t: dict = {}
        for (p, q), c in self._t.items():
            t[p - q] = t.get(p - q, 0) + c
        return UPoly("u", t)

    def is_tate(self) -> bool:
        return all(p == q for p, q in self._t)

    def total_degrees(self):
        return sorted({p + q for p, q in self._t})

    # text
    def sorted_terms(self):
        return sorted(self._t.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def __str__(self):
        pieces = []
        for (p, q), c in self.sorted_terms():
            if p == 0 and q == 0:
                mono = ""
            elif p == q:
                mono = _power("L", p)
            else:
                parts = [_power(x, e) for x, e in (("u", p), ("v", q)) if e != 0]
                mono = "*".join(parts)
            pieces.append((c, mono))
        return _join_terms(pieces)

    def __repr__(self):
        return f"EPoly({self})"

    def latex(self) -> str:
        pieces = []
        for (p, q), c in self.sorted_terms():
            if p == 0 and q == 0:
                mono = ""
            elif p == q:
                mono = _latex_power("\\mathbb{L}", p)
            else:
                mono = "".join(_latex_power(x, e) for x, e in (("u", p), ("v", q)) if e != 0)
            pieces.append((c, mono))
        return _join_terms(pieces)


def _latex_power(var: str, e: Exp) -> str:
    if e == 1:
        return var
    e = Fraction(e)
    s = str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"
    return f"{var}^{{{s}}}"


L = EPoly.Lpow(1)
ONE = EPoly.const(1)
ZERO = EPoly()


class UPoly:
    """Univariate Laurent polynomial with rational exponents and rational coefficients."""

    __slots__ = ("var", "_t")

    def __init__(self, var: str, terms: Mapping | None = None):
        self.var = var
        t: dict = {}
        for e, c in (terms or {}).items():
            if c:
                e = _exp(e)
                t[e] = t.get(e, 0) + c
        self._t = {e: _exp(c) for e, c in t.items() if c}

    def items(self):
        return self._t.items()

    def coeff(self, e) -> int | Fraction:
        return self._t.get(_exp(e), 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = UPoly(self.var, {0: other})
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.var == other.var and self._t == other._t

    def __hash__(self):
        return hash((self.var, frozenset(self._t.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = UPoly(self.var, {0: other})
        t = dict(self._t)
        for e, c in other._t.items():
            t[e] = t.get(e, 0) + c
        return UPoly(self.var, t)

    def __neg__(self):
        return UPoly(self.var, {e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return UPoly(self.var, {e: c * other for e, c in self._t.items()})
        t: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + c1 * c2
        return UPoly(self.var, t)

    def eval(self, x):
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self._t.items():
            e = Fraction(e)
            if e.denominator != 1:
                raise ValueError("cannot evaluate a fractional exponent exactly")
            total += c * x ** e.numerator
        return _exp(total)

    def __str__(self):
        pieces = []
        for e in sorted(self._t):
            pieces.append((self._t[e], "" if e == 0 else _power(self.var, e)))
        return _join_terms(pieces)

    def __repr__(self):
        return f"UPoly({self.var}: {self})"

    def latex(self) -> str:
        pieces = []
        for e in sorted(self._t):
            pieces.append((self._t[e], "" if e == 0 else _latex_power(self.var, e)))
        return _join_terms(pieces)


# ---------------------------------------------------------------------------
# exact division by polynomials in L

def _as_L_poly(d: EPoly) -> dict:
    out = {}
    for (p, q), c in d.items():
        if p != q:
            raise ValueError("divisor must be a polynomial in L")
        out[Fraction(p)] = c
    return out


def divide_exact(num, den: EPoly):
    """num / den where den is a polynomial in L (and num an EPoly or EqClass).

    Terms of num are grouped by u-v offset and residue of the L-exponent so each
    group is a univariate Laurent polynomial in x = L^(1/M).
    """
    if hasattr(num, "map_parts"):
        return num.map_parts(lambda e: divide_exact(e, den))
    dpoly = _as_L_poly(den)
    if not dpoly:
        raise ZeroDivisionError("division by zero")
    M = 1
    for e in dpoly:
        M = lcm(M, e.denominator)
    dx = {int(e * M): c for e, c in dpoly.items()}
    dlo = min(dx)
    dcoef = [0] * (max(dx) - dlo + 1)
    for e, c in dx.items():
        dcoef[e - dlo] = c
    groups: dict = {}
    for (p, q), c in num.items():
        qm = Fraction(q) * M
        k = qm.numerator // qm.denominator
        key = (Fraction(p) - Fraction(q), qm - k)
        groups.setdefault(key, {})[k] = c
    out: dict = {}
    for (off, res), g in groups.items():
        lo = min(g)
        coef = [0] * (max(g) - lo + 1)
        for e, c in g.items():
            coef[e - lo] = c
        quot = _poly_divide(coef, dcoef)
        if quot is None:
            raise NonDivisible(f"{num} is not divisible by {den}")
        for i, c in enumerate(quot):
            if c:
                qexp = Fraction(lo + i - dlo, M) + res / M
                out[(qexp + off, qexp)] = c
    return EPoly(out)


def _poly_divide(a: list, b: list):
    """Exact integer polynomial division (ascending coefficients) or None."""
    while b and b[-1] == 0:
        b = b[:-1]
    a = list(a)
    if len(a) < len(b):
        return None if any(a) else []
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        if c % lead:
            return None
        c //= lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a):
        return None
    return q


def L_minus_one_power(nu: Exp) -> EPoly:
    """L^nu - 1."""
    return EPoly({(nu, nu): 1, (0, 0): -1})


def projective_space(n: int) -> EPoly:
    """[P^n] = 1 + L + ... + L^n."""
    return EPoly({(k, k): 1 for k in range(n + 1)})


# ---------------------------------------------------------------------------
# the controlled-denominator series ring

Factor = tuple  # (nu, N) with N a tuple of nonnegative ints


def _mono_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _zero_like(c):
    return type(c)()


@lru_cache(maxsize=4096)
def _factor_series(nu, N: tuple, bound: int) -> dict:
    """Sum_{k>=1} L^(-nu k) T^(N k), truncated to total degree <= bound."""
    step = sum(N)
    out = {}
    k = 1
    while k * step <= bound:
        out[tuple(n * k for n in N)] = EPoly.Lpow(-nu * k)
        k += 1
    return out


def _series_mul(a: dict, b: dict, bound: int) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        d1 = sum(m1)
        for m2, c2 in b.items():
            if d1 + sum(m2) > bound:
                continue
            m = _mono_add(m1, m2)
            prev = out.get(m)
            out[m] = c1 * c2 if prev is None else prev + c1 * c2
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=4096)
def _factors_series(factors: tuple, bound: int, r: int) -> dict:
    out = {(0,) * r: ONE}
    for nu, N in factors:
        out = _series_mul(out, _factor_series(nu, N, bound), bound)
    return out


@lru_cache(maxsize=4096)
def _factors_at_infinity(factors: tuple, bound: int) -> dict:
    """Prod of (L^nu S^N - 1)^(-1) = prod -(sum_j L^(nu j) S^(N j)), r = 1."""
    out = {(0,): ONE}
    for nu, (n,) in factors:
        s = {(n * j,): EPoly.Lpow(nu * j, -1) for j in range(bound // n + 1)}
        out = _series_mul(out, s, bound)
    return out


def _linear_factor_poly(nu, N: tuple) -> dict:
    """L^nu - T^N as a polynomial in T."""
    return {(0,) * len(N): EPoly.Lpow(nu), tuple(N): EPoly.const(-1)}


class MotivicRational:
    """Element of M<T>: a sum of terms numerator(T) * prod (L^nu T^(-N) - 1)^(-1).

    Numerators are Laurent polynomials in T_1..T_r whose coefficients are EPoly
    or EqClass values.  Factors are kept sorted; terms with the same factor
    multiset are merged.
    """

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Iterable = ()):
        self.r = r
        merged: dict = {}
        for numer, factors in terms:
            fs = []
            for nu, N in factors:
                N = tuple(int(n) for n in N)
                if len(N) != r:
                    raise ValueError("factor arity does not match r")
                if not any(N):
                    raise ValueError("factor with N = 0 must be absorbed into the numerator")
                if any(n < 0 for n in N):
                    raise ValueError("negative multiplicity in factor")
                fs.append((_exp(nu), N))
            key = tuple(sorted(fs))
            acc = merged.setdefault(key, {})
            for mono, c in numer.items():
                mono = tuple(mono)
                if mono in acc:
                    acc[mono] = acc[mono] + c
                else:
                    acc[mono] = c
        self.terms = tuple(
            (nm, key)
            for key, num in sorted(merged.items())
            if (nm := {m: c for m, c in num.items() if c})
        )

    # constructors
    @classmethod
    def constant(cls, c, r: int = 1) -> "MotivicRational":
        if isinstance(c, int):
            c = EPoly.const(c)
        return cls(r, [({(0,) * r: c}, ())])

    @classmethod
    def factor(cls, nu, N, coeff=None) -> "MotivicRational":
        N = tuple(N) if not isinstance(N, int) else (N,)
        c = ONE if coeff is None else coeff
        return cls(len(N), [({(0,) * len(N): c}, ((nu, N),))])

    @classmethod
    def T(cls, i: int = 0, r: int = 1, power: int = 1) -> "MotivicRational":
        mono = tuple(power if j == i else 0 for j in range(r))
        return cls(r, [({mono: ONE}, ())])

    @classmethod
    def from_series(cls, coeffs: list) -> "MotivicRational":
        return cls(1, [({(n,): c for n, c in enumerate(coeffs) if c}, ())])

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, MotivicRational):
            if other.r != self.r:
                raise ValueError("mismatched number of T variables")
            return other
        return MotivicRational.constant(other, self.r)

    def __add__(self, other):
        other = self._coerce(other)
        return MotivicRational(self.r, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return MotivicRational(self.r, [({m: -c for m, c in n.items()}, f) for n, f in self.terms])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MotivicRational):
            return MotivicRational(self.r, [({m: c * other for m, c in n.items()}, f) for n, f in self.terms])
        other = self._coerce(other)
        out = []
        for n1, f1 in self.terms:
            for n2, f2 in other.terms:
                num: dict = {}
                for m1, c1 in n1.items():
                    for m2, c2 in n2.items():
                        m = _mono_add(m1, m2)
                        num[m] = num[m] + c1 * c2 if m in num else c1 * c2
                out.append((num, f1 + f2))
        return MotivicRational(self.r, out)

    def __rmul__(self, other):
        return MotivicRational(self.r, [({m: other * c for m, c in n.items()}, f) for n, f in self.terms])

    def __pow__(self, k: int):
        out = MotivicRational.constant(1, self.r)
        for _ in range(k):
            out = out * self
        return out

    def reciprocal(self) -> "MotivicRational":
        """1/x for unit monomials, binomials c T^m (1 - L^-nu T^N) and 1/(unit * factors)."""
        if len(self.terms) != 1:
            raise ValueError("only a single term can be inverted")
        num, fs = self.terms[0]
        items = sorted(num.items())
        if len(items) == 1:
            m, c = items[0]
            if not (isinstance(c, EPoly) and c.is_unit()):
                raise ValueError(f"{c} is not a unit")
            out = MotivicRational(self.r, [({tuple(-e for e in m): c.inverse_unit()}, ())])
            for nu, N in fs:
                out = out * MotivicRational(self.r, [({tuple(-n for n in N): EPoly.Lpow(nu)}, ()),
                                                     ({(0,) * self.r: EPoly.const(-1)}, ())])
            return out
        if len(items) == 2 and not fs:
            (m0, c0), (m1, c1) = items
            N = tuple(b - a for a, b in zip(m0, m1))
            if any(n < 0 for n in N):
                (m0, c0), (m1, c1), N = (m1, c1), (m0, c0), tuple(-n for n in N)
            if any(n < 0 for n in N) or not all(isinstance(c, EPoly) and c.is_unit() for c in (c0, c1)):
                raise ValueError("binomial is not of the form c T^m (1 - L^-nu T^N)")
            ratio = -(c1 * c0.inverse_unit())
            (p, q), k = next(iter(ratio.items()))
            if p != q or k != 1:
                raise ValueError("binomial is not of the form c T^m (1 - L^-nu T^N)")
            pre = MotivicRational(self.r, [({tuple(-e for e in m0): c0.inverse_unit()}, ())])
            return pre * (1 + MotivicRational(self.r, [({(0,) * self.r: ONE}, ((-p, N),))]))
        raise ValueError("cannot invert this series")

    def map_coefficients(self, f) -> "MotivicRational":
        return MotivicRational(self.r, [({m: f(c) for m, c in n.items()}, fs) for n, fs in self.terms])

    def is_zero(self) -> bool:
        return self == MotivicRational(self.r)

    def factor_multiset(self) -> Counter:
        """Smallest multiset containing every term's factors (a common denominator)."""
        out: Counter = Counter()
        for _, fs in self.terms:
            for f, k in Counter(fs).items():
                out[f] = max(out[f], k)
        return out

    def _zero_coeff(self):
        for n, _ in self.terms:
            for c in n.values():
                return _zero_like(c)
        return EPoly()

    # expansion
    def expand(self, K: int) -> dict:
        """Power series coefficients of total degree <= K, as {monomial: coeff}."""
        out: dict = {}
        for num, fs in self.terms:
            shift = max(0, -min(sum(m) for m in num))
            series = _factors_series(fs, K + shift, self.r)
            for m1, c1 in num.items():
                d1 = sum(m1)
                for m2, c2 in series.items():
                    if d1 + sum(m2) > K:
                        continue
                    m = _mono_add(m1, m2)
                    out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        res = {}
        for m, c in out.items():
            if not c:
                continue
            if any(x < 0 for x in m):
                raise ValueError("expression is not a power series")
            res[m] = c
        return res

    def coefficients(self, K: int) -> list:
        """r = 1: list of the coefficients of T^0..T^K."""
        if self.r != 1:
            raise ValueError("coefficients() needs a single variable")
        z = self._zero_coeff()
        ser = self.expand(K)
        return [ser.get((n,), z) for n in range(K + 1)]

    # special values
    def value_at_infinity(self):
        """Limit T -> infinity (r = 1), via S = 1/T."""
        if self.r != 1:
            raise ValueError("value at infinity needs a single variable")
        acc: dict = {}
        for num, fs in self.terms:
            bound = max(0, max(m[0] for m in num))
            series = _factors_at_infinity(fs, bound)
            for (k,), c1 in num.items():
                for (j,), c2 in series.items():
                    e = j - k
                    if e > 0:
                        continue
                    acc[e] = acc[e] + c1 * c2 if e in acc else c1 * c2
        bad = sorted(e for e, c in acc.items() if e < 0 and c)
        if bad:
            raise NotRegularAtInfinity(f"T^{-bad[0]} survives at infinity")
        return acc.get(0, self._zero_coeff())

    def value_at_one(self):
        """Evaluate at T = 1; each factor becomes (L^nu - 1)^(-1)."""
        from .errors import PoleAtOne

        denom = self.factor_multiset()
        for nu, _ in denom:
            if nu == 0:
                raise PoleAtOne("factor with nu = 0 has a pole at T = 1")
        total = self._zero_coeff()
        D = ONE
        for (nu, _), k in denom.items():
            D = D * L_minus_one_power(nu) ** k
        for num, fs in self.terms:
            s = self._zero_coeff()
            for c in num.values():
                s = s + c
            rest = denom - Counter(fs)
            for (nu, _), k in rest.items():
                s = s * L_minus_one_power(nu) ** k
            total = total + s
        return divide_exact(total, D)

    def cleared(self, denom: Counter | None = None) -> dict:
        """Multiply through by prod (L^nu - T^N) over ``denom``: a polynomial in T."""
        denom = self.factor_multiset() if denom is None else denom
        out: dict = {}
        zero = (0,) * self.r
        for num, fs in self.terms:
            shift = zero
            for _, N in fs:
                shift = _mono_add(shift, N)
            poly = {_mono_add(m, shift): c for m, c in num.items()}
            for f, k in (denom - Counter(fs)).items():
                lin = _linear_factor_poly(*f)
                for _ in range(k):
                    poly = _poly_mul(poly, lin)
            for m, c in poly.items():
                out[m] = out[m] + c if m in out else c
        return {m: c for m, c in out.items() if c}

    def __eq__(self, other):
        if not isinstance(other, MotivicRational):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        if other.r != self.r:
            return False
        diff = self - other
        if not diff.terms:
            return True
        return not diff.cleared()

    __hash__ = None

    # text
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for num, fs in self.terms:
            parts.append(_term_text(num, fs, self.r))
        return " + ".join(parts)

    def __repr__(self):
        return f"MotivicRational({self})"


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mono_add(m1, m2)
            out[m] = out[m] + c1 * c2 if m in out else c1 * c2
    return {m: c for m, c in out.items() if c}


def _tvar(i: int, r: int) -> str:
    return "T" if r == 1 else f"T{i + 1}"


def _tmono(m: tuple, r: int) -> str:
    parts = [_power(_tvar(i, r), e) for i, e in enumerate(m) if e]
    return "*".join(parts)


def _term_text(num: dict, fs: tuple, r: int) -> str:
    pieces = []
    for m in sorted(num, key=lambda m: (sum(m), m)):
        c = num[m]
        tm = _tmono(m, r)
        cs = str(c)
        if tm:
            pieces.append(f"({cs})*{tm}")
        else:
            pieces.append(f"({cs})")
    s = "(" + "+".join(pieces) + ")" if len(pieces) > 1 else pieces[0]
    for (nu, N), k in sorted(Counter(fs).items()):
        ns = ",".join(str(n) for n in N)
        f = f"F({fmt_exp(nu) if Fraction(nu) >= 0 else nu},{ns})"
        s += "*" + (f if k == 1 else f"{f}^{k}")
    return s


# ---------------------------------------------------------------------------
# Hadamard products and verified rational reconstruction

def pair_factor(f1: Factor, f2: Factor) -> Factor:
    """Factor whose series is the Hadamard product of the two factor series."""
    (nu1, (n1,)), (nu2, (n2,)) = f1, f2
    g = lcm(n1, n2)
    return (_exp(nu1 * (g // n1) + nu2 * (g // n2)), (g,))


def slope_profile(x: "MotivicRational") -> dict:
    """Pole data per slope nu/N: (largest count in one term, lcm of the N).

    Factors with equal slope can share roots (L - T divides L^2 - T^2), so the
    pole order at a root is bounded by the per-term count at its slope.
    """
    out: dict = {}
    for _, fs in x.terms:
        count: Counter = Counter(Fraction(nu) / N[0] for nu, N in fs)
        for nu, (n,) in fs:
            sl = Fraction(nu) / n
            m, g = out.get(sl, (0, 1))
            out[sl] = (max(m, count[sl]), lcm(g, n))
    return out


def pair_candidates(a: dict, b: dict) -> Counter:
    """Candidate denominator for the Hadamard product of two slope profiles."""
    out: Counter = Counter()
    for s1, (m1, g1) in a.items():
        for s2, (m2, g2) in b.items():
            g = lcm(g1, g2)
            f = (_exp((s1 + s2) * g), (g,))
            out[f] = max(out[f], m1 + m2 - 1)
    return out


def denominator_degree(factors: Counter) -> int:
    return sum(N[0] * k for (_, N), k in factors.items())


def reconstruct(coeffs: list, factors: Counter, check_to: int | None = None) -> MotivicRational:
    """Find P with sum c_n T^n = P / prod (L^nu - T^N), verified through ``check_to``.

    ``coeffs`` must reach index ``check_to`` (default: len(coeffs) - 1).
    """
    Q: dict = {(0,): ONE}
    for f, k in factors.items():
        for _ in range(k):
            Q = _poly_mul(Q, _linear_factor_poly(*f))
    d = denominator_degree(factors)
    K = len(coeffs) - 1 if check_to is None else check_to
    if K < d + 1:
        raise ReconstructionFailed(f"need coefficients beyond degree {d}, have {K}")
    z = None
    for c in coeffs:
        z = _zero_like(c)
        break
    prod = [z] * (K + 1)
    for (j,), qc in Q.items():
        for n in range(K + 1 - j):
            c = coeffs[n]
            if c:
                prod[n + j] = prod[n + j] + c * qc
    for n in range(d + 1, K + 1):
        if prod[n]:
            raise ReconstructionFailed(
                f"candidate denominator of degree {d} fails at T^{n}")
    num = {(n - d,): prod[n] for n in range(d + 1) if prod[n]}
    fs = []
    for f, k in factors.items():
        fs.extend([f] * k)
    return MotivicRational(1, [(num, tuple(fs))])


RECONSTRUCTION_MARGIN = 8


def hadamard(a: MotivicRational, b: MotivicRational, K: int = 16) -> MotivicRational:
    """Coefficientwise product, returned in closed form (single variable)."""
    if a.r != 1 or b.r != 1:
        raise ValueError("Hadamard product is implemented for one variable")
    for x in (a, b):
        if x.coefficients(0)[0]:
            raise NotRegularAtInfinity("Hadamard factors must vanish at T = 0")
        x.value_at_infinity()
    cand = pair_candidates(slope_profile(a), slope_profile(b))
    top = max(K, denominator_degree(cand) + RECONSTRUCTION_MARGIN)
    ca, cb = a.coefficients(top), b.coefficients(top)
    return reconstruct([x * y for x, y in zip(ca, cb)], cand)


# ---------------------------------------------------------------------------
# rational functions over Q (sympy-backed)

S_SYM, T_SYM, Q_SYM = sympy.symbols("s t q")


def _int_poly(expr_poly: sympy.Poly):
    """Scale a rational polynomial to integer coefficients; returns (poly, scale)."""
    den = 1
    for c in expr_poly.coeffs():
        den = lcm(den, int(sympy.Rational(c).q))
    return (expr_poly * den), den


def _content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, int(c))
    return g or 1


class _RationalFunction:
    """Reduced quotient of integer polynomials over a fixed list of symbols."""

    symbols: tuple = ()

    def __init__(self, expr):
        expr = sympy.cancel(sympy.together(sympy.sympify(expr)))
        num, den = sympy.fraction(expr)
        gens = self.symbols
        num = sympy.Poly(num, *gens, domain="QQ")
        den = sympy.Poly(den, *gens, domain="QQ")
        num, a = _int_poly(num)
        den, b = _int_poly(den)
        num, den = num * b, den * a
        num = sympy.Poly(num, *gens, domain="ZZ")
        den = sympy.Poly(den, *gens, domain="ZZ")
        g = gcd(_content(num.coeffs()), _content(den.coeffs()))
        num = num.exquo_ground(g) if g != 1 else num
        den = den.exquo_ground(g) if g != 1 else den
        if self._den_sign(den) < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    def _den_sign(self, den) -> int:
        return 1 if den.LC() > 0 else -1

    @property
    def expr(self):
        return self.num.as_expr() / self.den.as_expr()

    def __eq__(self, other):
        if not isinstance(other, _RationalFunction):
            try:
                other = type(self)(other)
            except (TypeError, sympy.SympifyError):
                return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero

    __hash__ = None

    def __add__(self, other):
        o = other.expr if isinstance(other, _RationalFunction) else other
        return type(self)(self.expr + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = other.expr if isinstance(other, _RationalFunction) else other
        return type(self)(self.expr - o)

    def __mul__(self, other):
        o = other.expr if isinstance(other, _RationalFunction) else other
        return type(self)(self.expr * o)

    __rmul__ = __mul__

    def __neg__(self):
        return type(self)(-self.expr)

    def subs(self, **kw):
        return self.expr.subs({sympy.Symbol(k): sympy.Rational(v) for k, v in kw.items()})

    def __repr__(self):
        return f"{type(self).__name__}({self})"


def _render_ascending(poly: sympy.Poly, var: str) -> str:
    pieces = []
    for (e,), c in sorted(poly.terms(), key=lambda t: t[0]):
        pieces.append((int(c), "" if e == 0 else _power(var, e)))
    return _join_terms(pieces)


def _wrap(s: str) -> str:
    body = s[1:] if s.startswith("-") else s
    return f"({s})" if ("+" in body or "-" in body) else s


class SRational(_RationalFunction):
    """Rational function of s with linear denominator factors (nu + N s)."""

    symbols = (S_SYM,)

    def _den_sign(self, den) -> int:
        coeffs = den.all_coeffs()
        return 1 if coeffs[-1] > 0 or (coeffs[-1] == 0 and den.LC() > 0) else -1

    @classmethod
    def from_terms(cls, terms: Iterable[tuple]) -> "SRational":
        """Sum of coef * prod 1/(nu + N s) over (coef, [(nu, N), ...])."""
        total = sympy.Integer(0)
        for coef, factors in terms:
            t = sympy.Rational(Fraction(coef).numerator, Fraction(coef).denominator)
            for nu, N in factors:
                t = t / (sympy.Rational(str(Fraction(nu))) + N * S_SYM)
            total += t
        return cls(total)

    def at(self, s) -> Fraction:
        v = self.subs(s=s)
        return Fraction(int(sympy.numer(v)), int(sympy.denom(v)))

    def linear_factors(self):
        """Return (constant, [((nu, N), multiplicity), ...]) for the denominator."""
        c, facs = sympy.factor_list(self.den.as_expr(), S_SYM)
        out = []
        for f, k in facs:
            p = sympy.Poly(f, S_SYM)
            if p.degree() != 1:
                raise ValueError("denominator is not a product of linear factors")
            N, nu = (int(x) for x in p.all_coeffs())
            if nu < 0 or (nu == 0 and N < 0):
                N, nu = -N, -nu
                c = c * (-1) ** k
            out.append(((nu, N), k))
        out.sort(key=lambda fk: (fk[0][1], fk[0][0]))
        return int(c), out

    def __str__(self):
        num = sympy.Poly(self.num.as_expr(), S_SYM)
        c, facs = self.linear_factors()
        if c < 0:
            num, c = -num, -c
        ns = _render_ascending(num, "s")
        if not facs and c == 1:
            return ns
        fparts = []
        for (nu, N), k in facs:
            lin = _join_terms([(nu, ""), (N, "s")] if nu else [(N, "s")])
            fparts.append(f"({lin})" + (f"^{k}" if k > 1 else ""))
        den = ("" if c == 1 else str(c)) + "".join(fparts)
        if c != 1 and not fparts:
            den = str(c)
        elif not (c == 1 and len(facs) == 1 and facs[0][1] == 1):
            den = f"({den})"
        return f"{_wrap(ns)}/{den}"

    def latex(self) -> str:
        return sympy.latex(sympy.factor(self.expr))


class TRational(_RationalFunction):
    """Rational function of t over Q (monodromy zeta functions)."""

    symbols = (T_SYM,)

    def _den_sign(self, den) -> int:
        coeffs = den.all_coeffs()
        lowest = next(c for c in reversed(coeffs) if c != 0)
        return 1 if lowest > 0 else -1

    def __str__(self):
        ns = _render_ascending(self.num, "t")
        if self.den.degree() == 0 and self.den.LC() == 1:
            return ns
        ds = _render_ascending(self.den, "t")
        return f"{_wrap(ns)}/{_wrap(ds)}"

    def latex(self) -> str:
        return sympy.latex(self.expr)


class QTRational(_RationalFunction):
    """Rational function of q and t = q^(-s) (Igusa zeta functions)."""

    symbols = (Q_SYM, T_SYM)

    def _den_sign(self, den) -> int:
        return 1 if _bivariate_lead(den) > 0 else -1

    def __str__(self):
        ns = _render_bivariate(self.num)
        c, facs = sympy.factor_list(self.den.as_expr(), Q_SYM, T_SYM)
        c = int(c)
        parts = []
        for f, k in sorted(facs, key=lambda fk: sympy.default_sort_key(fk[0])):
            p = sympy.Poly(f, Q_SYM, T_SYM)
            if _bivariate_lead(p) < 0:
                p, c = -p, c * (-1) ** k
            parts.append((p, k))
        if c < 0:
            ns, c = _render_bivariate(-self.num), -c
        if not parts:
            return ns if c == 1 else f"{_wrap(ns)}/{c}"
        fs = "".join(f"({_render_bivariate(p)})" + (f"^{k}" if k > 1 else "") for p, k in parts)
        den = fs if c == 1 else f"{c}{fs}"
        if not (c == 1 and len(parts) == 1 and parts[0][1] == 1):
            den = f"({den})"
        return f"{_wrap(ns)}/{den}"

    def latex(self) -> str:
        return sympy.latex(self.expr)


def _bivariate_lead(p: sympy.Poly) -> int:
    terms = sorted(p.terms(), key=lambda t: (-t[0][0], t[0][1]))
    return int(terms[0][1])


def _render_bivariate(p: sympy.Poly) -> str:
    pieces = []
    for (a, b), c in sorted(p.terms(), key=lambda t: (-t[0][0], t[0][1])):
        parts = [x for x in (_power("q", a) if a else "", _power("t", b) if b else "") if x]
        pieces.append((int(c), "*".join(parts)))
    return _join_terms(pieces)
