"""Zeta functions read off from resolution data."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import sympy

from .errors import MissingCounts, MissingCover, MissingStratum, Unsupported
from .exactring import (
    EPoly, L, ONE, MotivicRational, QTRational, SRational, TRational,
    Q_SYM, T_SYM, L_minus_one_power, divide_exact, projective_space,
)
from .grothendieck import EqClass
from .resolution import ResolutionData, Stratum


def _need_r1(res: ResolutionData, what: str):
    if res.r != 1:
        raise Unsupported(f"{what} needs exactly one function (r = 1), got r = {res.r}")


def _integral_nu(res: ResolutionData, what: str):
    for c in res.components:
        if c.nu.denominator != 1:
            raise Unsupported(f"{what} needs integer nu; component {c.id} has nu = {c.nu}")


def contact_series(res: ResolutionData, mode: str = "global") -> MotivicRational:
    """Sum over strata of [E_I] prod (L-1) (L^nu T^-N - 1)^-1."""
    if res.r < 1:
        raise Unsupported("contact series needs at least one function")
    _integral_nu(res, "the contact series")
    terms = []
    for s in res.strata_for(mode):
        comps = res.comps(s)
        coeff = s.epoly * (L - 1) ** len(comps)
        terms.append(({(0,) * res.r: coeff}, tuple((int(c.nu), c.N) for c in comps)))
    return MotivicRational(res.r, terms)


def _weighted_strata_sum(res: ResolutionData, strata: list[Stratum]) -> EPoly:
    """Sum_I [E_I] prod_{i in I} (L-1)/(L^nu_i - 1), divided out exactly."""
    used = sorted({c for s in strata for c in s.components})
    nontrivial = [res.component(c) for c in used if res.component(c).nu != 1]
    num = EPoly()
    for s in strata:
        t = s.epoly
        for c in nontrivial:
            t = t * ((L - 1) if c.id in s.components else L_minus_one_power(c.nu))
        num = num + t
    den = ONE
    for c in nontrivial:
        den = den * L_minus_one_power(c.nu)
    return divide_exact(num, den)


def measure_pushforward(res: ResolutionData, form: str = "open", mode: str = "global"):
    """Direct image of the arc-space measure; returns (class, euler_value)."""
    strata = res.strata_for(mode)
    _integral_nu(res, "the measure pushforward")
    euler_value = Fraction(0)
    for s in strata:
        w = Fraction(s.euler())
        for c in res.comps(s):
            w /= c.nu
        euler_value += w
    if form == "open":
        return _weighted_strata_sum(res, strata), euler_value
    if form != "closed":
        raise ValueError("form must be 'open' or 'closed'")
    return _closed_form(res, strata), euler_value


def _closed_form(res: ResolutionData, strata: list[Stratum]) -> EPoly:
    """Same class written with closed E_I and the components with nu >= 2."""
    used = sorted({c for s in strata for c in s.components})
    big = [res.component(c) for c in used if res.component(c).nu >= 2]
    closed = {}
    for k in range(len(big) + 1):
        for I in combinations(big, k):
            ids = {c.id for c in I}
            closed[frozenset(ids)] = sum((s.epoly for s in strata if ids <= s.components), EPoly())
    num = EPoly()
    for ids, cls in closed.items():
        t = cls * EPoly.Lpow(0, (-1) ** len(ids)) * L ** len(ids)
        for c in big:
            n = int(c.nu)
            t = t * (projective_space(n - 2) if c.id in ids else projective_space(n - 1))
        num = num + t
    den = ONE
    for c in big:
        den = den * projective_space(int(c.nu) - 1)
    return divide_exact(num, den)


def _over_locus_nonempty(res: ResolutionData) -> list[Stratum]:
    return [s for s in res.strata_for("local") if s.components]


def _covers(res: ResolutionData) -> list[tuple[Stratum, EqClass]]:
    _need_r1(res, "the motivic nearby fiber")
    out = []
    for s in _over_locus_nonempty(res):
        if s.cover is None:
            raise MissingCover(f"stratum {sorted(s.components)} has no cover data")
        out.append((s, s.cover.chars))
    return out


def motivic_nearby(res: ResolutionData) -> MotivicRational:
    """S(f): sum over nonempty over-locus strata of (L-1)^(|I|-1) [E~_I] prod factors."""
    _integral_nu(res, "S(f)")
    terms = []
    for s, chars in _covers(res):
        comps = res.comps(s)
        coeff = chars * (L - 1) ** (len(comps) - 1)
        terms.append(({(0,): coeff}, tuple((int(c.nu), c.N) for c in comps)))
    return MotivicRational(1, terms)


def nearby_class_closed(res: ResolutionData) -> EqClass:
    out = EqClass()
    for s, chars in _covers(res):
        out = out + chars * (1 - L) ** (len(s.components) - 1)
    return out


def nearby_class(res: ResolutionData) -> EqClass:
    """psi_f = -S(f) at T = infinity."""
    psi = -EqClass.coerce(motivic_nearby(res).value_at_infinity())
    assert psi == nearby_class_closed(res), "value at infinity disagrees with the closed form"
    return psi


def vanishing_class(res: ResolutionData) -> EqClass:
    """Reduced nearby class, signed so the middle cohomology counts positively."""
    psi = nearby_class(res)
    return (psi - 1) * (-1) ** (res.dim - 1)


def trace_class(res: ResolutionData, n: int) -> EqClass:
    """Sum over strata with N(I) | n of (1-L)^(|I|-1) [E~_I]."""
    out = EqClass()
    for s, chars in _covers(res):
        if n % res.N_of(s) == 0:
            out = out + chars * (1 - L) ** (len(s.components) - 1)
    return out


def acampo_lefschetz(res: ResolutionData, n: int) -> int:
    """Lefschetz number of the n-th power of the monodromy."""
    _need_r1(res, "A'Campo numbers")
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    for s in _over_locus_nonempty(res):
        if n % res.N_of(s) or len(s.components) != 1:
            continue  # (1-L)^k has Euler characteristic 0 for k >= 1
        total += s.cover.chars.euler() if s.cover else res.N_of(s) * s.euler()
    return total


def _series(num: list, den: list, K: int) -> list[Fraction]:
    """Power series num/den (ascending coefficients, den[0] != 0) to order K."""
    out = []
    num = [Fraction(x) for x in num] + [Fraction(0)] * (K + 1)
    d0 = Fraction(den[0])
    for n in range(K + 1):
        c = num[n] - sum(Fraction(den[j]) * out[n - j] for j in range(1, min(n, len(den) - 1) + 1))
        out.append(c / d0)
    return out


def _coeffs(poly: sympy.Poly) -> list[int]:
    return [int(c) for c in reversed(poly.all_coeffs())]


LOG_DERIVATIVE_CHECK = 24


def monodromy_zeta(res: ResolutionData) -> TRational:
    """prod over over-locus components of (1 - t^N)^(-chi(E_i))."""
    _need_r1(res, "the monodromy zeta function")
    singles = [s for s in _over_locus_nonempty(res) if len(s.components) == 1]
    if not singles:
        raise MissingStratum("no over-locus component strata")
    expr = sympy.Integer(1)
    for s in singles:
        expr *= (1 - T_SYM ** res.N_of(s)) ** (-s.euler())
    zeta = TRational(expr)
    # t zeta'/zeta = t (P'Q - PQ') / (PQ)
    P, Q = zeta.num, zeta.den
    top = (P.diff(T_SYM) * Q - P * Q.diff(T_SYM)) * sympy.Poly(T_SYM, T_SYM)
    log_der = _series(_coeffs(top), _coeffs(P * Q), LOG_DERIVATIVE_CHECK)
    for n in range(1, LOG_DERIVATIVE_CHECK + 1):
        assert log_der[n] == acampo_lefschetz(res, n), f"log-derivative mismatch at n = {n}"
    return zeta


def topological_zeta(res: ResolutionData, mode: str = "global") -> SRational:
    _need_r1(res, "the topological zeta function")
    _integral_nu(res, "the topological zeta function")
    terms = []
    for s in res.strata_for(mode):
        terms.append((s.euler(), [(c.nu, c.N[0]) for c in res.comps(s)]))
    return SRational.from_terms(terms)


def denef_loeser_I(res: ResolutionData, mode: str = "global") -> MotivicRational:
    """L^-d times the contact series, read in the variable T = L^-s."""
    _need_r1(res, "the Denef-Loeser zeta function")
    return contact_series(res, mode) * EPoly.Lpow(-res.dim)


def specialize_topological(x: MotivicRational) -> SRational:
    """Send (L-1)(L^nu T^-N - 1)^-1 to 1/(nu + N s), T to 1 and classes to Euler numbers."""
    if x.r != 1:
        raise Unsupported("topological specialization needs one variable")
    terms = []
    for num, fs in x.terms:
        total = sum(num.values(), EPoly())
        reduced = divide_exact(total, (L - 1) ** len(fs))
        terms.append((reduced.euler(), [(nu, N[0]) for nu, N in fs]))
    return SRational.from_terms(terms)


def _count_sym(e: EPoly):
    poly = e.count()
    return sum((sympy.Rational(str(c)) * Q_SYM ** sympy.Rational(str(k)) for k, c in poly.items()), sympy.Integer(0))


def count_realize(x: MotivicRational, q=None) -> QTRational:
    """Point-count realization: L -> q and T = L^-s -> t = q^-s."""
    if x.r != 1:
        raise Unsupported("count realization needs one variable")
    expr = sympy.Integer(0)
    for num, fs in x.terms:
        t = sum((_count_sym(c) * T_SYM ** m[0] for m, c in num.items()), sympy.Integer(0))
        for nu, (n,) in fs:
            t = t / (Q_SYM ** nu * T_SYM ** (-n) - 1)
        expr += t
    if q is not None:
        expr = expr.subs(Q_SYM, sympy.Integer(q))
    return QTRational(expr)


def igusa_zeta(res: ResolutionData, q=None, mode: str = "global") -> QTRational:
    """q^-d sum_I #E_I(F_q) prod (q-1)/(q^nu t^-N - 1), t = q^-s."""
    _need_r1(res, "the Igusa zeta function")
    _integral_nu(res, "the Igusa zeta function")
    expr = sympy.Integer(0)
    for s in res.strata_for(mode):
        if s.count is None:
            raise MissingCounts(f"stratum {sorted(s.components)} has no point count")
        t = _count_sym(s.count)
        for c in res.comps(s):
            t = t * (Q_SYM - 1) / (Q_SYM ** int(c.nu) * T_SYM ** (-c.N[0]) - 1)
        expr += t
    expr = expr / Q_SYM ** res.dim
    if q is not None:
        expr = expr.subs(Q_SYM, sympy.Integer(q))
    return QTRational(expr)


def acampo_congruence(res: ResolutionData, K: int = 24) -> bool:
    """S(f) and sum_n Tr_n[psi_f] T^n agree coefficientwise modulo L - 1."""
    coeffs = motivic_nearby(res).coefficients(K)

    def reduce(c) -> dict:
        c = EqClass.coerce(c)
        out = {a: e.mod_L_minus_1() for a, e in c.items()}
        return {a: p for a, p in out.items() if p.items()}

    return all(reduce(coeffs[n]) == reduce(trace_class(res, n)) for n in range(1, K + 1))
