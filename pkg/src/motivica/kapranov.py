"""Kapranov zeta functions on the level of E-polynomials."""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import NonIntegralExpansion, ReconstructionFailed, ValidationError
from .exactring import EPoly, L, ONE


def _check_integral(e: EPoly) -> None:
    for p, q in e.terms:
        if Fraction(p).denominator != 1 or Fraction(q).denominator != 1:
            raise ValidationError(f"class {e} has fractional exponents")


def sym_powers(e: EPoly, K: int) -> list[EPoly]:
    """E(Sym^n X) for n = 0..K via n a_n = sum_k psi^k(e) a_(n-k)."""
    _check_integral(e)
    adams = [None] + [e.adams(k) for k in range(1, K + 1)]
    out = [ONE]
    for n in range(1, K + 1):
        acc = EPoly()
        for k in range(1, n + 1):
            acc = acc + adams[k] * out[n - k]
        terms = {}
        for key, c in acc.items():
            if c % n:
                raise NonIntegralExpansion(f"coefficient {c} of Sym^{n} is not divisible by {n}")
            terms[key] = c // n
        out.append(EPoly(terms))
    return out


def sym_powers_product(e: EPoly, K: int) -> list[EPoly]:
    """Same series from prod (1 - u^p v^q T)^(-e_pq), expanded with binomials."""
    _check_integral(e)
    series = [ONE] + [EPoly()] * K
    for (p, q), c in e.items():
        mono = EPoly.mono(p, q)
        # (1 - x)^(-c) = sum_k binom(c + k - 1, k) x^k, valid for any integer c
        factor = [mono ** k * _neg_binom(c, k) for k in range(K + 1)]
        series = [sum((series[i] * factor[n - i] for i in range(n + 1)), EPoly()) for n in range(K + 1)]
    return series


def _neg_binom(c: int, k: int) -> int:
    if c >= 0:
        return comb(c + k - 1, k) if c else (1 if k == 0 else 0)
    return (-1) ** k * comb(-c, k)


def kapranov_series(e: EPoly, K: int) -> list[EPoly]:
    return sym_powers(e, K)


def _mul_linear(series: list[EPoly], a, b) -> list[EPoly]:
    """Multiply by (1 - u^a v^b T), truncating at the same length."""
    m = EPoly.mono(a, b)
    return [series[n] - (m * series[n - 1] if n else EPoly()) for n in range(len(series))]


def numerator(series: list[EPoly], factors) -> list[EPoly]:
    out = list(series)
    for a, b in factors:
        out = _mul_linear(out, a, b)
    return out


def verify_rational(series: list[EPoly], factors, max_degree: int | None = None) -> bool:
    """True if series * prod (1 - u^a v^b T) vanishes above ``max_degree``.

    The default bound is half the truncation order.
    """
    K = len(series) - 1
    bound = K // 2 if max_degree is None else max_degree
    prod = numerator(series, factors)
    return all(not c for c in prod[bound + 1:])


def curve_class(g: int) -> EPoly:
    return EPoly({(0, 0): 1, (1, 0): -g, (0, 1): -g, (1, 1): 1})


def _genus(e: EPoly) -> int:
    g = -e.terms.get((1, 0), 0)
    if e != curve_class(g) or g < 0:
        raise ValidationError(f"{e} is not the class of a smooth projective curve")
    return g


def curve_numerator(e: EPoly, K: int) -> list[EPoly]:
    """P(T) with Z = P / ((1-T)(1-LT)); verified up to T^K."""
    g = _genus(e)
    if K < 2 * g + 2:
        raise ReconstructionFailed(f"need at least {2 * g + 2} coefficients for genus {g}")
    prod = numerator(sym_powers(e, K), [(0, 0), (1, 1)])
    if any(prod[2 * g + 1:]):
        raise ReconstructionFailed("numerator has degree above 2g")
    return prod[: 2 * g + 1]


def _laurent_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, EPoly()) + x * y
    return {k: v for k, v in out.items() if v}


def functional_equation_check(e: EPoly, K: int) -> bool:
    """Z(1/(LT)) = L^(1-g) T^(2-2g) Z(T), cleared of denominators."""
    g = _genus(e)
    P = curve_numerator(e, K)
    Linv = EPoly.Lpow(-1)
    p_inv = {-n: c * Linv ** n for n, c in enumerate(P) if c}          # P(1/(LT))
    lhs = _laurent_mul(_laurent_mul(p_inv, {0: ONE, 1: EPoly.const(-1)}), {0: ONE, 1: -L})
    p = {n: c for n, c in enumerate(P) if c}
    scale = {2 - 2 * g: EPoly.Lpow(1 - g)}
    rhs = _laurent_mul(_laurent_mul(_laurent_mul(scale, p), {0: ONE, -1: -Linv}), {0: ONE, -1: EPoly.const(-1)})
    return lhs == rhs
