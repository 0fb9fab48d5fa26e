"""Equivariant measures on arcs of the line, their convolution and the abstract
Thom-Sebastiani property, all at the level of zeta functions.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotMassless, ReconstructionFailed, ValidationError
from .exactring import (
    EPoly, L, MotivicRational, RECONSTRUCTION_MARGIN, denominator_degree,
    pair_candidates, reconstruct, slope_profile,
)
from .grothendieck import EqClass, quasi_convolution
from .resolution import ResolutionData
from .zeta import motivic_nearby


@dataclass(frozen=True)
class MeasureZeta:
    """Zeta function sum_n lambda_n T^n of an equivariant measure."""

    series: MotivicRational
    provenance: str = ""

    def coefficients(self, K: int) -> list[EqClass]:
        return [EqClass.coerce(c) for c in self.series.coefficients(K)]

    def augmented(self) -> MotivicRational:
        return self.series.map_coefficients(lambda c: EqClass.coerce(c).augmentation())

    def check_characters(self, K: int) -> None:
        for n, c in enumerate(self.coefficients(K)):
            bad = [d for d in c.denominators() if n == 0 or n % d]
            if bad:
                raise ValidationError(f"coefficient of T^{n} carries characters of order {bad}")


def nearby_measure(res: ResolutionData) -> MeasureZeta:
    return MeasureZeta(motivic_nearby(res), f"S(f) of {res.name or 'input'}")


def reduced_measure(res: ResolutionData) -> MeasureZeta:
    """Massless measure F(1,1) - S(f); its value at infinity is psi_f - 1."""
    point = MotivicRational.factor(1, (1,), EqClass.trivial(EPoly.const(1)))
    lam = MeasureZeta(point - motivic_nearby(res), f"reduced S(f) of {res.name or 'input'}")
    if mass(lam):
        raise NotMassless(f"{lam.provenance} has mass {mass(lam)}")
    return lam


def mass(lam: MeasureZeta) -> EPoly:
    """(L-1) times the augmented zeta function at T = 1."""
    return (lam.augmented() * (L - 1)).value_at_one()


def _convolve_coeffs(a: list[EqClass], b: list[EqClass], ma: EPoly, mb: EPoly, K: int) -> list[EqClass]:
    out = [EqClass()]
    pa = pb = EPoly()   # partial sums of augmentations
    running = EPoly()   # sum_{i<=n} L^(i-n) aug(a_i b_i)
    Linv = EPoly.Lpow(-1)
    for n in range(1, K + 1):
        x, y = a[n], b[n]
        pa = pa + x.augmentation()
        pb = pb + y.augmentation()
        running = running * Linv + (x * y).augmentation()
        tail_a = ma - (L - 1) * pa   # (L-1) sum_{i>n} aug(a_i)
        tail_b = mb - (L - 1) * pb
        c = -quasi_convolution(x, y) + EqClass.trivial((L - 1) * running) + x * tail_b + y * tail_a
        out.append(c)
    return out


def convolve(lam: MeasureZeta, lam2: MeasureZeta, K: int) -> MeasureZeta:
    """Coefficients of lambda * lambda' up to T^K, as a polynomial series."""
    coeffs = _convolve_coeffs(lam.coefficients(K), lam2.coefficients(K), mass(lam), mass(lam2), K)
    return MeasureZeta(MotivicRational.from_series(coeffs), f"convolution to order {K}")


def _candidates(lam: MeasureZeta, lam2: MeasureZeta) -> Counter:
    pa, pb = slope_profile(lam.series), slope_profile(lam2.series)
    had_zero = 0 in pa or 0 in pb
    # the mass terms behave like an extra factor T/(1-T) on each side
    for p in (pa, pb):
        m, g = p.get(Fraction(0), (0, 1))
        p[Fraction(0)] = (max(m, 1), g)
    cand = pair_candidates(pa, pb)
    if not had_zero:
        cand.pop((0, (1,)), None)
    cand[(1, (1,))] += 1
    return cand


def convolution_closed_form(lam: MeasureZeta, lam2: MeasureZeta) -> MotivicRational:
    """Rational reconstruction of the full convolution (both measures massless)."""
    cand = _candidates(lam, lam2)
    top = denominator_degree(cand) + RECONSTRUCTION_MARGIN
    coeffs = _convolve_coeffs(lam.coefficients(top), lam2.coefficients(top), mass(lam), mass(lam2), top)
    return reconstruct(coeffs, cand)


def ts_infinity(lam: MeasureZeta, lam2: MeasureZeta) -> EqClass:
    """lambda(inf) * lambda'(inf), checked against the convolution at infinity."""
    for m in (lam, lam2):
        if mass(m):
            raise NotMassless(f"mass {mass(m)} is not zero ({m.provenance})")
    a = EqClass.coerce(lam.series.value_at_infinity())
    b = EqClass.coerce(lam2.series.value_at_infinity())
    expected = quasi_convolution(a, b)
    closed = convolution_closed_form(lam, lam2)
    got = EqClass.coerce(closed.value_at_infinity())
    if got != expected:
        raise ReconstructionFailed(f"convolution at infinity is {got}, expected {expected}")
    return expected
