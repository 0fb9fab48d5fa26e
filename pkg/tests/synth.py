"""Random but valid one-function resolution data over a point."""
import random
from fractions import Fraction
from math import gcd

from motivica.grothendieck import char_str
from motivica.resolution import parse_resolution, validate_resolution


def _epoly(rng):
    return rng.choice(["1", "L", "L-1", "L-2", "L+1", "2", "L-3"])


def _chars(rng, n, e):
    parts = {"0": e}
    for k in range(1, n):
        parts[char_str(Fraction(k, n))] = e
    # perturb away from the trivial character keeping the Euler number
    if n > 2 and rng.random() < 0.6:
        a, b = rng.sample(range(1, n), 2)
        for k, sgn in ((a, "+1"), (b, "-1")):
            key = char_str(Fraction(k, n))
            parts[key] = f"{parts[key]}{sgn}"
    if n > 1 and rng.random() < 0.5:
        k = rng.randrange(1, n)
        key = char_str(Fraction(k, n))
        parts[key] = f"{parts[key]}+u-v"
    return parts


def random_resolution(seed: int):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    comps = [{"id": f"E{i}", "N": [rng.randint(1, 6)], "nu": str(rng.randint(1, 6))} for i in range(1, k + 1)]
    strata = []
    for c in comps:
        n, e = c["N"][0], _epoly(rng)
        strata.append({"components": [c["id"]], "epoly": e, "over_locus": True,
                       "cover": {"degree": n, "chars": _chars(rng, n, e)}})
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < 0.5:
                g = gcd(comps[i]["N"][0], comps[j]["N"][0])
                strata.append({"components": [comps[i]["id"], comps[j]["id"]], "epoly": "1",
                               "over_locus": True, "cover": {"degree": g, "chars": _chars(rng, g, "1")}})
    doc = {"name": f"synthetic-{seed}", "r": 1, "dim": 2, "components": comps, "strata": strata}
    res = parse_resolution(doc)
    validate_resolution(res)
    return res


def random_massless_series(seed: int):
    """Sum of pure-character terms a_i F(nu_i, N_i) plus a massless trivial part."""
    from motivica.exactring import EPoly, L, MotivicRational
    from motivica.grothendieck import EqClass

    rng = random.Random(seed)
    out = MotivicRational(1)
    for _ in range(rng.randint(1, 2)):
        n = rng.choice([2, 3, 4, 6])
        nu = rng.randint(1, 4)
        k = rng.randrange(1, n)
        e = EPoly({(rng.randint(0, 1), rng.randint(0, 1)): rng.choice([-2, -1, 1, 2])})
        out = out + MotivicRational.factor(nu, n, EqClass({Fraction(k, n): e}))
    if rng.random() < 0.5:
        c = EqClass.trivial(EPoly.const(rng.choice([-1, 1])))
        out = out + MotivicRational.factor(1, 1, c) - MotivicRational.factor(2, 2, c * EqClass.trivial(L + 1))
    return out


def random_regular_series(seed: int):
    """One-variable series vanishing at T = 0 and regular at T = infinity."""
    from motivica.exactring import EPoly, MotivicRational

    rng = random.Random(seed)
    out = MotivicRational(1)
    for _ in range(rng.randint(1, 2)):
        fs = tuple(sorted((rng.randint(0, 2), (rng.randint(1, 3),)) for _ in range(rng.randint(1, 2))))
        m = -rng.randint(0, sum(f[1][0] for f in fs) - 1)
        e = EPoly({(rng.randint(0, 1), rng.randint(0, 1)): rng.choice([-2, -1, 1, 2])})
        out = out + MotivicRational(1, [({(m,): e}, fs)])
    return out


def random_eqclass(rng: random.Random):
    from motivica.exactring import EPoly
    from motivica.grothendieck import EqClass

    parts = {}
    for _ in range(rng.randint(0, 3)):
        d = rng.choice([1, 2, 3, 4, 6])
        terms = {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3) for _ in range(rng.randint(0, 3))}
        parts[Fraction(rng.randrange(d), d)] = EPoly(terms)
    return EqClass(parts)
