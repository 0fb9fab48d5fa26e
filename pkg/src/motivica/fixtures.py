"""Built-in resolution data.

Each builder returns a JSON-shaped document that goes through the regular
parser, so the fixtures also exercise the input path.  Point counts are given
only where every stratum is split over F_q (a polynomial count).
"""
from __future__ import annotations

import re

from .errors import UnknownFixture
from .resolution import ResolutionData, parse_resolution


def _comp(cid, N, nu, exceptional=True):
    return {"id": cid, "N": list(N), "nu": str(nu), "exceptional": exceptional}


def _stratum(ids, epoly, over, count=None, degree=None, chars=None):
    s = {"components": list(ids), "epoly": epoly, "over_locus": over}
    if count is not None:
        s["count"] = count
    if degree is not None:
        s["cover"] = {"degree": degree, "chars": chars}
    return s


def _regular(n: int, e: str = "1") -> dict:
    out = {}
    for k in range(n):
        key = "0" if k == 0 else f"{k // _g(k, n)}/{n // _g(k, n)}"
        out[key] = e
    return out


def _g(a, b):
    while b:
        a, b = b, a % b
    return a


def xN(n: int) -> dict:
    """x^n on the affine line; the identity is already a log resolution."""
    return {
        "name": f"xN({n})", "r": 1, "dim": 1,
        "components": [_comp("E", [n], 1, exceptional=False)],
        "strata": [
            _stratum([], "L-1", False, "q-1"),
            _stratum(["E"], "1", True, "1", n, _regular(n)),
        ],
    }


def node() -> dict:
    """x^2 + y^2: blow up the origin once; E has N = 2, nu = 2.

    The two branches are only defined over fields containing sqrt(-1), so no
    point counts are recorded.
    """
    return {
        "name": "node", "r": 1, "dim": 2,
        "components": [_comp("S1", [1], 1, False), _comp("S2", [1], 1, False), _comp("E", [2], 2)],
        "strata": [
            _stratum([], "(L-1)^2", False),
            _stratum(["S1"], "L-1", False, None, 1, {"0": "L-1"}),
            _stratum(["S2"], "L-1", False, None, 1, {"0": "L-1"}),
            _stratum(["E"], "L-1", True, None, 2, {"0": "L-1"}),
            _stratum(["S1", "E"], "1", True, None, 1, {"0": "1"}),
            _stratum(["S2", "E"], "1", True, None, 1, {"0": "1"}),
        ],
    }


def _cusp_common():
    comps = [_comp("E0", [1], 1, False), _comp("E1", [2], 2), _comp("E2", [3], 3), _comp("E3", [6], 5)]
    strata = [
        _stratum([], "L^2-L", False, "q^2-q"),
        _stratum(["E0"], "L-1", False, "q-1", 1, {"0": "L-1"}),
        _stratum(["E1"], "L", True, "q", 2, {"0": "L", "1/2": "L"}),
        _stratum(["E2"], "L", True, "q", 3, {"0": "L", "1/3": "L", "2/3": "L"}),
        _stratum(["E1", "E3"], "1", True, "1", 2, _regular(2)),
        _stratum(["E2", "E3"], "1", True, "1", 3, _regular(3)),
        _stratum(["E0", "E3"], "1", True, "1", 1, {"0": "1"}),
    ]
    return comps, strata


def cuspA() -> dict:
    """x^2 + y^3, minimal log resolution by three point blow-ups.

    The degree-6 cover of E3 (a line minus three points) is an elliptic curve
    with j = 0 minus six points; mu_6 acts on its H^1 through the primitive
    characters.
    """
    comps, strata = _cusp_common()
    strata.insert(4, _stratum(["E3"], "L-2", True, "q-2", 6, {
        "0": "L-2", "1/2": "-1", "1/3": "-1", "2/3": "-1", "1/6": "-u", "5/6": "-v"}))
    return {"name": "cuspA", "r": 1, "dim": 2, "components": comps, "strata": strata}


def cuspB() -> dict:
    """cuspA followed by a blow-up of a general point of E3 (new E4: N = 6, nu = 6)."""
    comps, strata = _cusp_common()
    comps.append(_comp("E4", [6], 6))
    strata.insert(4, _stratum(["E3"], "L-3", True, "q-3", 6, {
        "0": "L-3", "1/2": "-2", "1/3": "-2", "2/3": "-2", "1/6": "-u-1", "5/6": "-v-1"}))
    strata.append(_stratum(["E4"], "L", True, "q", 6, _regular(6, "L")))
    strata.append(_stratum(["E3", "E4"], "1", True, "1", 6, _regular(6)))
    return {"name": "cuspB", "r": 1, "dim": 2, "components": comps, "strata": strata}


def line2() -> dict:
    """x + y on the plane after blowing up the origin (E: N = 1, nu = 2)."""
    return {
        "name": "line2", "r": 1, "dim": 2,
        "components": [_comp("E", [1], 2), _comp("S", [1], 1, False)],
        "strata": [
            _stratum([], "L^2-L", False, "q^2-q"),
            _stratum(["S"], "L-1", False, "q-1", 1, {"0": "L-1"}),
            _stratum(["E"], "L", True, "q", 1, {"0": "L"}),
            _stratum(["E", "S"], "1", True, "1", 1, {"0": "1"}),
        ],
    }


def xy_plane() -> dict:
    """The pair (x, y) on the plane: two zeta variables, identity resolution."""
    return {
        "name": "xy_plane", "r": 2, "dim": 2,
        "components": [_comp("X", [1, 0], 1, False), _comp("Y", [0, 1], 1, False)],
        "strata": [
            _stratum([], "(L-1)^2", False, "(q-1)^2"),
            _stratum(["X"], "L-1", False, "q-1"),
            _stratum(["Y"], "L-1", False, "q-1"),
            _stratum(["X", "Y"], "1", True, "1"),
        ],
    }


def An_surface(n: int) -> dict:
    """Minimal resolution of the A_n surface singularity: a chain of n lines, all crepant."""
    if n < 1:
        raise UnknownFixture("An_surface needs n >= 1")
    ids = [f"C{i}" for i in range(1, n + 1)]
    strata = [_stratum([], "L^2-1", False)]
    for i, cid in enumerate(ids):
        if n == 1:
            e = "L+1"
        elif i in (0, n - 1):
            e = "L"
        else:
            e = "L-1"
        strata.append(_stratum([cid], e, True))
    for a, b in zip(ids, ids[1:]):
        strata.append(_stratum([a, b], "1", True))
    return {"name": f"An_surface({n})", "r": 0, "dim": 2, "ambient": "quotient",
            "components": [_comp(c, [], 1) for c in ids], "strata": strata}


def A1_blowup() -> dict:
    """An_surface(1) with a point of the exceptional line blown up (discrepancy 1)."""
    return {
        "name": "A1_blowup", "r": 0, "dim": 2, "ambient": "quotient",
        "components": [_comp("E1", [], 1), _comp("E2", [], 2)],
        "strata": [
            _stratum([], "L^2-1", False),
            _stratum(["E1"], "L", True),
            _stratum(["E2"], "L", True),
            _stratum(["E1", "E2"], "1", True),
        ],
    }


def third_11() -> dict:
    """The cone over the twisted cubic, C^2/(1/3)(1,1): one (-3)-curve, discrepancy -1/3."""
    return {
        "name": "third_11", "r": 0, "dim": 2, "ambient": "quotient",
        "components": [_comp("E", [], "2/3")],
        "strata": [_stratum([], "L^2-1", False), _stratum(["E"], "L+1", True)],
    }


def affine(d: int) -> dict:
    """Affine d-space with the trivial resolution and no divisor."""
    return {"name": f"affine({d})", "r": 0, "dim": d, "components": [],
            "strata": [_stratum([], f"L^{d}", False, f"q^{d}")]}


_SIMPLE = {
    "node": node, "cuspA": cuspA, "cuspB": cuspB, "line2": line2, "xy_plane": xy_plane,
    "A1_blowup": A1_blowup, "third_11": third_11,
}
_INDEXED = {"xN": xN, "An_surface": An_surface, "affine": affine}

NAMES = ["xN(N)", "node", "cuspA", "cuspB", "line2", "xy_plane",
         "An_surface(n)", "A1_blowup", "third_11", "affine(d)"]


def document(name: str) -> dict:
    name = name.strip()
    if name in _SIMPLE:
        return _SIMPLE[name]()
    m = re.fullmatch(r"(\w+?)\((\d+)\)", name)
    if m and m.group(1) in _INDEXED and int(m.group(2)) >= 1:
        return _INDEXED[m.group(1)](int(m.group(2)))
    raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")


def build(name: str) -> ResolutionData:
    return parse_resolution(document(name))
