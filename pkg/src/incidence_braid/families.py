"""Classified braidings on x < y (9 x 9 matrices) and on x < y > z (25 x 25 matrices).

Matrices are laid out with rows = outputs and columns = inputs over the basis
order of :class:`IntervalBasis`, i.e. (x,x), (x,y), (y,y) for the chain and
(x,x), (x,y), (y,y), (z,y), (z,z) for the vee.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .braiding import LambdaTensor
from .coalgebra import IntervalBasis
from .poset import Poset, chain, vee
from .scalars import Field, Q, random_scalar


class FamilyConstraintError(ValueError):
    """A parameter assignment violates a clause of the family definition."""


@dataclass(frozen=True)
class FamilyInstance:
    family_id: str
    params: dict
    field: Field = Q

    def realize(self) -> LambdaTensor:
        return realize(self)


def flip_solution(p: Poset, field: Field = Q) -> LambdaTensor:
    basis = IntervalBasis(p)
    return LambdaTensor(basis, {x + y + y + x: 1 for x, y in product(basis.pairs, repeat=2)}, field)


def _require(ok: bool, clause: str):
    if not ok:
        raise FamilyConstraintError(clause)


# ---------------------------------------------------------------- 9 x 9 family

T56_IDS = ("T56-1", "T56-2a", "T56-2b", "T56-3a", "T56-3b", "T56-4a-i", "T56-4a-ii",
           "T56-4b-i", "T56-4b-ii", "T56-4c")

T56_PARAMS = {
    "T56-1": ("alpha1", "alpha2", "alpha3"),
    "T56-2a": ("alpha1", "alpha3", "Gamma1"),
    "T56-2b": ("alpha1", "alpha3", "Gamma1"),
    "T56-3a": ("beta1", "beta2", "Gamma1"),
    "T56-3b": ("beta1", "beta3"),
    "T56-4a-i": ("C", "beta2", "beta4"),
    "T56-4a-ii": ("beta4", "Gamma1"),
    "T56-4b-i": ("beta1", "beta3", "Gamma1"),
    "T56-4b-ii": ("beta1", "beta2", "beta4"),
    "T56-4c": ("C", "beta1", "beta2", "beta3"),
}


def t56_symbols(a1, a2, a3, a4, b1, b2, b3, b4, G1) -> dict:
    """All named entries of the 9 x 9 matrix from its free symbols."""
    G2, G3 = -b2 * b4, -b1 * b3
    return dict(alpha1=a1, alpha2=a2, alpha3=a3, alpha4=a4, beta1=b1, beta2=b2, beta3=b3,
                beta4=b4, Gamma1=G1, Gamma2=G2, Gamma3=G3, Gamma4=-(G1 + G2 + G3),
                A=a1 * a3, B1=a2 * b4, B2=a1 * b3, B3=-a4 * b2, B4=-a3 * b1)


def t56_rows(sym: dict, one) -> list[list]:
    s = sym
    z = one - one
    return [
        [one, s["beta1"], z, s["beta2"], s["Gamma1"], z, z, z, z],
        [z, z, z, s["alpha2"], s["B1"], z, z, z, z],
        [z, z, z, -s["beta2"], s["Gamma2"], z, one, s["beta4"], z],
        [z, s["alpha1"], z, z, s["B2"], z, z, z, z],
        [z, z, z, z, s["A"], z, z, z, z],
        [z, z, z, z, s["B3"], z, z, s["alpha4"], z],
        [z, -s["beta1"], one, z, s["Gamma3"], s["beta3"], z, z, z],
        [z, z, z, z, s["B4"], s["alpha3"], z, z, z],
        [z, z, z, z, s["Gamma4"], -s["beta3"], z, -s["beta4"], one],
    ]


def _t56_free(fid: str, p: dict, F: Field) -> tuple:
    """Validate the clauses of ``fid`` and return (a1, a2, a3, a4, b1, b2, b3, b4, G1)."""
    one, zero = F.one(), F.zero()
    g = {k: F(v) for k, v in p.items()}
    missing = [k for k in T56_PARAMS[fid] if k not in g]
    if missing:
        raise FamilyConstraintError(f"missing parameters {missing}")
    if fid == "T56-1":
        a1, a2, a3 = g["alpha1"], g["alpha2"], g["alpha3"]
        _require(a1 and a2 and a3, "alpha1, alpha2, alpha3 in K^x")
        return a1, a2, a3, a1 * a3 / a2, zero, zero, zero, zero, zero
    if fid in ("T56-2a", "T56-2b"):
        a1, a3, G1 = g["alpha1"], g["alpha3"], g["Gamma1"]
        _require(a1 * a1 == one and a3 * a3 == one, "alpha1 = +-1 and alpha3 = +-1")
        if fid == "T56-2a":
            _require(a1 * a3 == one, "alpha1 * alpha3 = 1")
        else:
            _require(a1 * a3 == -one, "alpha1 * alpha3 = -1")
        _require(bool(G1), "Gamma1 in K^x")
        return a1, a1, a3, a3, zero, zero, zero, zero, G1
    if fid == "T56-3a":
        b1, b2, G1 = g["beta1"], g["beta2"], g["Gamma1"]
        _require(bool(b1) or bool(b2), "(beta1, beta2) != (0, 0)")
        return one, one, one, one, b1, b2, b2, b1, G1
    if fid == "T56-3b":
        b1, b3 = g["beta1"], g["beta3"]
        _require(bool(b1 + b3), "beta1 + beta3 != 0")
        return one, one, one, one, b1, -b1, b3, -b3, b1 * b3
    if fid == "T56-4a-i":
        C, b2, b4 = g["C"], g["beta2"], g["beta4"]
        _require(bool(C), "C in K^x")
        _require(bool(b2) or bool(b4), "(beta2, beta4) != (0, 0)")
        a2 = one + C * b2
        b3 = b2 + a2 * b4
        for b in (b2, b3, b4):
            _require(C * b != -one, "C beta_i != -1 for all i")
        return one, a2, one + C * b3, one + C * b4, zero, b2, b3, b4, a2 * b4 / C
    if fid == "T56-4a-ii":
        b4, G1 = g["beta4"], g["Gamma1"]
        _require(bool(b4), "beta4 in K^x")
        _require(F.characteristic != 2, "characteristic != 2")
        _require(G1 != -b4 * b4 / 2, "Gamma1 in K \\ {-beta4^2/2}")
        return one, one, -one, -one, zero, zero, b4, b4, G1
    if fid == "T56-4b-i":
        b1, b3, G1 = g["beta1"], g["beta3"], g["Gamma1"]
        _require(F.characteristic != 2, "characteristic != 2")
        _require(bool(b1), "beta1 in K^x")
        _require(b3 != b1 / 2, "beta3 in K \\ {beta1/2}")
        if b3 not in (zero, b1):
            _require(G1 == b1 * (b1 + b3) / 2,
                     "Gamma1 = beta1 (beta1 + beta3)/2 unless beta3 in {0, beta1}")
        a3 = one - 2 * b3 / b1
        return -one, -one, a3, a3, b1, b1, b3, b3, G1
    if fid == "T56-4b-ii":
        b1, b2, b4 = g["beta1"], g["beta2"], g["beta4"]
        _require(F.characteristic != 2, "characteristic != 2")
        _require(bool(b1), "beta1 in K^x")
        _require(b2 != b1, "beta2 in K \\ {beta1}")
        b3 = 2 * b2 * b4 / b1 + b1 - b2 - b4
        for b in (b2, b3, b4):
            _require(b != b1 / 2, "beta_i != beta1/2 for all i")
        a = [one - 2 * b / b1 for b in (b1, b2, b3, b4)]
        G1 = (b1 * b1 - b4 * b1 + 2 * b2 * b4) / 2
        return a[0], a[1], a[2], a[3], b1, b2, b3, b4, G1
    if fid == "T56-4c":
        C, b1, b2, b3 = g["C"], g["beta1"], g["beta2"], g["beta3"]
        _require(bool(C), "C in K^x")
        _require(bool(b1), "beta1 in K^x \\ {-1/C}")
        for b in (b1, b2, b3):
            _require(C * b != -one, "beta1, beta2, beta3 != -1/C")
        b4 = (b1 - b2 + b3 + b1 * b3 * C) / (one + b2 * C)
        _require(C * b4 != -one, "alpha4 = 1 + C beta4 in K^x")
        a = [one + C * b for b in (b1, b2, b3, b4)]
        return a[0], a[1], a[2], a[3], b1, b2, b3, b4, (b3 * a[0] - b2) / C
    raise FamilyConstraintError(f"unknown family {fid!r}")


def theorem56_symbols(inst: FamilyInstance) -> dict:
    return t56_symbols(*_t56_free(inst.family_id, inst.params, inst.field))


def theorem56_matrix(inst: FamilyInstance) -> LambdaTensor:
    F = inst.field
    rows = t56_rows(theorem56_symbols(inst), F.one())
    return LambdaTensor.from_matrix(IntervalBasis(chain("x", "y")), rows, F)


# ---------------------------------------------------------------- 25 x 25 family

TAB1_IDS = ("TAB1-1", "TAB1-2a", "TAB1-2b", "TAB1-3a", "TAB1-3b", "TAB1-3c", "TAB1-4a", "TAB1-4b")

TAB1_PARAMS = {
    "TAB1-1": ("alpha1", "alpha4", "alpha6", "C1", "C2"),
    "TAB1-2a": ("C1", "C2", "eps1", "eps4", "eps6", "Gamma7"),
    "TAB1-2b": ("C1", "C2", "eps1", "eps4", "Gamma7", "Gamma16"),
    "TAB1-3a": ("beta1", "C1", "Gamma1", "Gamma10"),
    "TAB1-3b": ("beta1", "beta2", "C1", "C4", "Gamma1", "Gamma10"),
    "TAB1-3c": ("beta1", "beta2", "beta5", "C1"),
    "TAB1-4a": ("alpha1", "alpha4", "alpha6", "C1", "C2", "C3", "C4"),
    "TAB1-4b": ("C1", "C2", "eps1", "eps4", "eps6", "C3", "C4", "Gamma10"),
}

# nonzero positions of the 25 x 25 matrix: 1-based row -> {1-based column: symbol}
FIGURE = {
    1: {19: "G13", 20: "b11", 24: "b12", 25: "1"},
    2: {19: "B13", 20: "a11"},
    3: {9: "G5", 10: "-b5", 14: "b9", 15: "1", 19: "G14", 20: "-b11"},
    4: {9: "B5", 10: "a5"},
    5: {4: "b7", 5: "1", 9: "G6", 10: "b5"},
    6: {19: "B14", 24: "a12"},
    7: {19: "A4"},
    8: {9: "B6", 14: "a9", 19: "B15"},
    9: {9: "A2"},
    10: {4: "a7", 9: "B7"},
    11: {17: "G9", 18: "b10", 19: "G15", 22: "-b6", 23: "1", 24: "-b12"},
    12: {17: "B9", 18: "a10", 19: "B16"},
    13: {7: "G1", 8: "-b3", 9: "G7", 12: "-b4", 13: "1", 14: "-b9", 17: "G10", 18: "-b10", 19: "G16"},
    14: {7: "B1", 8: "a3", 9: "B8"},
    15: {2: "-b1", 3: "1", 4: "-b7", 7: "G2", 8: "b3", 9: "G8"},
    16: {17: "B10", 22: "a6"},
    17: {17: "A3"},
    18: {7: "B2", 12: "a4", 17: "B11"},
    19: {7: "A1"},
    20: {2: "a1", 7: "B3"},
    21: {16: "b8", 17: "G11", 21: "1", 22: "b6"},
    22: {16: "a8", 17: "B12"},
    23: {6: "-b2", 7: "G3", 11: "1", 12: "b4", 16: "-b8", 17: "G12"},
    24: {6: "a2", 7: "B4"},
    25: {1: "1", 2: "b1", 6: "b2", 7: "G4"},
}


def _symbol_positions() -> dict[str, tuple[int, int]]:
    """Where to read each plain symbol back from the matrix (0-based row, col)."""
    pos = {}
    for r, row in FIGURE.items():
        for c, s in row.items():
            if s != "1" and not s.startswith("-") and s not in pos:
                pos[s] = (r - 1, c - 1)
    return pos


SYMBOL_POSITIONS = _symbol_positions()


def table1_derived(base: dict) -> dict:
    """Fill every Figure symbol from alpha1, alpha4, alpha6, C1, C2, beta1..12, Gamma1, 7, 10, 16."""
    v = {"a1": base["alpha1"], "a4": base["alpha4"], "a6": base["alpha6"]}
    C1, C2 = base["C1"], base["C2"]
    for j in range(1, 13):
        v[f"b{j}"] = base[f"beta{j}"]
    for k in (1, 7, 10, 16):
        v[f"G{k}"] = base[f"Gamma{k}"]
    Cxy = 1 / (C1 * C1)
    v["a2"], v["a3"], v["a5"] = C2 * v["a1"], C2 * v["a4"], C2 * v["a6"]
    for k in range(7, 13):
        v[f"a{k}"] = v[f"a{13 - k}"] / Cxy
    a = lambda k: v[f"a{k}"]
    b = lambda k: v[f"b{k}"]
    v.update(A1=a(1) * a(3), A2=a(3) * a(7), A3=a(4) * a(8), A4=a(9) * a(11))
    B = {1: -a(3) * b(1), 2: -a(4) * b(2), 3: a(1) * b(3), 4: a(2) * b(4),
         5: a(5) * b(9), 6: -a(9) * b(5), 7: a(7) * b(3), 8: -a(3) * b(7),
         9: -a(10) * b(6), 10: a(6) * b(10), 11: -a(4) * b(8), 12: a(8) * b(4),
         13: a(11) * b(9), 14: a(12) * b(10), 15: -a(9) * b(11), 16: -a(10) * b(12)}
    v.update({f"B{k}": x for k, x in B.items()})
    G = {2: -b(1) * b(3), 3: -b(2) * b(4), 5: -b(5) * b(9), 8: -b(7) * b(3),
         9: -b(6) * b(10), 12: -b(8) * b(4), 14: -b(11) * b(9), 15: -b(10) * b(12)}
    v.update({f"G{k}": x for k, x in G.items()})
    v["G4"] = -(v["G1"] + v["G2"] + v["G3"])
    v["G6"] = -(v["G5"] + v["G7"] + v["G8"])
    v["G11"] = -(v["G9"] + v["G10"] + v["G12"])
    v["G13"] = -(v["G14"] + v["G15"] + v["G16"])
    v["Cxy"] = Cxy
    return v


def table1_rows(sym: dict, one) -> list[list]:
    zero = one - one
    rows = [[zero] * 25 for _ in range(25)]
    for r, row in FIGURE.items():
        for c, s in row.items():
            if s == "1":
                val = one
            elif s.startswith("-"):
                val = -sym[s[1:]]
            else:
                val = sym[s]
            rows[r - 1][c - 1] = val
    return rows


def G_closed_forms(F: Field, b: dict, C1, C2, C3, C4, a1, a4, a6, Gamma1=None, Gamma10=None,
                   Gamma16=None) -> dict:
    """G1..G7 evaluated at the given data; missing Gammas skip the forms that need them."""
    out = {}
    if Gamma10 is not None and b:
        out["G1"] = (-b[1] * b[3] * C1 + b[2] * b[4] * C1 + b[1] * b[5] * C1 - b[2] * b[6] * C1
                     + b[5] * C4 - b[6] * C4 + Gamma10)
    if Gamma1 is not None and b:
        out["G2"] = (-b[1] ** 2 * C1 ** 2 + b[1] * b[4] * C1 ** 2 - b[2] * b[6] * C1 ** 2
                     + b[3] * b[6] * C1 ** 2 + b[3] * C1 * C4 + b[4] * C1 * C4 + C4 ** 2
                     + C1 ** 2 * Gamma1)
    if b:
        out["G3"] = -C1 * (b[1] + b[2])
    if C3 is None:
        return out
    four = F(4)
    if Gamma16 is not None:
        out["G4"] = (-C3 ** 2 * (a1 * a6 * C1 ** 2 - 1) * (a4 * C1 * (a1 * C1 * C2 + C2 + 1) + 1)
                     - 2 * C3 * C4 * (a1 * a6 * C1 ** 2 + 1) * (a1 * a4 * C1 ** 2 * C2 - 1)
                     - C4 ** 2 * (a1 * a6 * C1 ** 2 - 1) * (a4 * C1 * (C2 * (a1 * C1 - 1) - 1) + 1)
                     + 4 * a1 * a6 * C1 ** 2 * Gamma16) / (four * C1 ** 2)
    if Gamma10 is not None:
        out["G5"] = -((-(C2 - 1) * (1 + a4 * C1 * (1 + C2 + a6 * C1 * C2)) * C3 ** 2
                       - 2 * a4 * C1 * (C2 ** 2 - 1) * C3 * C4
                       + (C2 - 1) * (1 + a4 * C1 * (a6 * C1 * C2 - C2 - 1)) * C4 ** 2
                       - 4 * C1 * C2 * Gamma10) / (four * C1))
    out["G6"] = (C3 ** 2 + a4 * C1 * C3 ** 2 + a4 * C1 * C2 * C3 ** 2 + a1 * a4 * C1 ** 2 * C2 * C3 ** 2
                 - 2 * C3 * C4 + 2 * a1 * a4 * C1 ** 2 * C2 * C3 * C4 + C4 ** 2 - a4 * C1 * C4 ** 2
                 - a4 * C1 * C2 * C4 ** 2 + a1 * a4 * C1 ** 2 * C2 * C4 ** 2) / four
    out["G7"] = (-C3 ** 2 - a4 * C1 * C3 ** 2 - a4 * C1 * C2 * C3 ** 2 - a4 * a6 * C1 ** 2 * C2 * C3 ** 2
                 + 2 * a4 * C1 * C3 * C4 - 2 * a4 * C1 * C2 * C3 * C4 + C4 ** 2 - a4 * C1 * C4 ** 2
                 - a4 * C1 * C2 * C4 ** 2 + a4 * a6 * C1 ** 2 * C2 * C4 ** 2) / four
    return out


def F_closed_forms(C1, C2, C3, C4, a1, a4, a6, two) -> dict[int, object]:
    alpha = {1: a1, 2: C2 * a1, 3: C2 * a4, 4: a4, 5: C2 * a6, 6: a6}
    out = {j: alpha[j] * (C4 - C3) / two - (C3 + C4) / (two * C1) for j in range(1, 7)}
    out.update({j: alpha[13 - j] * C1 * (C3 + C4) / two + (C3 - C4) / two for j in range(7, 13)})
    return out


def _eps_check(F: Field, C2, eps: list):
    _require(C2 == F.one() or C2 == -F.one(), "C2 in {+-1}")
    _require(bool(F.sqrt(C2)), "an epsilon with epsilon^2 = C2 exists in K")
    for e in eps:
        _require(e * e == C2, "eps_i in {+-epsilon} with epsilon^2 = C2")


def _table1_base(fid: str, p: dict, F: Field) -> dict:
    one, zero = F.one(), F.zero()
    g = {k: F(v) for k, v in p.items()}
    missing = [k for k in TAB1_PARAMS.get(fid, ()) if k not in g]
    if fid not in TAB1_PARAMS:
        raise FamilyConstraintError(f"unknown family {fid!r}")
    if missing:
        raise FamilyConstraintError(f"missing parameters {missing}")
    C1 = g["C1"]
    _require(bool(C1), "C1 in K^x")
    base = {f"beta{j}": zero for j in range(1, 13)}
    base.update(Gamma1=zero, Gamma7=zero, Gamma10=zero, Gamma16=zero, C1=C1)
    if fid == "TAB1-1":
        for k in ("alpha1", "alpha4", "alpha6", "C2"):
            _require(bool(g[k]), "alpha1, alpha4, alpha6, C1, C2 in K^x")
            base[k] = g[k]
        return base
    if fid in ("TAB1-2a", "TAB1-2b"):
        C2 = g["C2"]
        eps = [g["eps1"], g["eps4"], g["eps6"] if fid == "TAB1-2a" else g["eps1"]]
        _eps_check(F, C2, eps)
        base.update(C2=C2, alpha1=eps[0] / C1, alpha4=eps[1] / C1, alpha6=eps[2] / C1)
        if fid == "TAB1-2a":
            _require(bool(g["Gamma7"]), "Gamma7 in K^x")
            base["Gamma16"] = zero
        else:
            _require(bool(g["Gamma16"]), "Gamma16 in K^x")
            base["Gamma16"] = g["Gamma16"]
        base["Gamma7"] = g["Gamma7"]
        base["Gamma1"] = base["alpha1"] * base["alpha6"] * base["Gamma16"]
        base["Gamma10"] = C2 * base["Gamma7"]
        return base
    if fid.startswith("TAB1-3"):
        base.update(C2=one, alpha1=one / C1, alpha4=one / C1, alpha6=one / C1)
        b = {}
        if fid == "TAB1-3a":
            _require(bool(g["beta1"]), "beta1 in K^x")
            b = {j: g["beta1"] for j in range(1, 7)}
            C4 = -C1 * (b[1] + b[2])
            G1, G10 = g["Gamma1"], g["Gamma10"]
        elif fid == "TAB1-3b":
            b1, b2 = g["beta1"], g["beta2"]
            _require(b1 != b2, "beta1 != beta2")
            b = {1: b1, 2: b2, 3: b2, 4: b1, 5: b2, 6: b1}
            C4, G1, G10 = g["C4"], g["Gamma1"], g["Gamma10"]
        else:
            b1, b2, b5 = g["beta1"], g["beta2"], g["beta5"]
            _require(b2 != b5, "beta2 != beta5")
            b = {1: b1, 2: b2, 3: b2, 4: b1, 5: b5, 6: b1 + b2 - b5}
            C4 = -C1 * (b1 + b2)
            G1, G10 = b1 * b2, -b1 * b[6] * C1
        for j in range(1, 7):
            b[13 - j] = C4 + C1 * b[j]
        G = G_closed_forms(F, b, C1, one, None, C4, None, None, None, Gamma1=G1, Gamma10=G10)
        base.update({f"beta{j}": b[j] for j in range(1, 13)})
        base.update(Gamma1=G1, Gamma10=G10, Gamma7=G["G1"], Gamma16=G["G2"], C4=C4)
        return base
    # family 4
    _require(F.characteristic != 2, "characteristic != 2")
    C3, C4 = g["C3"], g["C4"]
    if fid == "TAB1-4a":
        for k in ("alpha1", "alpha4", "alpha6", "C2"):
            _require(bool(g[k]), "alpha1, alpha4, alpha6, C1, C2 in K^x")
        C2, a1, a4, a6 = g["C2"], g["alpha1"], g["alpha4"], g["alpha6"]
    else:
        C2 = g["C2"]
        _eps_check(F, C2, [g["eps1"], g["eps4"], g["eps6"]])
        a1, a4, a6 = g["eps1"] / C1, g["eps4"] / C1, g["eps6"] / C1
    b = F_closed_forms(C1, C2, C3, C4, a1, a4, a6, F(2))
    G = G_closed_forms(F, None, C1, C2, C3, C4, a1, a4, a6)
    G16 = G["G6"]
    G10 = G["G7"] / C1 if fid == "TAB1-4a" else g["Gamma10"]
    G = G_closed_forms(F, None, C1, C2, C3, C4, a1, a4, a6, Gamma10=G10, Gamma16=G16)
    base.update({f"beta{j}": b[j] for j in range(1, 13)})
    base.update(C2=C2, alpha1=a1, alpha4=a4, alpha6=a6, Gamma1=G["G4"], Gamma7=G["G5"],
                Gamma10=G10, Gamma16=G16, C3=C3, C4=C4)
    return base


def table1_symbols(inst: FamilyInstance) -> dict:
    base = _table1_base(inst.family_id, inst.params, inst.field)
    sym = table1_derived(base)
    sym.update({k: v for k, v in base.items() if k in ("C1", "C2", "C3", "C4")})
    return sym


def table1_matrix(inst: FamilyInstance) -> LambdaTensor:
    F = inst.field
    rows = table1_rows(table1_symbols(inst), F.one())
    return LambdaTensor.from_matrix(IntervalBasis(vee()), rows, F)


FAMILY_IDS = T56_IDS + TAB1_IDS


def family_params(fid: str) -> tuple[str, ...]:
    if fid in T56_PARAMS:
        return T56_PARAMS[fid]
    if fid in TAB1_PARAMS:
        return TAB1_PARAMS[fid]
    raise FamilyConstraintError(f"unknown family {fid!r}")


def realize(inst: FamilyInstance) -> LambdaTensor:
    if inst.family_id in T56_PARAMS:
        return theorem56_matrix(inst)
    if inst.family_id in TAB1_PARAMS:
        return table1_matrix(inst)
    raise FamilyConstraintError(f"unknown family {inst.family_id!r}")


def symbols(inst: FamilyInstance) -> dict:
    if inst.family_id in T56_PARAMS:
        return theorem56_symbols(inst)
    return table1_symbols(inst)


# ---------------------------------------------------------------- random draws

def _draw_raw(fid: str, F: Field, rng: random.Random) -> dict:
    def x(nonzero=False):
        return random_scalar(F, nonzero=nonzero, rng=rng, bound=9)

    def sign():
        return F.one() if rng.random() < 0.5 else -F.one()

    def eps_data():
        choices = [c for c in (F.one(), -F.one()) if F.sqrt(c)]
        C2 = rng.choice(choices)
        e = F.sqrt(C2)[0]
        return C2, e

    if fid == "T56-1":
        return dict(alpha1=x(True), alpha2=x(True), alpha3=x(True))
    if fid == "T56-2a":
        a1 = sign()
        return dict(alpha1=a1, alpha3=a1, Gamma1=x(True))
    if fid == "T56-2b":
        a1 = sign()
        return dict(alpha1=a1, alpha3=-a1, Gamma1=x(True))
    if fid == "T56-3a":
        return dict(beta1=x(), beta2=x(), Gamma1=x())
    if fid == "T56-3b":
        return dict(beta1=x(), beta3=x())
    if fid == "T56-4a-i":
        return dict(C=x(True), beta2=x(), beta4=x())
    if fid == "T56-4a-ii":
        return dict(beta4=x(True), Gamma1=x())
    if fid == "T56-4b-i":
        b1 = x(True)
        mode = rng.random()
        b3 = F.zero() if mode < 0.15 else b1 if mode < 0.3 else x()
        G1 = x() if b3 in (F.zero(), b1) else b1 * (b1 + b3) / 2
        return dict(beta1=b1, beta3=b3, Gamma1=G1)
    if fid == "T56-4b-ii":
        return dict(beta1=x(True), beta2=x(), beta4=x())
    if fid == "T56-4c":
        return dict(C=x(True), beta1=x(True), beta2=x(), beta3=x())
    if fid == "TAB1-1":
        return dict(alpha1=x(True), alpha4=x(True), alpha6=x(True), C1=x(True), C2=x(True))
    if fid in ("TAB1-2a", "TAB1-2b", "TAB1-4b"):
        C2, e = eps_data()
        out = dict(C1=x(True), C2=C2, eps1=sign() * e, eps4=sign() * e)
        if fid == "TAB1-2a":
            out.update(eps6=sign() * e, Gamma7=x(True))
        elif fid == "TAB1-2b":
            out.update(Gamma7=x(), Gamma16=x(True))
        else:
            out.update(eps6=sign() * e, C3=x(), C4=x(), Gamma10=x())
        return out
    if fid == "TAB1-3a":
        return dict(beta1=x(True), C1=x(True), Gamma1=x(), Gamma10=x())
    if fid == "TAB1-3b":
        return dict(beta1=x(), beta2=x(), C1=x(True), C4=x(), Gamma1=x(), Gamma10=x())
    if fid == "TAB1-3c":
        return dict(beta1=x(), beta2=x(), beta5=x(), C1=x(True))
    if fid == "TAB1-4a":
        return dict(alpha1=x(True), alpha4=x(True), alpha6=x(True), C1=x(True), C2=x(True),
                    C3=x(), C4=x())
    raise FamilyConstraintError(f"unknown family {fid!r}")


def random_instance(fid: str, field: Field = Q, rng: random.Random | None = None,
                    seed: int | None = None, attempts: int = 200) -> FamilyInstance:
    """Rejection-sample a valid parameter assignment."""
    rng = rng if rng is not None else random.Random(seed)
    last = None
    for _ in range(attempts):
        try:
            params = _draw_raw(fid, field, rng)
            inst = FamilyInstance(fid, params, field)
            symbols(inst)
            return inst
        except (FamilyConstraintError, ZeroDivisionError, IndexError) as exc:
            last = exc
    raise FamilyConstraintError(f"no valid parameters for {fid} over {field} "
                                f"after {attempts} attempts ({last})")


# ---------------------------------------------------------------- membership

def _t56_read(t: LambdaTensor) -> dict:
    m = t.to_map()
    z = t.zero
    return dict(alpha1=m.entry(3, 1, z), alpha2=m.entry(1, 3, z), alpha3=m.entry(7, 5, z),
                alpha4=m.entry(5, 7, z), beta1=m.entry(0, 1, z), beta2=m.entry(0, 3, z),
                beta3=m.entry(6, 5, z), beta4=m.entry(2, 7, z), Gamma1=m.entry(0, 4, z))


def _t56_candidates(fid: str, s: dict, F: Field) -> list[dict]:
    one = F.one()
    if fid == "T56-1":
        return [dict(alpha1=s["alpha1"], alpha2=s["alpha2"], alpha3=s["alpha3"])]
    if fid in ("T56-2a", "T56-2b"):
        return [dict(alpha1=s["alpha1"], alpha3=s["alpha3"], Gamma1=s["Gamma1"])]
    if fid == "T56-3a":
        return [dict(beta1=s["beta1"], beta2=s["beta2"], Gamma1=s["Gamma1"])]
    if fid == "T56-3b":
        return [dict(beta1=s["beta1"], beta3=s["beta3"])]
    if fid == "T56-4a-i":
        Cs = [(s[f"alpha{i}"] - one) / s[f"beta{i}"] for i in (2, 4) if s[f"beta{i}"]]
        return [dict(C=C, beta2=s["beta2"], beta4=s["beta4"]) for C in Cs[:1]]
    if fid == "T56-4a-ii":
        return [dict(beta4=s["beta4"], Gamma1=s["Gamma1"])]
    if fid == "T56-4b-i":
        return [dict(beta1=s["beta1"], beta3=s["beta3"], Gamma1=s["Gamma1"])]
    if fid == "T56-4b-ii":
        return [dict(beta1=s["beta1"], beta2=s["beta2"], beta4=s["beta4"])]
    if fid == "T56-4c":
        if not s["beta1"]:
            return []
        C = (s["alpha1"] - one) / s["beta1"]
        return [dict(C=C, beta1=s["beta1"], beta2=s["beta2"], beta3=s["beta3"])]
    return []


def _table1_read(t: LambdaTensor) -> dict:
    m = t.to_map()
    return {sym: m.entry(r, c, t.zero) for sym, (r, c) in SYMBOL_POSITIONS.items()}


def _solve_C3_C4(F: Field, s: dict, C1, C2, a1, a4, a6) -> list[tuple]:
    """(C3, C4) pairs whose F_j reproduce the observed betas, narrowed by Gamma16 = G6."""
    two = F(2)
    zero, one = F.zero(), F.one()
    f0 = F_closed_forms(C1, C2, zero, zero, a1, a4, a6, two)
    f3 = F_closed_forms(C1, C2, one, zero, a1, a4, a6, two)
    f4 = F_closed_forms(C1, C2, zero, one, a1, a4, a6, two)
    eqs = [(f3[j] - f0[j], f4[j] - f0[j], s[f"b{j}"] - f0[j]) for j in range(1, 13)]
    if F.is_finite:
        return [(x, y) for x in F.elements() for y in F.elements()
                if all(p * x + q * y == r for p, q, r in eqs)]
    # exact elimination on the 12 x 2 system
    rows = [list(e) for e in eqs]
    piv = []
    for col in (0, 1):
        for r in rows:
            if r[col] and all(r[c] == 0 for c in range(col)):
                inv = 1 / r[col]
                r[:] = [v * inv for v in r]
                for other in rows:
                    if other is not r and other[col]:
                        f = other[col]
                        other[:] = [u - f * v for u, v in zip(other, r)]
                piv.append((col, r))
                break
    if any(not r[0] and not r[1] and r[2] for r in rows):
        return []
    if len(piv) == 2:
        sol = {c: r[2] for c, r in piv}
        return [(sol[0], sol[1])]
    # one free direction: C = P + t D, then use Gamma16 = G6 (quadratic in t)
    if len(piv) == 1:
        col, r = piv[0]
        if col == 0:
            P, D = (r[2], zero), (-r[1], one)
        else:
            P, D = (zero, r[2]), (one, zero)
    else:
        return []
    target = s["G16"]

    def g6(t):
        return G_closed_forms(F, None, C1, C2, P[0] + t * D[0], P[1] + t * D[1], a1, a4, a6)["G6"] - target

    c0, c1, cm = g6(zero), g6(one), g6(-one)
    qa, qb = (c1 + cm) / two - c0, (c1 - cm) / two
    if qa:
        disc = qb * qb - 4 * qa * c0
        ts = [(-qb + r) / (two * qa) for r in F.sqrt(disc)]
    elif qb:
        ts = [-c0 / qb]
    else:
        ts = [zero]
    return [(P[0] + t * D[0], P[1] + t * D[1]) for t in ts]


def _table1_candidates(fid: str, s: dict, F: Field) -> list[dict]:
    if not s["a1"] or not s["a6"]:
        return []
    C2 = s["a2"] / s["a1"]
    out = []
    for C1 in F.sqrt(s["a7"] / s["a6"]):
        if not C1:
            continue
        a1, a4, a6 = s["a1"], s["a4"], s["a6"]
        eps = dict(eps1=a1 * C1, eps4=a4 * C1, eps6=a6 * C1)
        if fid == "TAB1-1":
            out.append(dict(alpha1=a1, alpha4=a4, alpha6=a6, C1=C1, C2=C2))
        elif fid == "TAB1-2a":
            out.append(dict(C1=C1, C2=C2, Gamma7=s["G7"], **eps))
        elif fid == "TAB1-2b":
            out.append(dict(C1=C1, C2=C2, eps1=eps["eps1"], eps4=eps["eps4"],
                            Gamma7=s["G7"], Gamma16=s["G16"]))
        elif fid == "TAB1-3a":
            out.append(dict(beta1=s["b1"], C1=C1, Gamma1=s["G1"], Gamma10=s["G10"]))
        elif fid == "TAB1-3b":
            out.append(dict(beta1=s["b1"], beta2=s["b2"], C1=C1, C4=s["b12"] - C1 * s["b1"],
                            Gamma1=s["G1"], Gamma10=s["G10"]))
        elif fid == "TAB1-3c":
            out.append(dict(beta1=s["b1"], beta2=s["b2"], beta5=s["b5"], C1=C1))
        elif fid in ("TAB1-4a", "TAB1-4b") and F.characteristic != 2:
            for C3, C4 in _solve_C3_C4(F, s, C1, C2, a1, a4, a6):
                if fid == "TAB1-4a":
                    out.append(dict(alpha1=a1, alpha4=a4, alpha6=a6, C1=C1, C2=C2, C3=C3, C4=C4))
                else:
                    out.append(dict(C1=C1, C2=C2, C3=C3, C4=C4, Gamma10=s["G10"], **eps))
    return out


def family_membership(t: LambdaTensor) -> list[tuple[str, dict]]:
    """All families (with solved parameters) that regenerate ``t`` exactly."""
    F = t.field
    pairs = t.basis.pairs
    if pairs == IntervalBasis(chain("x", "y")).pairs and t.poset == chain("x", "y"):
        ids, read, cands = T56_IDS, _t56_read, _t56_candidates
    elif t.poset == vee():
        ids, read, cands = TAB1_IDS, _table1_read, _table1_candidates
    else:
        return []
    s = read(t)
    out = []
    for fid in ids:
        try:
            options = cands(fid, s, F)
        except ZeroDivisionError:
            continue
        for params in options:
            inst = FamilyInstance(fid, params, F)
            try:
                if realize(inst) == t:
                    out.append((fid, params))
                    break
            except (FamilyConstraintError, ZeroDivisionError):
                continue
    return out
