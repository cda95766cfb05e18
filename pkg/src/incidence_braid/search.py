"""Brute-force censuses of braided automorphisms on tiny posets, and randomized family sweeps.

Pruned enumeration walks the seed coordinates: one corner coefficient per column
(the opposite corner is forced by the counit) and the height-(1,1) units that
are not fixed by configuration equalities. Unpruned enumeration walks every
coefficient of the support pattern and exists to validate the pruned one.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from itertools import product

from .braidcheck import braid_residual
from .braiding import (LambdaTensor, RestrictionError, SeedData, SeedError, SetSolution,
                       build_from_seed, check_set_solution, chain_factor_keys, column_support,
                       configurations, ex_keys, graded_unit_key, one_one_keys, support_keys,
                       verify_structure)
from .coalgebra import IntervalBasis
from .families import (FamilyConstraintError, FamilyInstance, family_membership, family_params,
                       random_instance, realize, symbols)
from .poset import Poset
from .scalars import Field

DEFAULT_LIMIT = 10 ** 7


class CapacityExceeded(RuntimeError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"search space has {size} candidates, above the cap of {limit}")
        self.size = size
        self.limit = limit


@dataclass
class SearchSpec:
    poset: Poset
    field: Field
    restriction: SetSolution | None = None  # None enumerates every admissible restriction
    pruning: bool = True
    limit: int = DEFAULT_LIMIT


@dataclass
class CensusEntry:
    tensor: LambdaTensor
    restriction: SetSolution
    matches: list


@dataclass
class Census:
    spec: SearchSpec
    space_size: int = 0
    evaluated: int = 0
    rejections: Counter = dc_field(default_factory=Counter)
    entries: list = dc_field(default_factory=list)

    @property
    def solutions(self) -> list[LambdaTensor]:
        return [e.tensor for e in self.entries]

    def unmatched(self) -> list[CensusEntry]:
        return [e for e in self.entries if not e.matches]


# restrictions

def enumerate_restrictions(poset: Poset) -> list[SetSolution]:
    """Set-theoretic solutions whose translations are automorphisms constant on components."""
    comps = sorted(poset.connected_components, key=lambda c: min(poset.index[x] for x in c))
    autos = poset.automorphisms()
    comp_of = {x: i for i, c in enumerate(comps) for x in c}
    out = []
    for lefts in product(autos, repeat=len(comps)):
        for rights in product(autos, repeat=len(comps)):
            left = {(a, c): lefts[comp_of[a]][c] for a in poset.elements for c in poset.elements}
            right = {(a, c): rights[comp_of[c]][a] for a in poset.elements for c in poset.elements}
            try:
                s = SetSolution(poset, left, right)
            except RestrictionError:
                continue
            if s.check_order_data() is None and check_set_solution(s):
                out.append(s)
    return out


# configuration equalities among the height-(1,1) units

def _monomial(keys) -> Counter:
    return Counter(keys)


def configuration_equations(basis: IntervalBasis, s: SetSolution) -> list[Counter]:
    """Exponent vectors (lhs minus rhs) forced by configuration independence."""
    p = basis.poset
    eqs = []
    for key in support_keys(basis, s):
        e, f, g, h = key[4:]
        for ce in p.maximal_chains(e, f):
            for cg in p.maximal_chains(g, h):
                confs = configurations(len(ce) - 1, len(cg) - 1)
                base = _monomial(chain_factor_keys(s, key, ce, cg, confs[0])[2:])
                for conf in confs[1:]:
                    diff = Counter(base)
                    diff.subtract(_monomial(chain_factor_keys(s, key, ce, cg, conf)[2:]))
                    diff = Counter({k: v for k, v in diff.items() if v})
                    if diff:
                        eqs.append(diff)
    return eqs


def solve_unit_dependencies(units: list, equations: list[Counter]) -> tuple[list, dict, list]:
    """Split ``units`` into free and dependent ones.

    Returns (free, dependent, leftover): ``dependent`` maps a unit to an exponent
    vector over free units; ``leftover`` lists equations that could not be solved
    for a unit with exponent +-1 and must be checked per candidate.
    """
    order = {u: i for i, u in enumerate(units)}
    dependent: dict = {}
    leftover = []

    def substitute(vec: Counter) -> Counter:
        out = Counter()
        for k, v in vec.items():
            if k in dependent:
                for k2, v2 in dependent[k].items():
                    out[k2] += v * v2
            else:
                out[k] += v
        return Counter({k: v for k, v in out.items() if v})

    for eq in equations:
        vec = substitute(eq)
        if not vec:
            continue
        pivots = [k for k, v in vec.items() if v in (1, -1)]
        if not pivots:
            leftover.append(eq)
            continue
        piv = max(pivots, key=order.get)
        sign = vec[piv]
        expr = Counter({k: -v * sign for k, v in vec.items() if k != piv})
        for k, d in list(dependent.items()):
            if piv in d:
                c = d.pop(piv)
                for k2, v2 in expr.items():
                    d[k2] += c * v2
                dependent[k] = Counter({k2: v for k2, v in d.items() if v})
        dependent[piv] = expr
    free = [u for u in units if u not in dependent]
    return free, dependent, leftover


def _evaluate(vec: Counter, values: dict, one):
    out = one
    for k, v in vec.items():
        out = out * values[k] ** v
    return out


# the two enumeration modes

def _columns_by_height(basis: IntervalBasis) -> list[tuple]:
    cols = [(a, b, c, d) for (a, b), (c, d) in product(basis.pairs, repeat=2)
            if not (a == b and c == d)]
    return sorted(cols, key=lambda k: (basis.height(k[:2]) + basis.height(k[2:]),
                                       basis.index[k[:2]], basis.index[k[2:]]))


def _corner_plan(basis: IntervalBasis, s: SetSolution) -> list[tuple]:
    """Per column: (free corner key, forced corner key, middle factor key pairs)."""
    p = basis.poset
    plan = []
    for a, b, c, d in _columns_by_height(basis):
        ac = (a, b, c, d, s.L(a, c), s.L(a, c), s.R(a, c), s.R(a, c))
        bd = (a, b, c, d, s.L(b, d), s.L(b, d), s.R(b, d), s.R(b, d))
        middle = []
        for e in p.interval(s.L(a, c), s.L(a, d)):
            for g in p.interval(s.R(a, c), s.R(b, c)):
                if (e, g) in ((ac[4], ac[6]), (bd[4], bd[6])):
                    continue
                pp, q = s.Rinv(c, g), s.Linv(a, e)
                middle.append(((a, pp, c, q, e, e, g, g), (pp, b, q, d, e, e, g, g)))
        plan.append((ac, bd, middle))
    return plan


def _corner_value(key, ex: dict, s: SetSolution, one):
    a, b, c, d = key[:4]
    if a == b and c == d:
        return one if key[4:] == (s.L(a, c),) * 2 + (s.R(a, c),) * 2 else one - one
    return ex[key]


def is_solution(t: LambdaTensor) -> tuple[bool, str]:
    """Full verdict: zero braid residual and every structural check."""
    if not braid_residual(t).residual_is_zero:
        return False, "braid residual"
    rep = verify_structure(t)
    if not rep.passed:
        return False, rep.failures()[0]
    return True, ""


def pruned_space(basis: IntervalBasis, s: SetSolution, field: Field) -> dict:
    """Coordinates and size of the pruned candidate space for one restriction."""
    plan = _corner_plan(basis, s)
    units = one_one_keys(basis, s)
    free, dependent, leftover = solve_unit_dependencies(units, configuration_equations(basis, s))
    coords = len(plan) + len(free)
    return dict(plan=plan, units=units, free=free, dependent=dependent, leftover=leftover,
                coordinates=coords, size=field.modulus ** coords)


def unpruned_space(basis: IntervalBasis, s: SetSolution, field: Field) -> dict:
    cols = {}
    for a, b, c, d in _columns_by_height(basis):
        cols[a, b, c, d] = [(a, b, c, d) + out for out in column_support(basis, s, a, b, c, d)]
    coords = sum(len(v) for v in cols.values())
    return dict(columns=cols, coordinates=coords, size=field.modulus ** coords)


def _pruned_candidates(basis, s, field, space, census):
    one, zero = field.one(), field.zero()
    values = field.elements()
    plan, free, dependent = space["plan"], space["free"], space["dependent"]
    n_corner = len(plan)
    for combo in product(values, repeat=n_corner + len(free)):
        census.evaluated += 1
        units = dict(zip(free, combo[n_corner:]))
        if any(not v for v in units.values()):
            census.rejections["zero graded unit"] += 1
            continue
        for k, vec in dependent.items():
            units[k] = _evaluate(vec, units, one)
        ex = {}
        for (ac, bd, middle), v in zip(plan, combo[:n_corner]):
            ex[ac] = v
            total = v
            for k1, k2 in middle:
                total += _corner_value(k1, ex, s, one) * _corner_value(k2, ex, s, one)
            ex[bd] = zero - total
        try:
            t = build_from_seed(SeedData(ex, units, s), field, basis)
        except SeedError:
            census.rejections["configuration dependence"] += 1
            continue
        yield t


def _column_options(keys, s: SetSolution, field: Field) -> list[dict]:
    """Assignments of one column that pass its counit sum and its graded unit."""
    a, b, c, d = keys[0][:4]
    unit = graded_unit_key(s, a, b, c, d)
    out = []
    for combo in product(field.elements(), repeat=len(keys)):
        vals = dict(zip(keys, combo))
        if not vals.get(unit):
            continue
        if sum((v for k, v in vals.items() if k[4] == k[5] and k[6] == k[7]), field.zero()):
            continue
        out.append(vals)
    return out


def _unpruned_candidates(basis, s, field, space, census):
    one = field.one()
    fixed = {(a, a, c, c, s.L(a, c), s.L(a, c), s.R(a, c), s.R(a, c)): one
             for a in basis.poset.elements for c in basis.poset.elements}
    options = []
    skipped = 1
    for keys in space["columns"].values():
        opts = _column_options(keys, s, field)
        options.append(opts)
        skipped *= field.modulus ** len(keys)
    kept = 1
    for opts in options:
        kept *= len(opts)
    census.rejections["column counit or graded unit"] += skipped - kept
    census.evaluated += skipped - kept
    for combo in product(*options):
        census.evaluated += 1
        entries = dict(fixed)
        for part in combo:
            entries.update(part)
        yield LambdaTensor(basis, entries, field)


def exhaustive_search(spec: SearchSpec) -> Census:
    """Enumerate every candidate; refuse with CapacityExceeded when the space is too big."""
    if not spec.field.is_finite:
        raise ValueError("exhaustive search needs a finite field")
    basis = IntervalBasis(spec.poset)
    restrictions = [spec.restriction] if spec.restriction else enumerate_restrictions(spec.poset)
    spaces = []
    for s in restrictions:
        space = (pruned_space if spec.pruning else unpruned_space)(basis, s, spec.field)
        spaces.append((s, space))
    census = Census(spec, space_size=sum(sp["size"] for _, sp in spaces))
    if census.space_size > spec.limit:
        raise CapacityExceeded(census.space_size, spec.limit)
    for s, space in spaces:
        gen = (_pruned_candidates if spec.pruning else _unpruned_candidates)(
            basis, s, spec.field, space, census)
        for t in gen:
            ok, reason = is_solution(t)
            if not ok:
                census.rejections[reason] += 1
                continue
            census.entries.append(CensusEntry(t, s, family_membership(t)))
    return census


# family coverage

def all_family_instances(fid: str, field: Field) -> list[FamilyInstance]:
    """Every valid parameter assignment of ``fid`` over a finite field."""
    names = family_params(fid)
    out = []
    for combo in product(field.elements(), repeat=len(names)):
        inst = FamilyInstance(fid, dict(zip(names, combo)), field)
        try:
            symbols(inst)
        except (FamilyConstraintError, ZeroDivisionError, IndexError):
            continue
        out.append(inst)
    return out


def family_coverage(census: Census, family_ids) -> dict[str, tuple[int, int]]:
    """Per family: (instances found in the census, valid instances over the field)."""
    found = {frozenset(t.entries.items()) for t in census.solutions}
    out = {}
    for fid in family_ids:
        insts = all_family_instances(fid, census.spec.field)
        hit = sum(frozenset(realize(i).entries.items()) in found for i in insts)
        out[fid] = (hit, len(insts))
    return out


# sweeps

@dataclass
class SweepReport:
    family_id: str
    field: Field
    requested: int
    drawn: int = 0
    passed: int = 0
    failures: list = dc_field(default_factory=list)
    exact: bool = False
    note: str = ""

    @property
    def all_passed(self) -> bool:
        return self.drawn > 0 and self.passed == self.drawn


def random_family_sweep(family_id: str, draws: int, field: Field, seed: int | None = 0) -> SweepReport:
    """Draw, realize and fully verify; tiny finite spaces are enumerated exactly instead."""
    rep = SweepReport(family_id, field, draws)
    names = family_params(family_id)
    if field.is_finite and field.modulus ** len(names) <= draws:
        insts = all_family_instances(family_id, field)
        rep.exact = True
        rep.note = f"{len(insts)} valid parameter tuples enumerated exactly"
    else:
        rng = random.Random(seed)
        insts = []
        try:
            for _ in range(draws):
                insts.append(random_instance(family_id, field, rng=rng))
        except FamilyConstraintError as exc:
            rep.note = str(exc)
    if not insts and not rep.note:
        rep.note = f"no valid parameters for {family_id} over {field}"
    for inst in insts:
        rep.drawn += 1
        t = realize(inst)
        ok, reason = is_solution(t)
        if ok:
            rep.passed += 1
        else:
            rep.failures.append((inst.params, reason))
    return rep
