"""Structural analytics over finite semigroups.

Everything here reads only the multiplication table (callers pass reducts of
richer algebras or let us ignore add/star).  Scans are deterministic: first
witnesses are minimal in the ascending index order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import lcm

import numpy as np

from .constructions import (
    brandt_semigroup,
    ensure_group,
    group_identity,
    induced_algebra,
    ideal_violation,
)
from .core import FiniteAlgebra, mult_reduct
from .errors import NotAnIdeal, NotASubgroup, NotBrandt, SubgroupEnumerationBudget

SUBGROUP_SIZE_BUDGET = 16
SUBGROUP_MAX_GENERATORS = 3


def idempotents(alg: FiniteAlgebra) -> list[int]:
    mul = alg.mul
    return [int(x) for x in range(alg.size) if mul[x, x] == x]


def zero_element(alg: FiniteAlgebra) -> int | None:
    mul = alg.mul
    for z in range(alg.size):
        if (mul[z] == z).all() and (mul[:, z] == z).all():
            return z
    return None


def block_group_violation(alg: FiniteAlgebra) -> tuple[int, int] | None:
    """First pair (e, f) violating one of the two block-group implications."""
    mul = alg.mul
    n = alg.size
    for e in range(n):
        if mul[e, e] != e:
            continue
        for f in range(n):
            if e == f or mul[f, f] != f:
                continue
            if mul[e, f] == e and mul[f, e] == f:
                return (e, f)
            if mul[e, f] == f and mul[f, e] == e:
                return (e, f)
    return None


def is_block_group(alg: FiniteAlgebra) -> bool:
    return block_group_violation(alg) is None


def inverses_of(alg: FiniteAlgebra, a: int) -> list[int]:
    """All b with aba = a and bab = b."""
    mul = alg.mul
    out = []
    for b in range(alg.size):
        ab = mul[a, b]
        if mul[ab, a] == a and mul[mul[b, a], b] == b:
            out.append(b)
    return out


def inverse_report(alg: FiniteAlgebra) -> list[list[int]]:
    """inverses_of for every element, indexed by element."""
    return [inverses_of(alg, a) for a in range(alg.size)]


def unique_inverse_violation(alg: FiniteAlgebra) -> tuple[int, int, int] | None:
    """First (a, b, c) with b < c both inverses of a."""
    for a in range(alg.size):
        inv = inverses_of(alg, a)
        if len(inv) > 1:
            return (a, inv[0], inv[1])
    return None


def unique_inverse_check(alg: FiniteAlgebra) -> bool:
    return unique_inverse_violation(alg) is None


def principal_ideal(alg: FiniteAlgebra, a: int) -> frozenset[int]:
    """S^1 a S^1 = {a} + aS + Sa + SaS."""
    mul = alg.mul
    out = {int(a)}
    out.update(int(x) for x in mul[a])
    col = mul[:, a]
    out.update(int(x) for x in col)
    out.update(int(x) for x in mul[col].reshape(-1))
    return frozenset(out)


def j_classes(alg: FiniteAlgebra) -> list[list[int]]:
    """Classes of the mutual-ideal-containment relation, sorted by least member."""
    by_ideal: dict[frozenset[int], list[int]] = {}
    for a in range(alg.size):
        by_ideal.setdefault(principal_ideal(alg, a), []).append(a)
    return sorted(by_ideal.values(), key=lambda c: c[0])


def j_trivial(alg: FiniteAlgebra, subset=None) -> tuple[bool, tuple[int, int] | None]:
    """True iff distinct elements generate distinct principal ideals.

    With a subset, the check runs inside the induced subsemigroup but the
    witness is reported in the parent's indices.
    """
    if subset is not None:
        sub, _ = induced_algebra(mult_reduct(alg), subset)
        ok, w = j_trivial(sub)
        if w is None:
            return ok, None
        old = sorted(int(x) for x in subset)
        return ok, (old[w[0]], old[w[1]])
    seen: dict[frozenset[int], int] = {}
    for a in range(alg.size):
        ideal = principal_ideal(alg, a)
        if ideal in seen:
            return False, (seen[ideal], a)
        seen[ideal] = a
    return True, None


def idempotent_generated(alg: FiniteAlgebra) -> list[int]:
    """Carrier of the subsemigroup generated by all idempotents (mul only)."""
    es = idempotents(alg)
    members = set(es)
    mul = alg.mul
    queue = list(es)
    while queue:
        x = queue.pop()
        for y in list(members):
            for p in (int(mul[x, y]), int(mul[y, x])):
                if p not in members:
                    members.add(p)
                    queue.append(p)
    return sorted(members)


def maximal_subgroups(alg: FiniteAlgebra) -> list[tuple[int, list[int]]]:
    """For each idempotent e, the group of units of the local monoid eSe."""
    mul = alg.mul
    n = alg.size
    out = []
    for e in idempotents(alg):
        local = sorted({int(mul[mul[e, s], e]) for s in range(n)})
        members = []
        for a in local:
            if any(mul[a, b] == e and mul[b, a] == e for b in local):
                members.append(a)
        out.append((e, members))
    return out


def subgroup_union(alg: FiniteAlgebra) -> set[int]:
    """Union of all maximal subgroups: the elements lying in some subgroup."""
    out: set[int] = set()
    for _, members in maximal_subgroups(alg):
        out.update(members)
    return out


def _try_group(alg: FiniteAlgebra):
    mul = alg.mul
    n = alg.size
    e = None
    for c in range(n):
        if (mul[c] == np.arange(n)).all() and (mul[:, c] == np.arange(n)).all():
            e = c
            break
    if e is None:
        return None
    inv = [-1] * n
    for x in range(n):
        hits = np.nonzero(mul[x] == e)[0]
        for y in hits:
            if mul[y, x] == e:
                inv[x] = int(y)
                break
        if inv[x] < 0:
            return None
    return e, inv


def is_group(alg: FiniteAlgebra) -> bool:
    return _try_group(alg) is not None


@dataclass(frozen=True)
class BrandtRecognition:
    """Witness that a semigroup is I x G x I + 0, with an explicit isomorphism."""

    group: FiniteAlgebra
    index_count: int
    iso: tuple[int, ...]       # source index -> index in `target`
    target: FiniteAlgebra      # brandt_semigroup(group, index_count)


def is_brandt(alg: FiniteAlgebra) -> BrandtRecognition | None:
    """Recognize a Brandt semigroup constructively; None when it is not one."""
    mul = alg.mul
    n = alg.size
    z = zero_element(alg)
    if z is None or n < 2:
        return None
    if (mul == z).all():  # zero semigroup
        return None
    full = frozenset(range(n))
    inv = [0] * n
    for a in range(n):
        if a != z and principal_ideal(alg, a) != full:
            return None  # not 0-simple
        lst = inverses_of(alg, a)
        if len(lst) != 1:
            return None  # not inverse
        inv[a] = lst[0]
    idems = [e for e in idempotents(alg) if e != z]
    if not idems:
        return None
    e1 = idems[0]
    members = [a for a in range(n)
               if mul[a, inv[a]] == e1 and mul[inv[a], a] == e1]
    group, remap = induced_algebra(mult_reduct(alg), members)
    us = []
    for ei in idems:
        u = next((a for a in range(n)
                  if mul[a, inv[a]] == e1 and mul[inv[a], a] == ei), None)
        if u is None:
            return None
        us.append(u)
    g_n = group.size
    count = len(idems)
    if n != count * count * g_n + 1:
        return None
    target = brandt_semigroup(group, count)
    iso = [0] * n
    for x in range(n):
        if x == z:
            continue
        rows = [i for i, ei in enumerate(idems) if mul[ei, x] == x]
        cols = [j for j, ej in enumerate(idems) if mul[x, ej] == x]
        if len(rows) != 1 or len(cols) != 1:
            return None
        i, j = rows[0], cols[0]
        gx = int(mul[mul[us[i], x], inv[us[j]]])
        if gx not in remap:
            return None
        iso[x] = 1 + (i * g_n + remap[gx]) * count + j
    iso_arr = np.array(iso)
    if sorted(iso) != list(range(n)):
        return None
    if not np.array_equal(iso_arr[mul], target.mul[np.ix_(iso_arr, iso_arr)]):
        return None
    return BrandtRecognition(group, count, tuple(iso), target)


# ---------------------------------------------------------------------------
# principal series


@dataclass
class SeriesReport:
    """A maximal chain of ideals with per-factor classification and the derived
    parameters: h the height, m the lcm of subgroup exponents, k the largest
    subgroup derived length (floored at 1), q = 2^h m, r = kh + h + k."""

    chain: list[list[int]]
    factors: list[dict]
    h: int
    m: int
    k: int
    k_floored: bool
    q: int
    r: int
    brandt_series: bool = field(default=False)

    def to_dict(self) -> dict:
        return {
            "series": [{"ideal": ideal, "kind": kind} for ideal, kind in
                       zip(self.chain, self.factors)],
            "h": self.h, "m": self.m, "k": self.k, "k_floored": self.k_floored,
            "q": self.q, "r": self.r, "brandt_series": self.brandt_series,
        }


def _classify_bottom(alg: FiniteAlgebra, kernel: list[int]) -> dict:
    sub, _ = induced_algebra(mult_reduct(alg), kernel)
    got = _try_group(sub)
    if got is not None:
        return {"kind": "group", "order": sub.size}
    return {"kind": "other", "size": sub.size}


def _classify_factor(alg: FiniteAlgebra, cls: list[int]) -> dict:
    # Rees quotient of one J-class over everything below it: class + fresh zero
    size = len(cls) + 1
    remap = {x: i + 1 for i, x in enumerate(cls)}
    table = [[0] * size for _ in range(size)]
    mul = alg.mul
    for x in cls:
        for y in cls:
            table[remap[x]][remap[y]] = remap.get(int(mul[x, y]), 0)
    labels = ["0"] + [f"c{i}" for i in range(1, size)]
    factor = FiniteAlgebra("semigroup", tuple(labels), table)
    if all(v == 0 for row in table for v in row):
        return {"kind": "zero", "size": size}
    rec = is_brandt(factor)
    if rec is not None:
        return {"kind": "brandt", "group_order": rec.group.size,
                "index_count": rec.index_count}
    return {"kind": "other", "size": size}


def principal_series(alg: FiniteAlgebra) -> SeriesReport:
    """Maximal ideal chain built one J-class at a time along the J-order,
    ties broken by least element index; factors classified; (h,m,k,q,r) filled."""
    classes = j_classes(alg)
    ideals = {cls[0]: principal_ideal(alg, cls[0]) for cls in classes}
    below: dict[int, set[int]] = {}
    for cls in classes:
        rep = cls[0]
        below[rep] = {other[0] for other in classes
                      if other[0] != rep and other[0] in ideals[rep]}
    remaining = {cls[0]: cls for cls in classes}
    chain: list[list[int]] = []
    factors: list[dict] = []
    current: set[int] = set()
    while remaining:
        ready = [rep for rep in remaining if not (below[rep] & remaining.keys())]
        rep = min(ready)
        cls = remaining.pop(rep)
        if not chain:
            factors.append(_classify_bottom(alg, cls))
        else:
            factors.append(_classify_factor(alg, cls))
        current |= set(cls)
        chain.append(sorted(current))
    h = len(chain) - 1
    m = 1
    k = 1
    floored = True
    for e, members in maximal_subgroups(alg):
        sub, _ = induced_algebra(mult_reduct(alg), members)
        m = lcm(m, group_exponent(sub))
        d = derived_length(sub)
        if d is not None and d > 1:
            k = max(k, d)
            floored = False
    q = (2**h) * m
    r = k * h + h + k
    brandt = factors[0]["kind"] == "group" and all(
        f["kind"] in ("brandt", "zero") for f in factors[1:])
    return SeriesReport(chain, factors, h, m, k, floored, q, r, brandt)


def fd_property(alg: FiniteAlgebra, brandt_ideal) -> tuple[bool, tuple[int, int] | None]:
    """For a Brandt ideal B: every idempotent f and b in B give fb, bf in {b, 0}."""
    ideal = sorted(int(x) for x in brandt_ideal)
    bad = ideal_violation(alg, ideal)
    if bad is not None:
        raise NotAnIdeal("the given set is not an ideal", witness=bad)
    sub, _ = induced_algebra(mult_reduct(alg), ideal)
    rec = is_brandt(sub)
    if rec is None:
        raise NotBrandt("the ideal is not a Brandt semigroup")
    z = ideal[rec.iso.index(0)]
    mul = alg.mul
    for f in idempotents(alg):
        for b in ideal:
            if int(mul[f, b]) not in (b, z) or int(mul[b, f]) not in (b, z):
                return False, (f, b)
    return True, None


def satisfies_power_identity(alg: FiniteAlgebra, e1: int, e2: int):
    """Element-wise check of x^e1 = x^e2; returns (ok, first bad element)."""
    from .terms import element_power

    for x in range(alg.size):
        if element_power(alg, x, e1) != element_power(alg, x, e2):
            return False, x
    return True, None


def stabilizing_power(alg: FiniteAlgebra) -> int | None:
    """Least p with x^p = x^(p+1) for every x; None if the semigroup is not
    aperiodic."""
    mul = alg.mul
    powers = list(range(alg.size))
    for p in range(1, 2 * alg.size + 2):
        if all(mul[v, x] == v for x, v in enumerate(powers)):
            return p
        powers = [int(mul[v, x]) for x, v in enumerate(powers)]
    return None


# ---------------------------------------------------------------------------
# group analytics


def element_order(alg: FiniteAlgebra, x: int, identity: int) -> int:
    mul = alg.mul
    order = 1
    y = x
    while y != identity:
        y = int(mul[y, x])
        order += 1
        if order > alg.size:
            raise ValueError("element order exceeds the carrier; not a group?")
    return order


def group_exponent(alg: FiniteAlgebra) -> int:
    e, _ = ensure_group(alg)
    return lcm(*[element_order(alg, x, e) for x in range(alg.size)]) if alg.size else 1


def _closure(mul, seed) -> frozenset[int]:
    members = set(seed)
    queue = list(members)
    while queue:
        x = queue.pop()
        for y in list(members):
            for p in (int(mul[x, y]), int(mul[y, x])):
                if p not in members:
                    members.add(p)
                    queue.append(p)
    return frozenset(members)


def derived_series(alg: FiniteAlgebra) -> list[frozenset[int]]:
    """G, G', G'', ... down to the first repetition."""
    e, inv = ensure_group(alg)
    mul = alg.mul
    series = [frozenset(range(alg.size))]
    while True:
        cur = series[-1]
        comms = {e}
        for a in cur:
            for b in cur:
                comms.add(int(mul[mul[mul[inv[a], inv[b]], a], b]))
        nxt = _closure(mul, comms)
        if nxt == cur:
            return series
        series.append(nxt)


def derived_length(alg: FiniteAlgebra) -> int | None:
    """Steps until the derived series hits the trivial group; None otherwise."""
    series = derived_series(alg)
    if len(series[-1]) != 1:
        return None
    return len(series) - 1


def is_solvable(alg: FiniteAlgebra) -> bool:
    return derived_length(alg) is not None


def subgroups_of(alg: FiniteAlgebra,
                 max_generators: int = SUBGROUP_MAX_GENERATORS,
                 size_budget: int = SUBGROUP_SIZE_BUDGET) -> list[frozenset[int]]:
    """All subgroups reachable as closures of <= max_generators elements.

    Complete for the shipped group families up to the size budget; larger
    groups are refused rather than silently under-enumerated.
    """
    ensure_group(alg)
    if alg.size > size_budget:
        raise SubgroupEnumerationBudget(
            f"|G| = {alg.size} exceeds the enumeration budget {size_budget}")
    mul = alg.mul
    found = set()
    elems = range(alg.size)
    for r in range(1, max_generators + 1):
        for gens in combinations(elems, r):
            found.add(_closure(mul, gens))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_dedekind(alg: FiniteAlgebra, subgroups=None) -> bool:
    """True iff every subgroup is normal."""
    if subgroups is None:
        subgroups = subgroups_of(alg)
    _, inv = ensure_group(alg)
    mul = alg.mul
    for H in subgroups:
        for g in range(alg.size):
            if {int(mul[mul[g, h], inv[g]]) for h in H} != set(H):
                return False
    return True


def has_quaternion_subgroup(alg: FiniteAlgebra, subgroups=None) -> bool:
    """Detect an 8-element subgroup that is non-abelian with a unique involution."""
    if subgroups is None:
        subgroups = subgroups_of(alg)
    e, _ = ensure_group(alg)
    mul = alg.mul
    for H in subgroups:
        if len(H) != 8:
            continue
        hs = sorted(H)
        if all(mul[a, b] == mul[b, a] for a in hs for b in hs):
            continue
        involutions = [x for x in hs if x != e and mul[x, x] == e]
        if len(involutions) == 1:
            return True
    return False


@dataclass(frozen=True)
class GroupAnalytics:
    exponent: int
    derived_length: int | None
    solvable: bool
    dedekind: bool
    has_quaternion_subgroup: bool

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "derived_length": self.derived_length,
            "solvable": self.solvable,
            "dedekind": self.dedekind,
            "has_quaternion_subgroup": self.has_quaternion_subgroup,
        }


def group_analytics(alg: FiniteAlgebra,
                    size_budget: int = SUBGROUP_SIZE_BUDGET) -> GroupAnalytics:
    subs = subgroups_of(alg, size_budget=size_budget)
    d = derived_length(alg)
    return GroupAnalytics(
        exponent=group_exponent(alg),
        derived_length=d,
        solvable=d is not None,
        dedekind=is_dedekind(alg, subs),
        has_quaternion_subgroup=has_quaternion_subgroup(alg, subs),
    )


def normalizer(alg: FiniteAlgebra, subgroup) -> list[int]:
    """{g : gH = Hg} for a subgroup H; contains H and is itself a subgroup."""
    H = sorted(int(x) for x in subgroup)
    closure = _closure(alg.mul, H)
    e = group_identity(alg)
    if set(H) != set(closure) or e not in closure:
        raise NotASubgroup("the given set is not a subgroup")
    mul = alg.mul
    out = []
    for g in range(alg.size):
        if {int(mul[g, h]) for h in H} == {int(mul[h, g]) for h in H}:
            out.append(g)
    return out
