"""Closed-form subgroup, cyclic-subgroup and element counts.

All divisions are exact integer divisions; a nonzero remainder means a
formula was applied outside its range and raises ArithmeticError.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from . import lattice
from .group import (
    GroupDescriptor,
    InvalidInput,
    PGroupType,
    divisors,
    euler_phi,
    exact_div,
    factorize,
    is_prime,
    primary_decomposition,
)
from .intlinalg import det, is_symmetric, leading_minors
from .report import KINDS, CountReport



def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")


def _geom(p: int, n: int) -> int:
    """1 + p + ... + p^(n-1) = (p^n - 1)/(p - 1)."""
    return exact_div(p**n - 1, p - 1)


# -- subgroup counts --------------------------------------------------------

def count_elementary(p: int, k: int, a: int) -> int:
    """Subgroups of order p^(k-a) in (Z_p)^k."""
    if not 0 <= a <= k:
        raise InvalidInput(f"index exponent {a} outside [0, {k}]")
    if a in (0, k):
        return 1
    shift = a * (a + 1) // 2
    return sum(p ** (sum(idx) - shift) for idx in itertools.combinations(range(1, k + 1), a))


def count_maximal(p: int, k: int) -> int:
    """Maximal subgroups of any abelian p-group of rank k."""
    if k < 1:
        raise InvalidInput("rank must be >= 1")
    return _geom(p, k)


def count_rank2_by_index(p: int, a1: int, a2: int, a: int) -> int:
    """Subgroups of order p^(a1+a2-a) in Z_{p^a1} x Z_{p^a2}, a1 <= a2."""
    if not 0 <= a1 <= a2:
        raise InvalidInput(f"need 0 <= a1 <= a2, got {a1}, {a2}")
    if not 0 <= a <= a1 + a2:
        raise InvalidInput(f"index exponent {a} outside [0, {a1 + a2}]")
    values = []
    if a <= a1:
        values.append(_geom(p, a + 1))
    if a1 <= a <= a2:
        values.append(_geom(p, a1 + 1))
    if a >= a2:
        values.append(_geom(p, a1 + a2 - a + 1))
    # overlapping ranges at a = a1 and a = a2 must agree
    if len(set(values)) != 1:
        raise ArithmeticError(f"branch disagreement at a={a}: {values}")
    return values[0]


def total_rank2(p: int, a1: int, a2: int) -> int:
    if not 0 <= a1 <= a2:
        raise InvalidInput(f"need 0 <= a1 <= a2, got {a1}, {a2}")
    num = ((a2 - a1 + 1) * p ** (a1 + 2) - (a2 - a1 - 1) * p ** (a1 + 1)
           - (a1 + a2 + 3) * p + (a1 + a2 + 1))
    return exact_div(num, (p - 1) ** 2)


def f(p: int, i: int, j: int) -> int:
    """Number of subgroups of Z_{p^i} x Z_{p^j}, symmetric in i, j."""
    if i < 0 or j < 0:
        raise InvalidInput("exponents must be non-negative")
    i, j = min(i, j), max(i, j)
    return total_rank2(p, i, j)


def f_expansion(p: int, i: int, j: int) -> int:
    """(j-i+1)p^i + (j-i+3)p^(i-1) + ... + (i+j+1), for i <= j."""
    i, j = min(i, j), max(i, j)
    return sum((j - i + 1 + 2 * t) * p ** (i - t) for t in range(i + 1))


# -- the quadratic form A_p(n) ----------------------------------------------

@dataclass(frozen=True)
class QuadFormMatrix:
    prime: int
    n: int
    entries: Tuple[Tuple[int, ...], ...]

    def rows(self) -> List[List[int]]:
        return [list(r) for r in self.entries]


def build_quadform(p: int, n: int) -> QuadFormMatrix:
    _require_prime(p)
    if n < 0:
        raise InvalidInput("n must be >= 0")
    entries = tuple(tuple(f(p, i, j) for j in range(n + 1)) for i in range(n + 1))
    return QuadFormMatrix(p, n, entries)


def det_quadform(p: int, n: int) -> Tuple[int, bool]:
    """Exact det A_p(n) and whether it equals (p-1)^n p^(n(n-1)/2)."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    d = det(build_quadform(p, n).entries)
    return d, d == (p - 1) ** n * p ** (n * (n - 1) // 2)


def is_positive_definite(m: Union[QuadFormMatrix, Sequence[Sequence[int]]]) -> bool:
    """Sylvester's criterion with exact leading principal minors."""
    entries = m.entries if isinstance(m, QuadFormMatrix) else m
    if not is_symmetric(entries):
        raise InvalidInput("matrix is not symmetric")
    return all(d > 0 for d in leading_minors(entries))


# -- cyclic subgroups and elements of p-groups ------------------------------

def _check_exponents(exponents: Sequence[int]) -> Tuple[int, ...]:
    exps = tuple(exponents)
    if any(e < 0 for e in exps) or list(exps) != sorted(exps):
        raise InvalidInput(f"exponents must be ascending and non-negative: {exps}")
    return exps


def h(p: int, exponents: Sequence[int], a: int) -> int:
    """Number of elements of order dividing p^a in prod_i Z_{p^exponents[i]}.

    Evaluated piecewise in ``a`` and cross-checked against
    ``prod_i p^min(a, exponents[i])``.
    """
    if a < 0:
        raise InvalidInput("a must be >= 0")
    exps = _check_exponents(exponents)
    r = len(exps)
    j = sum(1 for e in exps if e <= a)  # exps[j-1] <= a <= exps[j]
    piecewise = p ** ((r - j) * a + sum(exps[:j]))
    direct = prod(p ** min(a, e) for e in exps)
    if piecewise != direct:
        raise ArithmeticError(f"h mismatch at a={a}: {piecewise} != {direct}")
    return piecewise


def _cyclic_rank2_piecewise(p: int, a1: int, a2: int, a: int) -> int:
    if a == 0:
        return 1
    if a <= a1:
        return p**a + p ** (a - 1)
    return p**a1


def count_cyclic_by_order(p: int, exponents: Sequence[int], a: int) -> int:
    """Cyclic subgroups of order p^a in prod_i Z_{p^exponents[i]}."""
    exps = _check_exponents(exponents)
    top = exps[-1] if exps else 0
    if not 0 <= a <= top:
        raise InvalidInput(f"order exponent {a} outside [0, {top}]")
    if a == 0:
        return 1
    rest = exps[:-1]
    g = exact_div(p**a * h(p, rest, a) - p ** (a - 1) * h(p, rest, a - 1), p**a - p ** (a - 1))
    if len(exps) == 2 and g != _cyclic_rank2_piecewise(p, exps[0], exps[1], a):
        raise ArithmeticError(f"rank-2 cyclic count mismatch at a={a}")
    return g


def total_cyclic_rank2(p: int, a1: int, a2: int) -> int:
    if not 0 <= a1 <= a2:
        raise InvalidInput(f"need 0 <= a1 <= a2, got {a1}, {a2}")
    return sum(2 * p**t for t in range(a1)) + (a2 - a1 + 1) * p**a1


def count_elements_by_order_p(p: int, exponents: Sequence[int], a: int) -> int:
    exps = _check_exponents(exponents)
    top = exps[-1] if exps else 0
    if not 0 <= a <= top:
        raise InvalidInput(f"order exponent {a} outside [0, {top}]")
    if a == 0:
        return 1
    rest = exps[:-1]
    return p**a * h(p, rest, a) - p ** (a - 1) * h(p, rest, a - 1)


# -- arbitrary finite abelian groups ----------------------------------------

def _per_prime(g: GroupDescriptor, m: int, local) -> int:
    if m < 1:
        raise InvalidInput(f"order must be positive, got {m}")
    comps = primary_decomposition(g).components
    fm = factorize(m) if m > 1 else {}
    if any(q not in comps for q in fm):
        return 0
    out = 1
    for q, t in comps.items():
        v = fm.get(q, 0)
        if v > t.exponents[-1]:
            return 0
        out *= local(q, t.exponents, v)
    return out


def count_cyclic_general(g: GroupDescriptor, m: int) -> int:
    """Cyclic subgroups of order m in g."""
    return _per_prime(g, m, count_cyclic_by_order)


def count_elements_general(g: GroupDescriptor, m: int) -> int:
    """Elements of order m in g."""
    return _per_prime(g, m, lambda q, exps, v: count_cyclic_by_order(q, exps, v) * euler_phi(q**v))


def _component_by_order(t: PGroupType) -> Tuple[Dict[int, int], str]:
    """Subgroup counts of one p-group by order, plus the source used."""
    p, exps, n = t.prime, t.exponents, t.total_exponent
    if t.rank == 1:
        return {p**e: 1 for e in range(n + 1)}, "formula"
    if t.rank == 2:
        a1, a2 = exps
        return {p ** (n - a): count_rank2_by_index(p, a1, a2, a) for a in range(n + 1)}, "formula"
    if all(e == 1 for e in exps):
        return {p ** (n - a): count_elementary(p, n, a) for a in range(n + 1)}, "formula"
    counts: Dict[int, int] = {}
    for mat in lattice.enumerate_subgroups(t):
        o = lattice.subgroup_order(mat)
        counts[o] = counts.get(o, 0) + 1
    return counts, "enumeration"


def _convolve(maps: Sequence[Mapping[int, int]]) -> Dict[int, int]:
    out = {1: 1}
    for mp in maps:
        nxt: Dict[int, int] = {}
        for d1, c1 in out.items():
            for d2, c2 in mp.items():
                nxt[d1 * d2] = nxt.get(d1 * d2, 0) + c1 * c2
        out = nxt
    return out


def _as_descriptor(group) -> GroupDescriptor:
    return group.descriptor() if isinstance(group, PGroupType) else group


def subgroup_report(group) -> CountReport:
    g = _as_descriptor(group)
    maps, sources = [], {}
    for p, t in primary_decomposition(g).components.items():
        counts, src = _component_by_order(t)
        maps.append(counts)
        sources[p] = src
    source = "enumeration" if "enumeration" in sources.values() else "formula"
    return CountReport(group, "all", _convolve(maps), source, sources)


def total_subgroups_general(g: GroupDescriptor) -> int:
    """Product over primary components of their subgroup totals.

    Rank <= 2 and elementary components use closed forms; any other
    component falls back to counting lattice matrices.
    """
    out = 1
    for t in primary_decomposition(_as_descriptor(g)).components.values():
        if t.rank <= 2:
            a1, a2 = (0, t.exponents[0]) if t.rank == 1 else t.exponents
            out *= total_rank2(t.prime, a1, a2)
        elif all(e == 1 for e in t.exponents):
            out *= sum(count_elementary(t.prime, t.rank, a) for a in range(t.rank + 1))
        else:
            out *= sum(1 for _ in lattice.enumerate_subgroups(t))
    return out


def maximal_report(group) -> CountReport:
    g = _as_descriptor(group)
    by_order = {}
    for p, t in primary_decomposition(g).components.items():
        by_order[g.order // p] = count_maximal(p, t.rank)
    return CountReport(group, "maximal", by_order, "formula")


def cyclic_report(group) -> CountReport:
    g = _as_descriptor(group)
    return CountReport(group, "cyclic", {m: count_cyclic_general(g, m) for m in divisors(g.exponent)})


def element_report(group) -> CountReport:
    g = _as_descriptor(group)
    return CountReport(group, "elements", {m: count_elements_general(g, m) for m in divisors(g.exponent)})


def formula_report(group, kind: str) -> CountReport:
    builders = {
        "all": subgroup_report,
        "maximal": maximal_report,
        "cyclic": cyclic_report,
        "elements": element_report,
    }
    if kind not in builders:
        raise InvalidInput(f"unknown kind {kind!r}; expected one of {KINDS}")
    return builders[kind](group)
