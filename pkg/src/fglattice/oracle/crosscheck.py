"""Three-way comparison: closed forms, lattice enumeration, brute force."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

from .. import formulas, lattice
from ..group import GroupDescriptor, PGroupType, euler_phi, is_prime, normalize, primary_decomposition
from .explicit import DEFAULT_CAP, ExplicitGroup, all_subgroups, is_cyclic_subgroup, order_census

Group = Union[GroupDescriptor, PGroupType]


@dataclass
class Row:
    group: str
    kind: str
    order: Union[int, str]
    formula: Optional[int]
    enumeration: Optional[int]
    oracle: Optional[int]

    @property
    def match(self) -> bool:
        vals = {v for v in (self.formula, self.enumeration, self.oracle) if v is not None}
        return len(vals) <= 1

    def to_dict(self) -> dict:
        d = asdict(self)
        d["match"] = self.match
        return d


@dataclass
class DiscrepancyReport:
    group: str
    rows: List[Row] = field(default_factory=list)

    @property
    def mismatches(self) -> List[Row]:
        return [r for r in self.rows if not r.match]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def totals(self, kind: str) -> Row:
        return next(r for r in self.rows if r.kind == kind and r.order == "total")

    def to_json(self) -> str:
        return json.dumps([r.to_dict() for r in self.rows])

    def to_text(self) -> str:
        def cell(v):
            return "-" if v is None else str(v)

        lines = [f"{'kind':<9} {'order':>6} {'formula':>9} {'enumer.':>9} {'oracle':>9}  match"]
        for r in self.rows:
            lines.append(f"{r.kind:<9} {str(r.order):>6} {cell(r.formula):>9} "
                         f"{cell(r.enumeration):>9} {cell(r.oracle):>9}  {'ok' if r.match else 'MISMATCH'}")
        lines.append(f"{self.group}: {len(self.mismatches)} mismatches")
        return "\n".join(lines)


def _convolve(maps: Iterable[Mapping[int, int]]) -> Dict[int, int]:
    out = {1: 1}
    for mp in maps:
        nxt: Dict[int, int] = {}
        for d1, c1 in out.items():
            for d2, c2 in mp.items():
                nxt[d1 * d2] = nxt.get(d1 * d2, 0) + c1 * c2
        out = nxt
    return out


def _tally(values: Iterable[int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return out


def _enumeration_counts(g: GroupDescriptor) -> Dict[str, Dict[int, int]]:
    """By-order counts derived from the lattice matrices of each component."""
    all_maps, cyc_maps = [], []
    maximal: Dict[int, int] = {}
    for p, t in primary_decomposition(g).components.items():
        mats = list(lattice.enumerate_subgroups(t))
        all_maps.append(_tally(lattice.subgroup_order(a) for a in mats))
        cyc_maps.append(_tally(lattice.subgroup_order(a) for a in mats if lattice.is_cyclic(a)))
        maximal[g.order // p] = sum(1 for a in mats if lattice.subgroup_order(a) == t.order // p)
    cyclic = _convolve(cyc_maps)
    # every element generates exactly one cyclic subgroup, shared with phi(order) others
    elements = {d: c * euler_phi(d) for d, c in cyclic.items()}
    return {"all": _convolve(all_maps), "cyclic": cyclic, "maximal": maximal, "elements": elements}


def _oracle_counts(grp: ExplicitGroup) -> Dict[str, Dict[int, int]]:
    subs = all_subgroups(grp)
    n = grp.order
    return {
        "all": _tally(s.order for s in subs),
        "cyclic": _tally(s.order for s in subs if is_cyclic_subgroup(s, grp)),
        # abelian: maximal subgroups are exactly those of prime index
        "maximal": _tally(s.order for s in subs if s.order < n and is_prime(n // s.order)),
        "elements": dict(order_census(grp).by_order),
    }


def _formula_counts(g: GroupDescriptor) -> Dict[str, Dict[int, int]]:
    out = {kind: dict(formulas.formula_report(g, kind).by_order) for kind in ("cyclic", "maximal", "elements")}
    comps = primary_decomposition(g).components
    if len(comps) == 1:
        (p, t), = comps.items()
        out["elements"] = {p**a: formulas.count_elements_by_order_p(p, t.exponents, a)
                           for a in range(t.exponents[-1] + 1)}
    rep = formulas.subgroup_report(g)
    # components without a closed form were counted by enumeration; no formula value then
    out["all"] = rep.by_order if rep.source == "formula" else None
    return out


def _formula_totals(g: GroupDescriptor, fo: Dict[str, Optional[Dict[int, int]]]) -> Dict[str, Optional[int]]:
    """Totals from the closed forms for totals where one exists, else sums."""
    totals = {k: None if v is None else sum(v.values()) for k, v in fo.items()}
    if fo["all"] is not None:
        totals["all"] = formulas.total_subgroups_general(g)
    comps = primary_decomposition(g).components
    if len(comps) == 1:
        (p, t), = comps.items()
        if t.rank <= 2:
            a1, a2 = (0, t.exponents[0]) if t.rank == 1 else t.exponents
            totals["cyclic"] = formulas.total_cyclic_rank2(p, a1, a2)
    return totals


def cross_check(group: Union[Group, Sequence[int]], cap: int = DEFAULT_CAP) -> DiscrepancyReport:
    """Compare every count kind, order by order, across the three pipelines."""
    if isinstance(group, PGroupType):
        g = group.descriptor()
    elif isinstance(group, GroupDescriptor):
        g = group
    else:
        g = normalize(group)
    grp = ExplicitGroup(g.invariant_factors, cap=cap)
    grp.coords  # raises ResourceLimit before any real work
    fo, en, orc = _formula_counts(g), _enumeration_counts(g), _oracle_counts(grp)
    ftot = _formula_totals(g, fo)
    name = str(g)
    report = DiscrepancyReport(name)
    for kind in ("all", "maximal", "cyclic", "elements"):
        f_map = fo[kind]
        orders = sorted(set(en[kind]) | set(orc[kind]) | set(f_map or {}))
        for d in orders:
            report.rows.append(Row(name, kind, d,
                                   None if f_map is None else f_map.get(d, 0),
                                   en[kind].get(d, 0), orc[kind].get(d, 0)))
        report.rows.append(Row(name, kind, "total", ftot[kind],
                               sum(en[kind].values()), sum(orc[kind].values())))
    return report


def quadform_checks(primes: Sequence[int] = (2, 3, 5), max_n: int = 8) -> DiscrepancyReport:
    """det A_p(n) against its closed form, and positive definiteness.

    The formula column holds the expected value (closed-form determinant, 1
    for "positive definite", number of entries for the f expansion); the
    oracle column holds what was computed.
    """
    report = DiscrepancyReport("A_p(n)")
    for p in primes:
        for n in range(1, max_n + 1):
            name = f"A_{p}({n})"
            d, _ = formulas.det_quadform(p, n)
            report.rows.append(Row(name, "det", n, (p - 1) ** n * p ** (n * (n - 1) // 2), None, d))
            pd = formulas.is_positive_definite(formulas.build_quadform(p, n))
            report.rows.append(Row(name, "positive-definite", n, 1, None, int(pd)))
            pairs = [(i, j) for i in range(n + 1) for j in range(n + 1)]
            agree = sum(formulas.f(p, i, j) == formulas.f_expansion(p, i, j) for i, j in pairs)
            report.rows.append(Row(name, "f-expansion", n, len(pairs), None, agree))
    return report


def _partitions(n: int, max_parts: int, largest: Optional[int] = None) -> List[tuple]:
    """Ascending exponent vectors summing to n with at most max_parts entries."""
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    if max_parts == 0:
        return []
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, max_parts - 1, first):
            out.append(tuple(sorted((first,) + rest)))
    return out


COMPOSITE_SAMPLES = ((6,), (2, 12), (6, 6), (2, 6), (3, 12), (2, 2, 6), (10,), (2, 30))


def suite_groups(primes: Sequence[int] = (2, 3), max_total: int = 6, max_rank: int = 3) -> List[Group]:
    """p-group types with bounded rank and total exponent, then composite samples."""
    out: List[Group] = []
    for p in primes:
        for n in range(1, max_total + 1):
            for exps in sorted(_partitions(n, max_rank), key=lambda e: (len(e), e)):
                out.append(PGroupType(p, exps))
    out.extend(GroupDescriptor(d) for d in COMPOSITE_SAMPLES)
    return out
