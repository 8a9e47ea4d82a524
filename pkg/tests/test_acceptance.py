"""Acceptance criteria 1-9. Every check is exact; runtimes are bounded where stated.

Run with ``pytest tests/test_acceptance.py``; the summary lists one
PASS/FAIL line per criterion.
"""

import subprocess
import sys
import time

import numpy as np

from fglattice import formulas as F
from fglattice.group import GroupDescriptor, PGroupType, divisors, primary_decomposition
from fglattice.lattice import (
    bottom,
    check_solvability,
    enumerate_of_order,
    enumerate_subgroups,
    is_cyclic,
    leq,
    subgroup_order,
    top,
)
from fglattice.oracle import ExplicitGroup, all_subgroups, is_cyclic_subgroup, order_census, suite_groups

from conftest import inclusion_matrix, lattice_image, meet_join_tables, p_types


def tally(values):
    out = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return out


def enumeration_by_order(g: GroupDescriptor, cyclic_only=False):
    """Subgroup counts by order from lattice matrices, combined over primary components."""
    out = {1: 1}
    for t in primary_decomposition(g).components.values():
        mats = [a for a in enumerate_subgroups(t) if not cyclic_only or is_cyclic(a)]
        local = tally(subgroup_order(a) for a in mats)
        out = _conv(out, local)
    return out


def _conv(a, b):
    out = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            out[d1 * d2] = out.get(d1 * d2, 0) + c1 * c2
    return out


def oracle_by_order(moduli, cyclic_only=False):
    grp = ExplicitGroup(moduli)
    return tally(s.order for s in all_subgroups(grp) if not cyclic_only or is_cyclic_subgroup(s, grp))


SUITE_PGROUPS = [g for g in suite_groups() if isinstance(g, PGroupType)]


def test_ac1_rank2_subgroup_counts(criterion):
    with criterion("AC1 rank-2 counts by order: formula = enumeration = oracle (p=2,3; a1+a2<=6; <30s)"):
        start = time.perf_counter()
        checked = 0
        for p in (2, 3):
            for a1 in range(0, 4):
                for a2 in range(a1, 7 - a1):
                    g = GroupDescriptor(tuple(p**a for a in (a1, a2) if a > 0))
                    enum = enumeration_by_order(g)
                    orc = oracle_by_order(g.invariant_factors)
                    for a in range(a1 + a2 + 1):
                        order = p ** (a1 + a2 - a)
                        formula = F.count_rank2_by_index(p, a1, a2, a)
                        assert formula == enum.get(order, 0) == orc.get(order, 0), (p, a1, a2, a)
                        checked += 1
                    assert F.total_rank2(p, a1, a2) == sum(enum.values()) == sum(orc.values())
        assert F.total_rank2(2, 2, 3) == 22
        assert checked > 100
        assert time.perf_counter() - start < 30


def test_ac2_elementary_abelian(criterion):
    with criterion("AC2 elementary abelian (Z_p)^k, p=2,3, k<=4: formula = enumeration = oracle"):
        for p in (2, 3):
            for k in range(1, 5):
                t = PGroupType(p, (1,) * k)
                enum = enumeration_by_order(t.descriptor())
                orc = oracle_by_order(t.moduli)
                for a in range(k + 1):
                    order = p ** (k - a)
                    assert F.count_elementary(p, k, a) == enum[order] == orc[order], (p, k, a)
        assert [F.count_elementary(2, 3, a) for a in range(4)] == [1, 7, 7, 1]
        assert sum(F.count_elementary(2, 3, a) for a in range(4)) == 16


MAXIMAL_VECTORS = {
    1: [(a,) for a in range(1, 11)],
    2: [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (1, 4), (3, 3), (2, 4), (1, 5), (3, 4)],
    3: [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2), (1, 1, 3), (1, 2, 3), (2, 2, 3), (1, 1, 4), (1, 3, 3), (2, 3, 3)],
}


def test_ac3_maximal_subgroups(criterion):
    with criterion("AC3 maximal subgroups (p^k-1)/(p-1) for 10 exponent vectors per (p,k)"):
        for p in (2, 3):
            for k, vectors in MAXIMAL_VECTORS.items():
                assert len(set(vectors)) >= 10
                for exps in vectors:
                    t = PGroupType(p, exps)
                    mats = list(enumerate_of_order(t, t.total_exponent - 1))
                    assert all(np.prod(m.diagonal) == p for m in mats)
                    assert len(mats) == F.count_maximal(p, k), (p, exps)


def test_ac4_cyclic_subgroups(criterion):
    extra = [PGroupType(2, e) for e in [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 3)]]
    with criterion("AC4 cyclic subgroups by order: formula = is_cyclic enumeration = oracle"):
        groups = SUITE_PGROUPS + [t for t in extra if t not in SUITE_PGROUPS]
        assert all(t in groups for t in extra)
        for t in groups:
            enum = enumeration_by_order(t.descriptor(), cyclic_only=True)
            orc = oracle_by_order(t.moduli, cyclic_only=True)
            for a in range(t.exponents[-1] + 1):
                order = t.prime**a
                assert F.count_cyclic_by_order(t.prime, t.exponents, a) == enum[order] == orc[order], (t, a)
            assert sum(enum.values()) == sum(orc.values())


def test_ac5_element_censuses(criterion):
    with criterion("AC5 element counts = order census; sum = |G| (suite p-groups, Z6, Z2xZ12, Z6xZ6)"):
        groups = [t.descriptor() for t in SUITE_PGROUPS] + [GroupDescriptor(d) for d in [(6,), (2, 12), (6, 6)]]
        for g in groups:
            census = order_census(ExplicitGroup(g.invariant_factors)).by_order
            formula = {m: F.count_elements_general(g, m) for m in divisors(g.order)}
            assert {m: c for m, c in formula.items() if c} == census, g
            assert sum(formula.values()) == sum(census.values()) == g.order
        for t in SUITE_PGROUPS:
            census = order_census(ExplicitGroup(t.moduli)).by_order
            for a in range(t.exponents[-1] + 1):
                assert F.count_elements_by_order_p(t.prime, t.exponents, a) == census[t.prime**a]


def test_ac6_determinant_identity(criterion):
    with criterion("AC6 det A_p(n) = (p-1)^n p^(n(n-1)/2), leading minors > 0 (p=2,3,5; n<=8; <1s)"):
        start = time.perf_counter()
        for p in (2, 3, 5):
            for n in range(1, 9):
                d, ok = F.det_quadform(p, n)
                assert ok and d == (p - 1) ** n * p ** (n * (n - 1) // 2)
                assert F.is_positive_definite(F.build_quadform(p, n))
        assert time.perf_counter() - start < 1.0


def _types_up_to(order_cap, max_rank):
    out = []
    for p in (2, 3, 5, 7, 11):
        n = 0
        while p ** (n + 1) <= order_cap:
            n += 1
        out += [t for t in p_types([p], n, max_rank)]
    return out


def test_ac7_order_relation(criterion):
    with criterion("AC7 leq <=> member-set inclusion (all pairs, order <= 2^7, rank <= 5); "
                   "unique top/bottom; modular law (order <= 2^5)"):
        pairs = 0
        for t in _types_up_to(2**7, 5):
            grp, mats, image = lattice_image(t)
            inc = inclusion_matrix(grp, image)
            le = np.array([[leq(a, b) for b in mats] for a in mats])
            assert (le == inc).all(), t
            pairs += len(mats) ** 2
            n = len(mats)
            tops = [i for i in range(n) if le[:, i].all()]
            bots = [i for i in range(n) if le[i, :].all()]
            assert [mats[i] for i in tops] == [top(t)] and [mats[i] for i in bots] == [bottom(t)]
            if t.order <= 2**5:
                tables = meet_join_tables(le, [subgroup_order(a) for a in mats])
                assert tables is not None, t
                meet, join = tables
                for a in range(n):
                    for c in np.flatnonzero(le[a]):
                        # a <= c  =>  a v (b ^ c) = (a v b) ^ c  for every b
                        assert (join[a][meet[:, c]] == meet[join[a], c]).all(), (t, a, c)
        assert pairs > 4_000_000


def test_ac8_solvability(criterion):
    with criterion("AC8 A^T x = (p^a1..p^ak) solvable for 100% of enumerated suite matrices"):
        total = 0
        for t in SUITE_PGROUPS:
            for a in enumerate_subgroups(t):
                assert check_solvability(a), a
                total += 1
        assert total > 1000


def test_ac9_verify_suite_cli(criterion):
    with criterion("AC9 `verify --suite` exits 0 in under 2 minutes"):
        start = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "fglattice", "verify", "--suite"],
                              capture_output=True, text=True, timeout=120)
        elapsed = time.perf_counter() - start
        assert proc.returncode == 0, proc.stdout[-2000:] + proc.stderr[-2000:]
        assert proc.stdout.strip().endswith("0 mismatches")
        assert elapsed < 120
