import itertools
from math import gcd

import pytest

from fglattice.group import PGroupType


def naive_subgroups(moduli):
    """All subgroups of Z_m1 x ... x Z_mr as frozensets of tuples.

    Every subgroup of a group of rank r is generated by r elements, so
    closing every r-subset of elements finds them all. Pure Python, no
    shared code with the package.
    """
    elems = list(itertools.product(*[range(m) for m in moduli]))

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, moduli))

    def close(gens):
        zero = tuple(0 for _ in moduli)
        seen = {zero}
        todo = [zero]
        while todo:
            x = todo.pop()
            for g in gens:
                y = add(x, g)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return frozenset(seen)

    r = max(len(moduli), 1)
    return {close(gs) for gs in itertools.combinations_with_replacement(elems, r)}


def naive_order(g, moduli):
    t = 1
    while any((t * x) % m for x, m in zip(g, moduli)):
        t += 1
    return t


def p_types(primes, max_total, max_rank):
    out = []

    def parts(n, k, largest):
        if n == 0:
            yield ()
            return
        if k == 0:
            return
        for first in range(min(n, largest), 0, -1):
            for rest in parts(n - first, k - 1, first):
                yield rest + (first,)

    for p in primes:
        for n in range(1, max_total + 1):
            for exps in parts(n, max_rank, n):
                out.append(PGroupType(p, tuple(sorted(exps))))
    return out


@pytest.fixture
def z4z8():
    return PGroupType(2, (2, 3))


def lattice_image(t):
    """Enumerated matrices of ``t`` and the oracle subgroup each one spans."""
    from fglattice.lattice import enumerate_subgroups, generators
    from fglattice.oracle import ExplicitGroup, span

    grp = ExplicitGroup(t.moduli)
    mats = list(enumerate_subgroups(t))
    return grp, mats, [span(grp, generators(a)) for a in mats]


def membership_matrix(grp, subs):
    import numpy as np

    m = np.zeros((len(subs), grp.order), dtype=np.int32)
    for i, s in enumerate(subs):
        m[i, list(s.members)] = 1
    return m


def inclusion_matrix(grp, subs):
    """``out[i, j]`` iff subgroup i is contained in subgroup j, from member sets."""
    m = membership_matrix(grp, subs)
    return (m @ (1 - m).T) == 0


def meet_join_tables(le, sizes):
    """Meet and join indices from an order matrix, or None if some pair has no
    least upper / greatest lower bound."""
    import numpy as np

    n = len(sizes)
    sizes = np.asarray(sizes)
    join = np.empty((n, n), dtype=np.int64)
    meet = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        ups = le[x][None, :] & le  # row y: common upper bounds of x and y
        z = np.where(ups, sizes[None, :], np.iinfo(np.int64).max).argmin(axis=1)
        if not (le[z] | ~ups).all():
            return None
        join[x] = z
        downs = le[:, x][None, :] & le.T  # row y: common lower bounds
        w = np.where(downs, sizes[None, :], -1).argmax(axis=1)
        if not (le.T[w] | ~downs).all():
            return None
        meet[x] = w
    return meet, join


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Context manager that records one PASS/FAIL line per acceptance criterion."""
    import contextlib
    import time

    @contextlib.contextmanager
    def run(label):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            _ACCEPTANCE_LINES.append(f"FAIL  {label}  ({type(exc).__name__}: {str(exc)[:120]})")
            raise
        _ACCEPTANCE_LINES.append(f"PASS  {label}  [{time.perf_counter() - start:.2f}s]")

    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
