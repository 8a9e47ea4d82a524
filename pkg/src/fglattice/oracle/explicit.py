"""The group Z_{m1} x ... x Z_{mr} as literal residue tuples.

Nothing here knows about subgroup matrices; subgroups are plain member
sets built by closure, which is what makes this module usable as an
independent check on the lattice code.

Elements are numbered in lexicographic order of their tuples (last
coordinate fastest), so a sorted index array is also the lexicographically
sorted member list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, lcm, prod
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..group import InvalidInput, ResourceLimit, factorize, normalize
from ..report import CountReport

DEFAULT_CAP = 4096

Element = Tuple[int, ...]


class ExplicitGroup:
    def __init__(self, moduli: Sequence[int], cap: int = DEFAULT_CAP):
        self.moduli: Tuple[int, ...] = tuple(int(m) for m in moduli)
        if any(m < 1 for m in self.moduli):
            raise InvalidInput(f"moduli must be positive: {self.moduli}")
        self.cap = cap
        self.order = prod(self.moduli)

    def __repr__(self) -> str:
        return f"ExplicitGroup({self.moduli})"

    def descriptor(self):
        return normalize([m for m in self.moduli if m > 1])

    def _require_cap(self) -> None:
        if self.order > self.cap:
            raise ResourceLimit(f"group order {self.order} exceeds cap {self.cap}")

    # element tables, built on first use
    @cached_property
    def coords(self) -> np.ndarray:
        self._require_cap()
        if not self.moduli:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.meshgrid(*[np.arange(m) for m in self.moduli], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)

    @cached_property
    def _mods(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    @cached_property
    def _strides(self) -> np.ndarray:
        strides = [1] * len(self.moduli)
        for i in range(len(self.moduli) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.moduli[i + 1]
        return np.array(strides, dtype=np.int64)

    @cached_property
    def orders(self) -> np.ndarray:
        """Order of every element, indexed like :attr:`coords`."""
        c = self.coords
        if c.shape[1] == 0:
            return np.ones(1, dtype=np.int64)
        per = self._mods // np.gcd(c, self._mods)
        return np.lcm.reduce(per, axis=1)

    def check(self, g: Sequence[int]) -> Element:
        if len(g) != len(self.moduli):
            raise InvalidInput(f"element {tuple(g)} does not match moduli {self.moduli}")
        return tuple(int(x) % m for x, m in zip(g, self.moduli))

    def index(self, g: Sequence[int]) -> int:
        return int(np.dot(np.array(self.check(g), dtype=np.int64), self._strides)) if self.moduli else 0

    def element(self, i: int) -> Element:
        return tuple(int(x) for x in self.coords[i])

    def translate(self, idx: np.ndarray, g: Sequence[int]) -> np.ndarray:
        """Indices of ``{h + g : h in idx}``."""
        shifted = (self.coords[idx] + np.asarray(g, dtype=np.int64)) % self._mods
        return shifted @ self._strides

    def multiple_index(self, q: int) -> np.ndarray:
        """``out[i]`` is the index of ``q`` times element ``i``."""
        return ((self.coords * q) % self._mods) @ self._strides


@dataclass(frozen=True)
class SubgroupSet:
    """A subgroup as its sorted member indices in an :class:`ExplicitGroup`."""

    group: ExplicitGroup = field(compare=False, hash=False)
    members: Tuple[int, ...]
    generator_hint: Tuple[Element, ...] = field(default=(), compare=False, hash=False)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def member_set(self) -> Tuple[Element, ...]:
        return tuple(self.group.element(i) for i in self.members)

    def __contains__(self, g) -> bool:
        i = self.group.index(g)
        return i in self._lookup

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.members)

    def issubset(self, other: "SubgroupSet") -> bool:
        return self._lookup <= other._lookup

    def __len__(self) -> int:
        return len(self.members)


def _subgroup(grp: ExplicitGroup, mask: np.ndarray, hint=()) -> SubgroupSet:
    return SubgroupSet(grp, tuple(int(i) for i in np.flatnonzero(mask)), tuple(hint))


def element_order(g: Sequence[int], grp: ExplicitGroup) -> int:
    g = grp.check(g)
    return lcm(*(m // gcd(x, m) for x, m in zip(g, grp.moduli))) if g else 1


def order_census(grp: ExplicitGroup) -> CountReport:
    """Number of elements of each order, by scanning the whole group."""
    vals, counts = np.unique(grp.orders, return_counts=True)
    return CountReport(grp.descriptor(), "elements", dict(zip(map(int, vals), map(int, counts))), "oracle")


def _join_mask(grp: ExplicitGroup, mask: np.ndarray, g: Element) -> np.ndarray:
    """Mask of ``H + <g>`` as the union of cosets ``H + i*g``."""
    base = np.flatnonzero(mask)
    out = mask.copy()
    step = np.array(g, dtype=np.int64)
    cur = step % grp._mods if grp.moduli else step
    while not mask[int(cur @ grp._strides) if grp.moduli else 0]:
        out[grp.translate(base, cur)] = True
        cur = (cur + step) % grp._mods
    return out


def span(grp: ExplicitGroup, gens: Iterable[Sequence[int]]) -> SubgroupSet:
    """Smallest subgroup containing ``gens``."""
    gens = [grp.check(g) for g in gens]
    mask = np.zeros(len(grp.coords), dtype=bool)
    mask[0] = True
    for g in gens:
        mask = _join_mask(grp, mask, g)
    return _subgroup(grp, mask, gens)


def all_subgroups(grp: ExplicitGroup) -> List[SubgroupSet]:
    """Every subgroup exactly once, sorted by (order, members).

    Frontier closure from the trivial subgroup. A subgroup H is extended by
    outside elements g with q*g in H for some prime q | |G|; this loses
    nothing, since every nontrivial subgroup K is M + <g> for a maximal
    subgroup M of K and any g in K \\ M, and K/M has prime order.
    """
    n = len(grp.coords)
    primes = sorted(factorize(grp.order)) if grp.order > 1 else []
    mult = {q: grp.multiple_index(q) for q in primes}
    start = np.zeros(n, dtype=bool)
    start[0] = True
    seen: Dict[bytes, np.ndarray] = {start.tobytes(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for mask in frontier:
            for q in primes:
                cand = mask[mult[q]] & ~mask
                while cand.any():
                    i = int(np.argmax(cand))
                    joined = _join_mask(grp, mask, grp.element(i))
                    cand &= ~joined
                    key = joined.tobytes()
                    if key not in seen:
                        seen[key] = joined
                        nxt.append(joined)
        frontier = nxt
    subs = [_subgroup(grp, m) for m in seen.values()]
    subs.sort(key=lambda s: (s.order, s.members))
    return subs


def is_cyclic_subgroup(h: SubgroupSet, grp: Optional[ExplicitGroup] = None) -> bool:
    grp = grp or h.group
    return int(grp.orders[list(h.members)].max()) == h.order
