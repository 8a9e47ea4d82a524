"""Finite abelian group descriptors and small exact-integer helpers.

A group is described by its invariant factors d1 | d2 | ... | dk; the
empty tuple is the trivial group. Everything here is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd, prod
from typing import Dict, Iterable, List, Sequence, Tuple


class InvalidInput(ValueError):
    """Raised when an argument violates an operation's precondition."""


class ResourceLimit(RuntimeError):
    """Raised when a computation would exceed a configured size cap."""


# -- integer utilities ------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def factorize(n: int) -> Dict[int, int]:
    """Trial-division factorization, ``{prime: exponent}``."""
    if n < 1:
        raise InvalidInput(f"cannot factor {n}")
    out: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise InvalidInput("valuation of 0 is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def gcd_list(values: Iterable[int]) -> int:
    # gcd(x, 0) = x; empty list folds to 0
    return reduce(gcd, (abs(v) for v in values), 0)


def exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"{a} is not divisible by {b}")
    return q


def divisors(n: int) -> List[int]:
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def euler_phi(n: int) -> int:
    """Euler's totient, computed from the prime factorization of ``n``."""
    if n < 1:
        raise InvalidInput(f"euler_phi needs n >= 1, got {n}")
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


# -- descriptors ------------------------------------------------------------

@dataclass(frozen=True)
class GroupDescriptor:
    """Z_{d1} x ... x Z_{dk} with d1 | d2 | ... | dk, each di >= 2."""

    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        ds = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", ds)
        for d in ds:
            if d < 2:
                raise InvalidInput(f"invariant factor {d} < 2")
        for a, b in zip(ds, ds[1:]):
            if b % a:
                raise InvalidInput(f"{a} does not divide {b}: not in invariant-factor form")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "1"
        return "x".join(f"Z{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class PGroupType:
    """Z_{p^a1} x ... x Z_{p^ak} with a1 <= ... <= ak."""

    prime: int
    exponents: Tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(a) for a in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if not is_prime(self.prime):
            raise InvalidInput(f"{self.prime} is not prime")
        if not exps:
            raise InvalidInput("exponent vector must be nonempty")
        if any(a < 1 for a in exps):
            raise InvalidInput(f"exponents must be positive: {exps}")
        if list(exps) != sorted(exps):
            raise InvalidInput(f"exponents must be ascending: {exps}")

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def moduli(self) -> Tuple[int, ...]:
        return tuple(self.prime**a for a in self.exponents)

    @property
    def total_exponent(self) -> int:
        return sum(self.exponents)

    @property
    def order(self) -> int:
        return self.prime**self.total_exponent

    def descriptor(self) -> GroupDescriptor:
        return GroupDescriptor(self.moduli)

    def __str__(self) -> str:
        return "x".join(f"Z{m}" for m in self.moduli)


@dataclass(frozen=True)
class PrimaryDecomposition:
    source: GroupDescriptor
    components: Dict[int, PGroupType] = field(default_factory=dict)

    def recombine(self) -> GroupDescriptor:
        return recombine(self.components.values())


def recombine(components: Iterable[PGroupType]) -> GroupDescriptor:
    """CRT recombination: multiply the largest cyclic factors together, and so on."""
    columns: List[List[int]] = []
    for comp in components:
        columns.append(sorted(comp.moduli, reverse=True))
    width = max((len(c) for c in columns), default=0)
    factors = []
    for i in range(width):
        factors.append(prod(c[i] for c in columns if i < len(c)))
    return GroupDescriptor(tuple(reversed(factors)))


def normalize(moduli: Sequence[int]) -> GroupDescriptor:
    """Invariant-factor form of Z_{m1} x ... x Z_{mr}."""
    parts: Dict[int, List[int]] = {}
    for m in moduli:
        if int(m) != m or m < 2:
            raise InvalidInput(f"modulus {m} must be an integer >= 2")
        for p, e in factorize(int(m)).items():
            parts.setdefault(p, []).append(e)
    comps = [PGroupType(p, tuple(sorted(es))) for p, es in parts.items()]
    return recombine(comps)


def primary_decomposition(g: GroupDescriptor) -> PrimaryDecomposition:
    comps: Dict[int, PGroupType] = {}
    for p in sorted(factorize(g.order)) if g.order > 1 else []:
        exps = tuple(valuation(d, p) for d in g.invariant_factors if d % p == 0)
        comps[p] = PGroupType(p, exps)
    return PrimaryDecomposition(g, comps)
