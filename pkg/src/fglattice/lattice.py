"""Subgroups of a finite abelian p-group as upper-triangular integer matrices.

For a group of type ``Z_{p^a1} x ... x Z_{p^ak}`` each subgroup corresponds
to exactly one k x k integer matrix ``A`` with

  i)   ``a_ij = 0`` below the diagonal,
  ii)  ``0 <= a_ij < a_jj`` above it,
  iii) for every column j, ``a_jj`` divides the gcd of the column's chain
       terms (see :func:`gcd_chain_terms`).

The subgroup is the image in the group of the row lattice of ``A``; its
order is ``p^(a1+...+ak) / prod(a_ii)``.

Column indices in this module are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterator, List, Optional, Sequence, Tuple

from .group import InvalidInput, PGroupType, exact_div, gcd_list
from .intlinalg import det

Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class SubgroupMatrix:
    entries: Matrix
    ptype: PGroupType

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def checked(cls, entries: Sequence[Sequence[int]], ptype: PGroupType) -> "SubgroupMatrix":
        if not validate(entries, ptype):
            raise InvalidInput(f"{entries} is not a subgroup matrix for {ptype}")
        return cls(tuple(map(tuple, entries)), ptype)

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(self.k))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_json(self) -> dict:
        return {
            "matrix": [list(r) for r in self.entries],
            "generators": [list(g) for g in generators(self)],
            "order": subgroup_order(self),
            "cyclic": is_cyclic(self),
        }


@dataclass(frozen=True)
class GcdChainTerms:
    column: int
    terms: Tuple[int, ...]

    @property
    def gcd(self) -> int:
        return gcd_list(self.terms)


def _entries(a) -> Sequence[Sequence[int]]:
    return a.entries if isinstance(a, SubgroupMatrix) else a


def _check_shape(a: Sequence[Sequence[int]], ptype: PGroupType) -> None:
    k = ptype.rank
    if len(a) != k or any(len(row) != k for row in a):
        raise InvalidInput(f"expected a {k}x{k} matrix for {ptype}")


# -- subgroup conditions -----------------------------------------------------

def gcd_chain_terms(a, ptype: PGroupType, j: int) -> GcdChainTerms:
    """Arguments of the gcd that ``a_jj`` must divide.

    The first term is ``p^alpha_j``. Then for ``m = j-1, ..., 0`` comes
    ``p^alpha_m * det(a[m..j-1, m+1..j]) / (a_mm * ... * a_{j-1,j-1})``,
    which is the column-j residue of ``p^alpha_m e_m`` after reducing it by
    rows ``m..j-1``. The division is exact whenever columns ``0..j-1`` are
    valid; otherwise ArithmeticError is raised.
    """
    a = _entries(a)
    p, alpha = ptype.prime, ptype.exponents
    terms = [p ** alpha[j]]
    for m in range(j - 1, -1, -1):
        minor = [row[m + 1:j + 1] for row in a[m:j]]
        denom = prod(a[t][t] for t in range(m, j))
        terms.append(exact_div(p ** alpha[m] * det(minor), denom))
    return GcdChainTerms(j, tuple(terms))


def _column_ok(a, ptype: PGroupType, j: int) -> bool:
    ajj = a[j][j]
    if ajj < 1 or any(not 0 <= a[i][j] < ajj for i in range(j)):
        return False
    try:
        chain = gcd_chain_terms(a, ptype, j)
    except ArithmeticError:
        return False
    return chain.gcd % ajj == 0


def validate(a, ptype: PGroupType) -> bool:
    """True iff ``a`` satisfies conditions i), ii) and iii)."""
    a = _entries(a)
    _check_shape(a, ptype)
    k = ptype.rank
    if any(a[i][j] != 0 for i in range(k) for j in range(i)):
        return False
    return all(_column_ok(a, ptype, j) for j in range(k))


# -- enumeration ------------------------------------------------------------

def _column_options(a, ptype: PGroupType, j: int) -> List[Tuple[int, ...]]:
    """Valid off-diagonal entries ``(a_0j, ..., a_{j-1,j})`` for a fixed ``a_jj``.

    The chain term for row m only involves rows ``m..j-1`` of column j, so
    the entries are chosen bottom-up and each partial column is dropped as
    soon as ``a_jj`` fails to divide its newest term.
    """
    p, alpha = ptype.prime, ptype.exponents
    ajj = a[j][j]
    out: List[Tuple[int, ...]] = []

    def rec(m: int):
        if m < 0:
            out.append(tuple(a[i][j] for i in range(j)))
            return
        denom = prod(a[t][t] for t in range(m, j))
        scale = p ** alpha[m]
        for x in range(ajj):
            a[m][j] = x
            num = scale * det([row[m + 1:j + 1] for row in a[m:j]])
            if num % denom == 0 and (num // denom) % ajj == 0:
                rec(m - 1)
        a[m][j] = 0

    rec(j - 1)
    out.sort()
    return out


def _search(ptype: PGroupType, budget: Optional[int]) -> Iterator[SubgroupMatrix]:
    """Column-by-column depth-first generation.

    ``budget`` is the required sum of diagonal exponents (None = any).
    A failing column prunes everything after it; later columns cannot
    repair an earlier one.
    """
    p, alpha, k = ptype.prime, ptype.exponents, ptype.rank
    a = [[0] * k for _ in range(k)]
    tail = [sum(alpha[j:]) for j in range(k)] + [0]

    def rec(j: int, left: Optional[int]):
        if j == k:
            if left in (None, 0):
                yield SubgroupMatrix(tuple(map(tuple, a)), ptype)
            return
        for e in range(alpha[j] + 1):
            if left is not None and not (0 <= left - e <= tail[j + 1]):
                continue
            a[j][j] = p ** e
            for upper in _column_options(a, ptype, j):
                for i in range(j):
                    a[i][j] = upper[i]
                yield from rec(j + 1, None if left is None else left - e)
            for i in range(j):
                a[i][j] = 0
        a[j][j] = 0

    yield from rec(0, budget)


def enumerate_subgroups(ptype: PGroupType) -> Iterator[SubgroupMatrix]:
    """Every subgroup matrix of ``ptype`` exactly once.

    Order: column 0 first, each diagonal entry by ascending exponent, then the
    off-diagonal entries of that column in lexicographic order (top row
    slowest).
    """
    return _search(ptype, None)


def enumerate_of_order(ptype: PGroupType, order_exponent: int) -> Iterator[SubgroupMatrix]:
    """Matrices of subgroups of order ``p^order_exponent``."""
    n = ptype.total_exponent
    if not 0 <= order_exponent <= n:
        raise InvalidInput(f"order exponent {order_exponent} outside [0, {n}]")
    return _search(ptype, n - order_exponent)


# -- per-matrix queries -----------------------------------------------------

def subgroup_order(a: SubgroupMatrix) -> int:
    return exact_div(a.ptype.order, prod(a.diagonal))


def generators(a: SubgroupMatrix) -> List[Tuple[int, ...]]:
    """Rows of ``a`` reduced coordinatewise modulo ``p^alpha_i``."""
    mods = a.ptype.moduli
    return [tuple(x % m for x, m in zip(row, mods)) for row in a.entries]


def leq(a: SubgroupMatrix, b: SubgroupMatrix) -> bool:
    """Subgroup inclusion ``a <= b`` decided on the matrices alone.

    For column j, ``b_jj`` must divide ``a_jj`` and, for each m < j, the
    column-j residue of row m of ``a`` after reduction by rows ``m..j-1`` of
    ``b``.
    """
    if a.ptype != b.ptype:
        raise InvalidInput("matrices belong to different group types")
    A, B = a.entries, b.entries
    # b_jj | a_jj is implied by every relation; cheap rejection first
    if any(A[j][j] % B[j][j] for j in range(a.k)):
        return False
    for j in range(a.k):
        terms = [A[j][j]]
        for m in range(j - 1, -1, -1):
            block = [A[m][m:j + 1]] + [B[r][m:j + 1] for r in range(m, j)]
            denom = prod(B[t][t] for t in range(m, j))
            num = det(block)
            if num % denom:
                return False
            terms.append(num // denom)
        if gcd_list(terms) % B[j][j]:
            return False
    return True


def _in_cyclic(v: Sequence[int], u: Sequence[int], moduli: Sequence[int]) -> bool:
    """Whether ``v`` lies in the cyclic subgroup generated by ``u``.

    Solves ``x*u_i = v_i (mod m_i)`` coordinatewise; all moduli are powers of
    one prime, so the congruences on ``x`` are compatible iff they agree
    modulo the smaller modulus.
    """
    res, mod = 0, 1
    for ui, vi, mi in zip(u, v, moduli):
        g = gcd(ui, mi)
        if vi % g:
            return False
        q = mi // g
        r = (vi // g) * pow(ui // g, -1, q) % q if q > 1 else 0
        if (res - r) % min(mod, q):
            return False
        if q > mod:
            res, mod = r, q
    return True


def strict_row_chain(a: SubgroupMatrix) -> bool:
    """``<row_k> <= <row_{k-1}> <= ... <= <row_1>`` on the reduced rows.

    Sufficient for cyclicity but not necessary: a reduced row can be zero
    (``a_ii = p^alpha_i`` with zeros to its right) while a later row still
    generates the subgroup. :func:`is_cyclic` skips such rows.
    """
    rows, mods = generators(a), a.ptype.moduli
    return all(_in_cyclic(rows[i + 1], rows[i], mods) for i in range(a.k - 1))


def is_cyclic(a: SubgroupMatrix) -> bool:
    """Whether the subgroup of ``a`` is cyclic.

    The nonzero reduced rows must form a chain of cyclic subgroups, each
    contained in the one generated by the row above it. For k = 2 this is
    ``a_22 = gcd(p^alpha_2, p^alpha_1 a_12 / a_11)`` unless row 1 vanishes.
    """
    mods = a.ptype.moduli
    if a.k == 2:
        (a11, a12), (_, a22) = a.entries
        if a11 == mods[0] and a12 == 0:
            return True
        p, (al1, al2) = a.ptype.prime, a.ptype.exponents
        return a22 == gcd(p**al2, exact_div(p**al1 * a12, a11))
    rows = [r for r in generators(a) if any(r)]
    return all(_in_cyclic(rows[i + 1], rows[i], mods) for i in range(len(rows) - 1))


def solve_transpose(a: SubgroupMatrix) -> Optional[Tuple[int, ...]]:
    """Integer solution of ``A^T x = (p^alpha_1, ..., p^alpha_k)``, or None."""
    A = a.entries
    x: List[int] = []
    for i, target in enumerate(a.ptype.moduli):
        rest = target - sum(A[m][i] * x[m] for m in range(i))
        q, r = divmod(rest, A[i][i])
        if r:
            return None
        x.append(q)
    return tuple(x)


def check_solvability(a: SubgroupMatrix) -> bool:
    return solve_transpose(a) is not None


def top(ptype: PGroupType) -> SubgroupMatrix:
    k = ptype.rank
    return SubgroupMatrix(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), ptype)


def bottom(ptype: PGroupType) -> SubgroupMatrix:
    k, mods = ptype.rank, ptype.moduli
    return SubgroupMatrix(tuple(tuple(mods[i] if i == j else 0 for j in range(k)) for i in range(k)), ptype)


def covering_pairs(mats: Sequence[SubgroupMatrix]) -> List[Tuple[int, int]]:
    """Index pairs ``(i, j)`` where ``mats[j]`` covers ``mats[i]``."""
    n = len(mats)
    below = [[i != j and leq(mats[i], mats[j]) for j in range(n)] for i in range(n)]
    edges = []
    for i in range(n):
        ups = [j for j in range(n) if below[i][j]]
        for j in ups:
            if not any(below[m][j] for m in ups if m != j):
                edges.append((i, j))
    return edges
