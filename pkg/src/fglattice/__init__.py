"""Counting and enumerating subgroups of finite abelian groups.

Subgroups of a p-group are represented by upper-triangular integer matrices
(:mod:`fglattice.lattice`), counted in closed form where possible
(:mod:`fglattice.formulas`) and checked against brute force on the explicit
group (:mod:`fglattice.oracle`).
"""

from .group import (
    GroupDescriptor,
    InvalidInput,
    PGroupType,
    PrimaryDecomposition,
    ResourceLimit,
    euler_phi,
    normalize,
    primary_decomposition,
)
from .report import CountReport

__version__ = "0.1.0"

__all__ = [
    "CountReport",
    "GroupDescriptor",
    "InvalidInput",
    "PGroupType",
    "PrimaryDecomposition",
    "ResourceLimit",
    "euler_phi",
    "normalize",
    "primary_decomposition",
]
