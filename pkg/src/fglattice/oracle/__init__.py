"""Brute-force ground truth on the explicit group, and comparison reports."""

from .explicit import (
    DEFAULT_CAP,
    ExplicitGroup,
    SubgroupSet,
    all_subgroups,
    element_order,
    is_cyclic_subgroup,
    order_census,
    span,
)
from .crosscheck import DiscrepancyReport, Row, cross_check, quadform_checks, suite_groups

__all__ = [
    "DEFAULT_CAP",
    "ExplicitGroup",
    "SubgroupSet",
    "all_subgroups",
    "element_order",
    "is_cyclic_subgroup",
    "order_census",
    "span",
    "DiscrepancyReport",
    "Row",
    "cross_check",
    "quadform_checks",
    "suite_groups",
]
