"""Command-line front end.

Exit codes: 0 success, 1 mismatch found, 2 usage or parse error,
3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from math import prod
from typing import List, Optional, Sequence

from . import formulas, lattice
from .group import (
    GroupDescriptor,
    InvalidInput,
    ResourceLimit,
    is_prime,
    normalize,
    primary_decomposition,
    valuation,
)
from .oracle import DEFAULT_CAP, cross_check, quadform_checks, suite_groups

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
HASSE_NODE_LIMIT = 2000


_GROUP_SPEC = re.compile(r"[Zz]?\d+(\s*[,x×*]\s*[Zz]?\d+)*")


class UsageError(Exception):
    pass


def parse_group(text: str) -> GroupDescriptor:
    """Parse "4,8", "Z4xZ8" or "1" (trivial group) into invariant-factor form."""
    raw = text.strip()
    if raw == "1":
        return GroupDescriptor(())
    if not _GROUP_SPEC.fullmatch(raw):
        raise UsageError(f"cannot parse group spec {text!r}")
    moduli = [int(t) for t in re.findall(r"\d+", raw)]
    if any(m < 2 for m in moduli):
        raise UsageError(f"moduli must be >= 2 in {text!r}")
    return normalize(moduli)


def _emit(text: str, out) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


# -- count ------------------------------------------------------------------

def cmd_count(args, out) -> int:
    g = parse_group(args.group)
    report = formulas.formula_report(g, args.kind)
    render = {"text": report.to_text, "json": report.to_json, "csv": report.to_csv}[args.format]
    _emit(render(), out)
    return EXIT_OK


# -- enumerate --------------------------------------------------------------

def enumerate_records(g: GroupDescriptor, order: Optional[int] = None) -> dict:
    comps = primary_decomposition(g).components
    if order is not None:
        if order < 1 or g.order % order:
            raise UsageError(f"--order {order} does not divide |G| = {g.order}")
    listing = []
    for p, t in comps.items():
        if order is None:
            mats = lattice.enumerate_subgroups(t)
        else:
            mats = lattice.enumerate_of_order(t, valuation(order, p) if order % p == 0 else 0)
        listing.append({
            "prime": p,
            "exponents": list(t.exponents),
            "subgroups": [m.to_json() for m in mats],
        })
    doc = {
        "group": str(g),
        "order_filter": order,
        "total": prod(len(c["subgroups"]) for c in listing),
        "components": listing,
    }
    if len(listing) > 1:
        doc["note"] = ("composite group: each subgroup is the direct product of one "
                       "subgroup from every primary component")
    return doc


def cmd_enumerate(args, out) -> int:
    g = parse_group(args.group)
    doc = enumerate_records(g, args.order)
    if args.format == "json":
        _emit(json.dumps(doc), out)
    else:
        for comp in doc["components"]:
            _emit(f"# p={comp['prime']} exponents={comp['exponents']}", out)
            for rec in comp["subgroups"]:
                _emit(f"{rec['matrix']}  order={rec['order']}  cyclic={rec['cyclic']}  "
                      f"generators={rec['generators']}", out)
        _emit(f"total {doc['total']}", out)
    return EXIT_OK


# -- hasse ------------------------------------------------------------------

def hasse_dot(g: GroupDescriptor, limit: int = HASSE_NODE_LIMIT) -> str:
    comps = primary_decomposition(g).components
    if len(comps) > 1:
        raise UsageError("hasse needs a p-group (single prime)")
    lines = ["digraph subgroups {", "    rankdir=BT;", "    node [shape=box];"]
    if not comps:
        lines.append('    n0 [label="order 1\\n[]"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    (t,) = comps.values()
    mats = []
    for m in lattice.enumerate_subgroups(t):
        mats.append(m)
        if len(mats) > limit:
            raise ResourceLimit(f"more than {limit} subgroups")
    for i, m in enumerate(mats):
        label = f"order {lattice.subgroup_order(m)}\\n{[list(r) for r in m.entries]}"
        lines.append(f'    n{i} [label="{label}"];')
    for i, j in lattice.covering_pairs(mats):
        lines.append(f"    n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_hasse(args, out) -> int:
    g = parse_group(args.group)
    dot = hasse_dot(g, args.max_nodes)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(dot)
    else:
        out.write(dot)
    return EXIT_OK


# -- verify -----------------------------------------------------------------

def _check_one(item):
    group, cap = item
    return cross_check(group, cap=cap)


def cmd_verify(args, out) -> int:
    if args.suite == (args.group is not None):
        raise UsageError("give either a group or --suite")
    if args.suite:
        groups: List = suite_groups()
    else:
        groups = [parse_group(args.group)]
    items = [(g, args.cap) for g in groups]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_check_one, items))
    else:
        reports = [_check_one(it) for it in items]
    if args.suite:
        reports.append(quadform_checks())
    bad = sum(len(r.mismatches) for r in reports)
    if args.format == "json":
        rows = [row.to_dict() for r in reports for row in r.rows]
        _emit(json.dumps({"mismatches": bad, "rows": rows}), out)
    else:
        for r in reports:
            if args.suite and r.ok:
                _emit(f"{r.group}: ok ({len(r.rows)} rows)", out)
            else:
                _emit(r.to_text(), out)
        _emit(f"{len(reports)} reports, {bad} mismatches", out)
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


# -- quadform ---------------------------------------------------------------

def cmd_quadform(args, out) -> int:
    p, n = args.p, args.n
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    if n < 0:
        raise UsageError("n must be >= 0")
    m = formulas.build_quadform(p, n)
    doc = {"p": p, "n": n, "matrix": m.rows()}
    if args.det:
        if n >= 1:
            d, ok = formulas.det_quadform(p, n)
            doc["det"] = d
            doc["det_expected"] = (p - 1) ** n * p ** (n * (n - 1) // 2)
            doc["det_identity"] = ok
        else:
            doc["det"] = 1
    if args.check_pd:
        doc["positive_definite"] = formulas.is_positive_definite(m)
    if args.format == "json":
        _emit(json.dumps(doc), out)
        return EXIT_OK
    width = max(len(str(x)) for row in m.entries for x in row)
    _emit(f"A_{p}({n}) =", out)
    for row in m.entries:
        _emit("  [" + " ".join(str(x).rjust(width) for x in row) + "]", out)
    if "det" in doc:
        line = f"det = {doc['det']}"
        if "det_identity" in doc:
            verdict = "OK" if doc["det_identity"] else "FAILED"
            line += f"  expected (p-1)^n p^(n(n-1)/2) = {doc['det_expected']}  identity {verdict}"
        _emit(line, out)
    if "positive_definite" in doc:
        _emit("positive definite" if doc["positive_definite"] else "NOT positive definite", out)
    return EXIT_OK


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fglattice", description="Subgroups of finite abelian groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="closed-form subgroup / element counts")
    c.add_argument("group")
    c.add_argument("--kind", choices=formulas.KINDS, default="all")
    c.add_argument("--format", choices=("text", "json", "csv"), default="text")
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("enumerate", help="list subgroup matrices")
    e.add_argument("group")
    e.add_argument("--order", type=int, default=None, help="only subgroups of this order")
    e.add_argument("--format", choices=("json", "text"), default="json")
    e.set_defaults(func=cmd_enumerate)

    h = sub.add_parser("hasse", help="Hasse diagram in DOT format")
    h.add_argument("group")
    h.add_argument("-o", "--output", default=None)
    h.add_argument("--max-nodes", type=int, default=HASSE_NODE_LIMIT)
    h.set_defaults(func=cmd_hasse)

    v = sub.add_parser("verify", help="cross-check formulas, enumeration and brute force")
    v.add_argument("group", nargs="?")
    v.add_argument("--suite", action="store_true")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--cap", type=int, default=DEFAULT_CAP)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("quadform", help="the matrix of subgroup counts f_p(i, j)")
    q.add_argument("p", type=int)
    q.add_argument("n", type=int)
    q.add_argument("--det", action="store_true")
    q.add_argument("--check-pd", action="store_true")
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.set_defaults(func=cmd_quadform)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, InvalidInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
