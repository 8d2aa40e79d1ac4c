"""Batch front-end: ``cobordism lazard|variety|check``.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import sympy

from .algebra import format_coefficient
from .fgl import DEFAULT_ORDER, builtin_fgl, check_fgl_axioms, universal_fgl
from .genera import (
    FormalClass,
    MorphismDatum,
    adams_check,
    class_in_lazard,
    gdf_verify,
    prime_power_exponent,
    rost_check,
)
from .theories import chow_theory, extract_fgl, k_theory, universal_theory
from .varieties import (
    CatalogError,
    Product,
    chern_numbers,
    load_catalog,
    s_number,
    standard_catalog,
)

CATALOG_ENV = "COBORDISM_CATALOG"
STD_NAME = "std.json"
MAX_ORDER = 16


class UsageError(Exception):
    pass


def _cell(x):
    if isinstance(x, Fraction):
        return format_coefficient(x)
    if isinstance(x, bool) or x is None:
        return x
    return x


def _reject_floats(v):
    if isinstance(v, float):
        raise TypeError(f"floating-point value {v!r} in output")
    if isinstance(v, dict):
        for x in v.values():
            _reject_floats(x)
    elif isinstance(v, (list, tuple)):
        for x in v:
            _reject_floats(x)


def _partition_name(mu) -> str:
    if not mu:
        return "1"
    counts = {}
    for k in mu:
        counts[k] = counts.get(k, 0) + 1
    return "*".join(f"c{k}" if n == 1 else f"c{k}^{n}" for k, n in sorted(counts.items()))


def _flat(v):
    if isinstance(v, dict):
        return " ".join(f"{k}={_flat(x)}" for k, x in v.items())
    if isinstance(v, bool):
        return "pass" if v else "FAIL"
    if v is None:
        return ""
    return str(_cell(v))


def render(payload: dict, fmt: str) -> str:
    _reject_floats(payload)
    rows = payload.get("rows", [])
    if fmt == "json":
        return json.dumps(payload, indent=2, default=_cell) + "\n"
    columns = list(rows[0].keys()) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_flat(r[c]) for c in columns])
        return buf.getvalue()
    lines = []
    header = {k: v for k, v in payload.items() if k != "rows"}
    for k, v in header.items():
        lines.append(f"# {k}: {_flat(v)}")
    if columns:
        table = [columns] + [[_flat(r[c]) for c in columns] for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(columns))]
        for row in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _load(args):
    path = args.catalog or os.environ.get(CATALOG_ENV)
    try:
        # a bare "std.json" names the shipped catalog unless such a file exists here
        if path is None or (path == STD_NAME and not os.path.exists(path)):
            return standard_catalog()
        if path == "-":
            return load_catalog(sys.stdin)
        return load_catalog(path)
    except OSError as exc:
        raise UsageError(f"cannot read catalog: {exc}") from None
    except CatalogError as exc:
        raise UsageError(str(exc)) from None


def _lookup(catalog, label):
    for V in catalog:
        if V.label == label:
            return V
    raise UsageError(f"no variety labelled {label!r} in the catalog")


def _order(args):
    if not 2 <= args.order <= MAX_ORDER:
        raise UsageError(f"--order must lie in [2, {MAX_ORDER}], got {args.order}")
    return args.order


def cmd_lazard(args) -> tuple[dict, int]:
    N = _order(args)
    F = universal_fgl(N)
    if args.show == "aij":
        rows = [
            {"i": i, "j": j, "a_ij": str(F.a(i, j))}
            for i in range(1, N)
            for j in range(i, N - i + 1)
        ]
        return {"command": "lazard", "order": N, "rows": rows}, 0
    report = check_fgl_axioms(F)
    return {"command": "lazard", "order": N, "pass": report.passed, "rows": report.rows()}, 0 if report.passed else 1


def cmd_variety(args) -> tuple[dict, int]:
    catalog = _load(args)
    rows = []
    for V in catalog:
        row = {"label": V.name(), "dim": V.dim}
        if args.show == "chern-numbers":
            row["chern_numbers"] = {_partition_name(mu): n for mu, n in chern_numbers(V).items()}
        elif args.show == "sd":
            row["s_d"] = s_number(V) if V.dim > 0 else None
        else:
            if V.dim > args.order:
                raise UsageError(f"{V.name()} has dimension {V.dim} > --order {args.order}")
            coords = class_in_lazard(V, bound=max(args.order, DEFAULT_ORDER))
            row["lazard_class"] = str(coords.element)
            row["basis_coordinates"] = {
                "x".join(f"P{k}" for k in lam) or "pt": format_coefficient(c)
                for lam, c in coords.coefficients.items()
                if c
            }
        rows.append(row)
    return {"command": "variety", "show": args.show, "rows": rows}, 0


def _primes_for(d):
    return [p for p in sympy.primerange(2, d + 2) if prime_power_exponent(d, p) is not None]


def _check_adams(args):
    rows = []
    for V in _load(args):
        primes = [args.p] if args.p else _primes_for(V.dim)
        for p in primes:
            try:
                rep = adams_check(V, p)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            if not rep.witness["applicable"]:
                continue
            rows.append(
                {"variety": V.name(), "dim": V.dim, "p": p, "s_d": rep.witness["s_d"],
                 "quotient": rep.witness["quotient"], "pass": rep.passed}
            )
    return rows


def _check_products(args):
    rows = []
    for V in _load(args):
        if not isinstance(V, Product):
            continue
        if sum(1 for f in V.factors if f.dim > 0) < 2:
            continue
        s = s_number(V)
        rows.append({"variety": V.name(), "dim": V.dim, "s_d": s, "pass": s == 0})
    return rows


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + n for n in missing))


def _parse_decomposition(text, catalog):
    terms = []
    for item in filter(None, (t.strip() for t in (text or "").split(","))):
        coeff, sep, label = item.partition(":")
        if not sep:
            raise UsageError(f"decomposition term {item!r} is not of the form coeff:label")
        try:
            c = Fraction(coeff)
        except ValueError:
            raise UsageError(f"bad coefficient {coeff!r}") from None
        c = c.numerator if c.denominator == 1 else c
        terms.append((c, _lookup(catalog, label.strip())))
    return FormalClass(tuple(terms))


def _check_rost(args):
    _need(args, "source", "target", "deg", "p")
    catalog = _load(args)
    f = MorphismDatum(_lookup(catalog, args.source), _lookup(catalog, args.target), args.deg)
    try:
        rep = rost_check(f, args.p, args.eta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return [{**rep.inputs, **rep.witness, "pass": rep.passed}]


def _check_gdf(args):
    _need(args, "source", "target", "deg")
    catalog = _load(args)
    f = MorphismDatum(_lookup(catalog, args.source), _lookup(catalog, args.target), args.deg)
    try:
        rep = gdf_verify(f, _parse_decomposition(args.decomposition, catalog))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return [{**rep.inputs, "witness": rep.witness or {}, "pass": rep.passed}]


def _check_roundtrip(args):
    N = _order(args)
    rows = []
    for spec, law in (
        (chow_theory(N), builtin_fgl("additive", N)),
        (k_theory(N), builtin_fgl("multiplicative", N)),
        (universal_theory(N), universal_fgl(N)),
    ):
        got = extract_fgl(spec, N)
        rows.append({"theory": spec.name, "order": N, "pass": got == law})
    return rows


CHECKS = {
    "adams": _check_adams,
    "products": _check_products,
    "rost": _check_rost,
    "gdf": _check_gdf,
    "fgl-roundtrip": _check_roundtrip,
}


def cmd_check(args) -> tuple[dict, int]:
    rows = CHECKS[args.kind](args)
    ok = all(r["pass"] for r in rows)
    return {"command": "check", "kind": args.kind, "pass": ok, "rows": rows}, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order (default 8)")
    common.add_argument("--catalog", help=f"catalog JSON path, '-' for stdin (default ${CATALOG_ENV} or std.json)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")

    parser = argparse.ArgumentParser(prog="cobordism", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lazard", parents=[common], help="universal formal group law coefficients")
    p.add_argument("--show", choices=("aij", "axioms"), default="aij")
    p.set_defaults(func=cmd_lazard)

    p = sub.add_parser("variety", parents=[common], help="per-variety characteristic numbers")
    p.add_argument("--show", choices=("chern-numbers", "sd", "lazard-class"), default="chern-numbers")
    p.set_defaults(func=cmd_variety)

    p = sub.add_parser("check", parents=[common], help="verification sweeps and degree formulas")
    p.add_argument("kind", choices=sorted(CHECKS))
    p.add_argument("--p", type=int)
    p.add_argument("--deg", type=int)
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--eta", type=int, help="asserted zero-cycle degree for rost")
    p.add_argument("--decomposition", default="", help="gdf terms, e.g. '6:P1xP1,-6:P2'")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"cobordism: error: {exc}", file=sys.stderr)
        return 2
    try:
        sys.stdout.write(render(payload, args.format))
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return code


if __name__ == "__main__":
    sys.exit(main())
