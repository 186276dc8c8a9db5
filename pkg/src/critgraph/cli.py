"""Command line entry point: ``critgraph construct | verify | witness | density``.

Exit codes: 0 every requested claim verified, 1 usage or parse error,
2 a budget ran out before a claim was settled, 3 a claim was refuted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from .colorer import Budget, BudgetExhausted, ColoringWitness, chromatic_number, is_k_critical, verify_witness
from .constructions import (
    BaseCatalog,
    ConstructionSpec,
    build_G5k,
    build_Gk,
    build_U,
    cone,
    grotzsch,
    gyarfas,
    m_deleted,
    mycielski,
    odd_cycle,
    ogt_graph,
    toft,
    u_orders,
)
from .formats import FORMATS, ParseError, export, guess_format, parse
from .graph import Graph, density_stats, odd_girth
from .sizing import density_table, format_density_table
from .witnesses import witness_for

REPORT_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN, EXIT_REFUTED = 0, 1, 2, 3

_EXT = {"graph6": ".g6", "dimacs": ".col", "edgelist": ".edges", "json": ".json"}


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _budget(args) -> Budget:
    env = Budget.from_env()
    nodes = env.max_nodes if args.max_nodes is None else args.max_nodes
    secs = env.max_seconds if args.max_seconds is None else args.max_seconds
    return Budget(nodes or None, secs or None)


def _og(value) -> int | str:
    return "infinite" if value == float("inf") else int(value)


# ---------------------------------------------------------------------
# construct


def _child(token: str) -> Graph:
    """Child graph shorthand for ``construct u``: grotzsch, c7, toft5, myc7."""
    t = token.lower()
    for prefix, make in (("toft", toft), ("myc", lambda m: mycielski(odd_cycle(m))), ("c", odd_cycle)):
        if t.startswith(prefix) and t[len(prefix):].isdigit():
            return make(int(t[len(prefix):]))
    if t == "grotzsch":
        return grotzsch()
    raise UsageError(f"unknown child graph {token!r}; use grotzsch, cN, toftN or mycN")


def _build(args, budget: Budget) -> Graph:
    fam = args.family
    if fam == "spec":
        if not args.spec:
            raise UsageError("construct spec needs --spec FILE")
        return ConstructionSpec.from_json(Path(args.spec).read_text()).build(budget)
    if fam == "cycle":
        return odd_cycle(args.m or 5)
    if fam == "grotzsch":
        return grotzsch()
    if fam == "toft":
        return toft(args.m or 5, args.m2)
    if fam == "mycielski":
        g = odd_cycle(args.m or 5)
        for _ in range(args.times):
            g = mycielski(g)
        return g
    if fam == "u":
        if not args.children:
            raise UsageError("construct u needs --children")
        return build_U([_child(c) for c in args.children])
    if fam == "gk":
        catalog = BaseCatalog("triangle", args.m or 5)
        if args.base == "toft":
            k = args.k or 5

            def pick(r):
                return catalog.get(r, "toft") if r == 4 else catalog.get(r)

            sides = tuple([pick(r) for r in u_orders(k, i)] for i in (k // 2, (k + 1) // 2))
            return build_Gk(k, sides)
        return build_Gk(args.k or 5, catalog=catalog)
    if fam == "g5k":
        return build_G5k(args.k or 4, m=args.m or 7, budget=budget)
    if fam == "gyarfas":
        return gyarfas(args.m or 5)
    if fam == "ogt":
        q = args.q or 1
        return ogt_graph(q, args.m or 2 * q + 5)
    if fam == "cone":
        return cone(odd_cycle(args.m or 7), args.q or 2)
    if fam == "mdeleted":
        return m_deleted(odd_cycle(args.m or 7), args.r or 2, args.k or 4, args.policy, budget)
    raise UsageError(f"unknown family {fam!r}")


def cmd_construct(args) -> int:
    budget = _budget(args)
    g = _build(args, budget)
    fmt = args.format
    out = Path(args.out) if args.out else Path(args.family + _EXT[fmt])
    out.write_bytes(export(g, fmt))
    spec_path = Path(args.spec_out) if args.spec_out else out.with_name(out.stem + ".spec.json")
    if g.spec is not None and spec_path != out:
        spec_path.write_text(_dump(g.spec.to_dict()))
    print(f"{out}: {density_stats(g)}")
    return EXIT_OK


# ---------------------------------------------------------------------
# verify


def _read_input(path: str, fmt: str | None) -> tuple[Graph, bytes, str]:
    data = Path(path).read_bytes()
    fmt = fmt or guess_format(path)
    if fmt == "json" and b'"edges"' not in data:
        # a bare construction manifest
        return ConstructionSpec.from_json(data.decode()).build(), data, "spec"
    return parse(data, fmt), data, fmt


def cmd_verify(args) -> int:
    g, data, fmt = _read_input(args.input, args.format)
    budget = _budget(args)
    report: dict = {
        "reportVersion": REPORT_VERSION,
        "command": "verify",
        "input": {"name": Path(args.input).name, "format": fmt, "sha256": hashlib.sha256(data).hexdigest(), "vertices": g.n, "edges": g.num_edges},
        "budget": budget.to_dict(),
        "seed": args.seed,
        "checks": {},
    }
    timings = {}
    outcomes = []
    checks = report["checks"]

    t0 = time.perf_counter()
    og = odd_girth(g)
    timings["oddGirth"] = time.perf_counter() - t0
    checks["oddGirth"] = {"mode": "exact", "value": _og(og)}
    checks["triangleFree"] = {"mode": "exact", "value": og > 3}
    checks["pentagonFree"] = {"mode": "exact", "value": og > 5}
    if args.expect_odd_girth is not None:
        outcomes.append("ok" if og == args.expect_odd_girth else "refuted")

    if args.chi:
        t0 = time.perf_counter()
        chi = chromatic_number(g, budget)
        timings["chromatic"] = time.perf_counter() - t0
        checks["chromatic"] = chi.to_dict()
        if chi.witness is not None:
            checks["chromatic"]["witness"] = {"colors": chi.witness.k, "verified": verify_witness(g, chi.witness)}
        outcomes.append("ok" if chi.exact else "unknown")

    if args.critical is not None:
        t0 = time.perf_counter()
        if args.sample is not None:
            if args.seed is None:
                raise UsageError("--sample needs an explicit --seed")
            rep = is_k_critical(g, args.critical, "sampled", budget, samples=args.sample, seed=args.seed, jobs=args.jobs)
        else:
            rep = is_k_critical(g, args.critical, "full", budget, jobs=args.jobs)
        timings["criticality"] = time.perf_counter() - t0
        checks["criticality"] = rep.to_dict()
        outcomes.append({"k-critical": "ok", "sampled-pass": "ok", "not-critical": "refuted"}.get(rep.verdict, "unknown"))

    if not args.no_timings:
        report["timings"] = {k: round(v, 6) for k, v in timings.items()}
    code = EXIT_REFUTED if "refuted" in outcomes else EXIT_UNKNOWN if "unknown" in outcomes else EXIT_OK
    report["exitCode"] = code
    text = _dump(report)
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    return code


# ---------------------------------------------------------------------
# witness


def cmd_witness(args) -> int:
    data = Path(args.input).read_bytes()
    fmt = args.format or guess_format(args.input)
    if fmt != "json":
        raise UsageError("witness needs a JSON graph carrying its construction spec, or a spec manifest")
    if b'"edges"' in data:
        stored = parse(data, "json")
        if stored.spec is None:
            raise UsageError("input graph has no construction spec; rebuild it with 'critgraph construct --format json'")
        spec = stored.spec
    else:
        stored, spec = None, ConstructionSpec.from_json(data.decode())
    budget = _budget(args)
    g = spec.build(budget)
    if stored is not None and not g.same_adjacency(stored):
        raise UsageError("stored adjacency differs from the graph its spec rebuilds")
    edge = tuple(args.edge) if args.edge else None
    if edge is not None and not (0 <= min(edge) and max(edge) < g.n and g.has_edge(*edge)):
        raise UsageError(f"({edge[0]}, {edge[1]}) is not an edge of the input graph")
    try:
        w = witness_for(g, args.clause, vertex=args.vertex, edge=edge, budget=budget)
    except BudgetExhausted as exc:
        print(f"critgraph: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (ValueError, KeyError) as exc:
        raise UsageError(f"clause {args.clause!r} not applicable: {exc}") from None
    target = g.without_edge(*edge) if edge is not None else g
    if not verify_witness(target, ColoringWitness(w.assignment, w.k)):
        print("critgraph: generated witness failed verification", file=sys.stderr)
        return EXIT_REFUTED
    doc = w.to_dict()
    doc["input"] = {"name": Path(args.input).name, "sha256": hashlib.sha256(data).hexdigest()}
    text = _dump(doc)
    if args.out:
        Path(args.out).write_text(text)
        print(f"{args.out}: {w.k}-coloring of {target.n} vertices, clause {w.clause}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------
# density


def _int_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        return list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N or A..B") from None


def _sweep(family: str, args) -> list[dict]:
    rows = []
    if family == "toft":
        for m in range(5, 5 + 2 * args.steps, 2):
            rows.append(_row(toft(m), {"m": m}, Fraction(1, 16)))
    elif family == "gk":
        k = args.k or 5
        for m in range(5, 5 + 2 * args.steps, 2):
            rows.append(_row(build_Gk(k, catalog=BaseCatalog("triangle", m)), {"k": k, "m": m}, Fraction(1, 4)))
    elif family == "g5k":
        k = args.k or 4
        for m in range(7, 7 + 2 * args.steps, 2):
            rows.append(_row(build_G5k(k, m=m, budget=_budget(args)), {"k": k, "m": m}, None))
    elif family == "ogt":
        for q in _int_range(args.q or f"1..{args.steps}"):
            g = ogt_graph(q, 2 * q + 5)
            row = _row(g, {"q": q, "m": 2 * q + 5}, Fraction(1, (2 * q + 4) ** 2))
            block = len(g.parts["sides"][0].blocks["active"])
            row["blockRatio"] = str(Fraction(block * block, g.n * g.n))
            row["blockMatchesFormula"] = Fraction(block * block, g.n * g.n) == Fraction(1, (2 * q + 4) ** 2)
            rows.append(row)
    else:
        raise UsageError(f"no sweep for family {family!r}; use toft, gk, g5k or ogt")
    return rows


def _row(g: Graph, params: dict, reference: Fraction | None) -> dict:
    st = density_stats(g)
    row = {"params": params, "vertices": st.vertices, "edges": st.edges, "ratio": str(st.ratio), "ratioFloat": round(st.ratio_float, 9)}
    if reference is not None:
        row["reference"] = str(reference)
    return row


def cmd_density(args) -> int:
    if args.mode == "table":
        entries = density_table()
        if args.json:
            sys.stdout.write(_dump({"reportVersion": REPORT_VERSION, "command": "density table", "entries": [e.to_dict() for e in entries]}))
        else:
            sys.stdout.write(format_density_table(entries) + "\n")
        return EXIT_OK
    if not args.family:
        raise UsageError("density sweep needs a family")
    rows = _sweep(args.family, args)
    if args.json:
        sys.stdout.write(_dump({"reportVersion": REPORT_VERSION, "command": f"density sweep {args.family}", "rows": rows}))
    else:
        for r in rows:
            ref = f"  reference {r['reference']}" if "reference" in r else ""
            extra = f"  block {r['blockRatio']}" if "blockRatio" in r else ""
            par = " ".join(f"{k}={v}" for k, v in r["params"].items())
            print(f"{par:<12} n={r['vertices']:<6} e={r['edges']:<8} e/n^2={r['ratioFloat']:.6f}{extra}{ref}")
    return EXIT_OK


# ---------------------------------------------------------------------
# argument parsing


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-nodes", type=int, default=None, help="search nodes per decision (0 = unlimited; default 10^7 or $CRITGRAPH_BUDGET)")
    p.add_argument("--max-seconds", type=float, default=None, help="wall clock seconds per decision (0 = unlimited; default 60)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="critgraph", description="Dense chromatic-critical graphs of prescribed odd girth.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a graph and write it with its spec")
    p.add_argument("family", choices=["cycle", "grotzsch", "toft", "mycielski", "u", "gk", "g5k", "gyarfas", "ogt", "cone", "mdeleted", "spec"])
    p.add_argument("--m", type=int, help="cycle length / Toft parameter")
    p.add_argument("--m2", type=int, help="second Toft cycle length")
    p.add_argument("--k", type=int, help="criticality order")
    p.add_argument("--q", type=int, help="Mycielski depth")
    p.add_argument("--r", type=int, help="forced forward colors for mdeleted")
    p.add_argument("--times", type=int, default=1, help="Mycielski iterations")
    p.add_argument("--policy", choices=["greedy", "skip"], default="greedy")
    p.add_argument("--base", choices=["grotzsch", "toft"], default="grotzsch", help="order-4 children for gk")
    p.add_argument("--children", nargs="+", help="children for u: grotzsch, cN, toftN, mycN")
    p.add_argument("--spec", help="construction manifest for family 'spec'")
    p.add_argument("--out", help="graph output path (default FAMILY.EXT)")
    p.add_argument("--spec-out", help="spec output path (default OUT stem + .spec.json)")
    p.add_argument("--format", choices=FORMATS, default="json")
    _add_budget(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check odd girth, chromatic number and criticality")
    p.add_argument("input")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--odd-girth", action="store_true", help="report odd girth (always computed)")
    p.add_argument("--expect-odd-girth", type=int, help="refute unless the odd girth equals this")
    p.add_argument("--chi", action="store_true", help="exact chromatic number")
    p.add_argument("--critical", type=int, metavar="K", help="check K-criticality")
    p.add_argument("--sample", type=int, metavar="N", help="check N seeded edges instead of all")
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--no-timings", action="store_true", help="omit timings so reports are byte-reproducible")
    p.add_argument("--report", help="write the report here instead of stdout")
    _add_budget(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="proof-derived coloring witness for a constructed graph")
    p.add_argument("input")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--clause", required=True, choices=["proper-k", "after-removal", "part1", "part3", "avoid"])
    p.add_argument("--edge", type=int, nargs=2, metavar=("U", "V"))
    p.add_argument("--vertex", type=int)
    p.add_argument("--out")
    _add_budget(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("density", help="density table or sweeps")
    p.add_argument("mode", choices=["table", "sweep"])
    p.add_argument("family", nargs="?")
    p.add_argument("--k", type=int)
    p.add_argument("--q", help="N or A..B")
    p.add_argument("--steps", type=int, default=3)
    p.add_argument("--json", action="store_true")
    _add_budget(p)
    p.set_defaults(func=cmd_density)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError, KeyError, OSError) as exc:
        print(f"critgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhausted as exc:
        print(f"critgraph: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
