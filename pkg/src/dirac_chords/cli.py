"""Command-line front end.

Exit codes: 0 on success, 1 when a check finds a mismatch, 2 for usage,
parse and input errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from . import __version__
from .bench import format_table, run_bench, seed_from_env
from .chords import ChordDiagram, cycle_stats, enumerate_diagrams
from .errors import DiracChordsError
from .evaluate import compare, engine, engine_delta, engine_text, oracle
from .integrand import (
    QEDGraph,
    assemble,
    collapse_scale,
    conjecture_lhs,
    stratum_residual,
)
from .parser import parse
from .polynomials import MultiPoly, UGraph
from .summation import compositions, sum_all, sum_k_chords

OK, MISMATCH, USAGE = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_json(path: str):
    return json.loads(Path(path).read_text())


def _expressions(args) -> List[str]:
    if args.expr and args.expr != ["-"]:
        return [" ".join(args.expr)]
    lines = [line.strip() for line in sys.stdin]
    return [line for line in lines if line and not line.startswith("#")]


def _parse_assignments(tokens: Sequence[str]) -> dict:
    """``n=2,1 k=3`` style arguments."""
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not value:
            raise argparse.ArgumentTypeError(f"expected key=value, got {tok!r}")
        out[key] = tuple(int(x) for x in value.split(","))
    return out


# -- contract / oracle --------------------------------------------------------

def contract_one(text: str, check: bool, expand: bool, use_oracle: bool, seed: int) -> dict:
    expr = parse(text)
    out = {"input": text}
    if use_oracle:
        nf = oracle(expr, random.Random(seed) if seed is not None else None)
        out["expanded"] = str(nf)
        return out
    results = engine(expr)
    out["factored"] = engine_text(results)
    if expand or check:
        out["expanded"] = str(engine_delta(results))
    if check:
        verdict = compare(engine_delta(results), oracle(expr))
        out["check"] = verdict or "mismatch"
    return out


def _contract_task(payload) -> dict:
    text, check, expand, use_oracle, seed = payload
    try:
        return contract_one(text, check, expand, use_oracle, seed)
    except (DiracChordsError, SyntaxError) as exc:
        return {"input": text, "error": f"{type(exc).__name__}: {exc}"}


def run_contract(args, use_oracle: bool = False) -> int:
    texts = _expressions(args)
    seed = None
    if use_oracle and getattr(args, "random", False):
        seed = seed_from_env()
    payloads = [(t, getattr(args, "check", False), args.expand, use_oracle, seed) for t in texts]
    if args.jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_contract_task, payloads))
    else:
        results = [_contract_task(p) for p in payloads]
    code = OK
    for res in results:
        if "error" in res:
            print(res["error"], file=sys.stderr)
            code = max(code, USAGE)
            continue
        if res.get("check") == "mismatch":
            code = max(code, MISMATCH)
        if args.json:
            print(_dump(res))
            continue
        if use_oracle:
            print(res["expanded"])
            continue
        print(res["factored"])
        if args.expand:
            print(f"  = {res['expanded']}")
        if "check" in res:
            status = "MISMATCH" if res["check"] == "mismatch" else f"match ({res['check']})"
            print(f"  check: {status}")
    return code


# -- sumcheck -----------------------------------------------------------------

def run_sumcheck(args) -> int:
    params = _parse_assignments(args.params)
    reports = []
    if "N" in params:
        for N in params["N"]:
            reports.extend(sum_all(n) for n in compositions(N))
    elif args.all:
        if "n" not in params:
            raise argparse.ArgumentTypeError("sumcheck --all needs n=...")
        reports.append(sum_all(params["n"]))
    else:
        if args.d0:
            D0 = ChordDiagram.from_dict(_read_json(args.d0))
        elif "n" in params:
            D0 = ChordDiagram.build([2 * x for x in params["n"]])
        else:
            raise argparse.ArgumentTypeError("sumcheck needs n=..., N=... or --d0 FILE")
        ks = params.get("k", (1,))
        reports.extend(sum_k_chords(D0, k) for k in ks)
    for r in reports:
        print(r.to_json())
    return OK if all(r.equal for r in reports) else MISMATCH


# -- enumerate ----------------------------------------------------------------

def run_enumerate(args) -> int:
    params = _parse_assignments(args.params)
    D0 = ChordDiagram.from_dict(_read_json(args.d0)) if args.d0 else None
    if "n" in params:
        n = params["n"]
    elif D0 is not None:
        n = tuple(m // 2 for m in D0.bases)
    else:
        raise argparse.ArgumentTypeError("enumerate needs n=... or --d0 FILE")
    k = params.get("k", (sum(n),))[0]
    count = 0
    for D in enumerate_diagrams(n, k, D0):
        count += 1
        if not args.count:
            stats = cycle_stats(D)
            row = D.to_dict()
            row.update(c2=stats.c2, c3=stats.c3, s=stats.s)
            print(_dump(row))
    if args.count:
        print(_dump({"n": list(n), "k": k, "count": count}))
    return OK


# -- graph commands -----------------------------------------------------------

def _load_graph(args):
    G = UGraph.from_dict(_read_json(args.graph))
    if args.qed:
        Q = QEDGraph.from_dict(_read_json(args.qed))
        return G, (Q.n,), Q.edge_map, Q
    params = _parse_assignments(args.params)
    if "n" not in params:
        raise argparse.ArgumentTypeError("need n=... or --qed FILE")
    edge_map = {}
    if args.edge_map:
        raw = _read_json(args.edge_map) if Path(args.edge_map).exists() else json.loads(args.edge_map)
        edge_map = {int(k): int(v) for k, v in raw.items()}
    return G, params["n"], edge_map, None


def run_conjecture(args) -> int:
    G, n, edge_map, _ = _load_graph(args)
    if args.cp_one:
        lhs = conjecture_lhs(n, G, edge_map, cp=lambda u, v: MultiPoly.const(1))
        out = {"n": list(n), "lhs": lhs.to_text()}
    else:
        lhs = conjecture_lhs(n, G, edge_map)
        residual, quotient = stratum_residual(n, G, edge_map)
        scaled, scaled_q = stratum_residual(n, G, edge_map, collapse_scale(n))
        out = {
            "n": list(n),
            "lhs": lhs.to_text(),
            "divisible": lhs.content() % 2 ** len(n) == 0,
            "residual": residual.to_text(),
            "psi_divides": quotient is not None,
            "collapse_residual": scaled.to_text(),
            "collapse_psi_divides": scaled_q is not None,
        }
    if args.json:
        print(_dump(out))
    else:
        print(out["lhs"])
    return OK


def run_integrand(args) -> int:
    G, _, _, Q = _load_graph(args)
    if Q is None:
        raise argparse.ArgumentTypeError("integrand needs --qed FILE")
    for term in assemble(Q, G):
        print(_dump(term.to_dict()))
    return OK


# -- bench --------------------------------------------------------------------

def run_bench_cmd(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",") if x.strip()] if args.sizes else []
    rows = run_bench(sizes, per_size=args.per_size, batch=args.batch, seed=args.seed, jobs=args.jobs)
    if args.json:
        for r in rows:
            print(_dump(r.to_dict()))
    else:
        table = format_table(rows)
        if table:
            print(table)
    return OK if all(r.agree == r.count for r in rows) else MISMATCH


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dirac-chords", description="Contract Dirac matrix words via chord diagrams.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("contract", help="closed-formula contraction")
    c.add_argument("expr", nargs="*", help="expression; omit or '-' to read one per line from stdin")
    c.add_argument("--check", action="store_true", help="compare with the rewriting oracle")
    c.add_argument("--expand", action="store_true", help="also print the delta form")
    c.add_argument("--oracle", action="store_true", help="use the rewriting oracle instead")
    c.add_argument("--json", action="store_true")
    c.add_argument("--jobs", type=int, default=1)

    o = sub.add_parser("oracle", help="rewriting-oracle normal form")
    o.add_argument("expr", nargs="*")
    o.add_argument("--random", action="store_true", help="random rewrite order (seed from DIRAC_CHORDS_SEED)")
    o.add_argument("--json", action="store_true")
    o.add_argument("--jobs", type=int, default=1)

    s = sub.add_parser("sumcheck", help="verify the completion sums")
    s.add_argument("params", nargs="*", help="n=2,1  k=1,2  or N=5 for every base tuple of order 5")
    s.add_argument("--all", action="store_true", help="sum over every perfect diagram")
    s.add_argument("--d0", help="chord diagram JSON file")

    e = sub.add_parser("enumerate", help="list chord diagrams with cycle counts")
    e.add_argument("params", nargs="*", help="n=3 k=2")
    e.add_argument("--d0", help="chord diagram JSON file")
    e.add_argument("--count", action="store_true")

    for name, fn, hint in (
        ("conjecture-lhs", run_conjecture, "weighted diagram sum with cycle polynomials"),
        ("integrand", run_integrand, "numerator terms of a fermion loop"),
    ):
        g = sub.add_parser(name, help=hint)
        g.add_argument("params", nargs="*", help="n=2")
        g.add_argument("--graph", required=True, help='graph JSON {"vertices": V, "edges": [[t, h], ...]}')
        g.add_argument("--qed", help="fermion-loop JSON")
        g.add_argument("--edge-map", help="JSON object or file mapping diagram vertices to edges")
        if name == "conjecture-lhs":
            g.add_argument("--cp-one", action="store_true", help="replace every cycle polynomial by 1")
            g.add_argument("--json", action="store_true")
        g.set_defaults(handler=fn)

    b = sub.add_parser("bench", help="closed formula against the oracle")
    b.add_argument("--sizes", default="6,10,14,18", help="fully paired word lengths")
    b.add_argument("--per-size", type=int, default=20)
    b.add_argument("--batch", type=int, default=0, help="random length-10 inputs")
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--json", action="store_true")
    return p


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    try:
        if args.command == "contract":
            return run_contract(args, use_oracle=args.oracle)
        if args.command == "oracle":
            args.expand = True
            return run_contract(args, use_oracle=True)
        if args.command == "sumcheck":
            return run_sumcheck(args)
        if args.command == "enumerate":
            return run_enumerate(args)
        if args.command in ("conjecture-lhs", "integrand"):
            return args.handler(args)
        if args.command == "bench":
            return run_bench_cmd(args)
    except (DiracChordsError, SyntaxError, ValueError, KeyError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    parser.error(f"unknown command {args.command}")
    return USAGE


if __name__ == "__main__":
    sys.exit(main())
