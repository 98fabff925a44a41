"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 budget exceeded, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from toruskt import __version__
from toruskt.combinatorics import asymptotic_ratio, rank_by_genfun, rank_by_partitions
from toruskt.exactmat import ZMatrix
from toruskt.exterior import LinearizationSpec, anzai_matrix, linearization
from toruskt.golden import table_canonical
from toruskt.ktheory import BudgetExceeded, pv_kgroups, rank_kgroups
from toruskt.quotients import (
    QuotientSpec,
    orbit_cardinality,
    quotients_isomorphic,
    trace_range,
    zeta_invariant,
)
from toruskt.verify import DEFAULT_SEED, run_suite

OK, INPUT_ERROR, BUDGET_EXCEEDED, VERIFY_FAILED = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _spec_from_args(args) -> LinearizationSpec:
    try:
        if args.anzai is not None:
            return LinearizationSpec("anzai", n=args.anzai)
        if args.ascending is not None:
            return LinearizationSpec("ascending", k=tuple(int(x) for x in args.ascending.split(",")))
        if args.furstenberg is not None:
            obj = _load_json(args.furstenberg)
            obj.setdefault("kind", "furstenberg")
            return LinearizationSpec.from_json_obj(obj)
        src = args.general
        if not os.path.exists(src) and src.startswith("identity") and src[8:].isdigit():
            return LinearizationSpec("general", matrix=ZMatrix.identity(int(src[8:])))
        obj = _load_json(src)
        if "kind" in obj:
            return LinearizationSpec.from_json_obj(obj)
        return LinearizationSpec("general", matrix=ZMatrix.from_json_obj(obj))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(str(exc)) from exc


# rendering -------------------------------------------------------------------


def _emit(doc: dict, fmt: str, columns: list[str], rows: list[dict], out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: r.get(c, "") for c in columns})
        out.write(buf.getvalue())
    else:
        out.write(f"# {doc['command']}\n\n")
        out.write("| " + " | ".join(columns) + " |\n")
        out.write("|" + "---|" * len(columns) + "\n")
        for r in rows:
            out.write("| " + " | ".join(str(r.get(c, "")) for c in columns) + " |\n")


def _document(command: str, inputs: dict, results, timings=None) -> dict:
    doc = {"tool": "toruskt", "version": __version__, "command": command,
           "inputs": inputs, "results": results}
    if timings is not None:
        doc["timings"] = timings
    return doc


# commands --------------------------------------------------------------------


def cmd_kgroups(args, out) -> int:
    spec = _spec_from_args(args)
    A = linearization(spec)
    inputs = {"spec": spec.to_json_obj(), "budget": args.budget}
    try:
        K = pv_kgroups(A, args.budget)
    except BudgetExceeded as exc:
        result = {"n": A.rows, "error": "budget exceeded", "block": exc.block,
                  "blocks": [b.to_dict() for b in exc.completed]}
        rows = [{"r": b.r, "coker": str(b.coker), "ker": str(b.ker)} for b in exc.completed]
        rows.append({"r": exc.block, "coker": "budget exceeded", "ker": "budget exceeded"})
        _emit(_document("kgroups", inputs, result), args.format, ["r", "coker", "ker"], rows, out)
        return BUDGET_EXCEEDED
    timings = [round(b.seconds, 6) for b in K.per_block] if args.timings else None
    rows = [{"r": b.r, "coker": str(b.coker), "ker": str(b.ker)} for b in K.per_block]
    rows.append({"r": "K0", "coker": str(K.k0), "ker": ""})
    rows.append({"r": "K1", "coker": str(K.k1), "ker": ""})
    _emit(_document("kgroups", inputs, K.to_dict(), timings), args.format, ["r", "coker", "ker"], rows, out)
    return OK


def cmd_table(args, out) -> int:
    if args.max_n < 1:
        raise InputError("--max-n must be at least 1")
    golden = table_canonical()
    results, rows, timings = [], [], []
    status = OK
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        try:
            K = pv_kgroups(anzai_matrix(n), args.budget)
        except BudgetExceeded as exc:
            results.append({"n": n, "error": "budget exceeded", "block": exc.block})
            rows.append({"n": n, "K0": f"budget exceeded at r={exc.block}", "K1": "", "rank": "", "golden": ""})
            status = max(status, BUDGET_EXCEEDED)
            continue
        timings.append(round(time.perf_counter() - t0, 6))
        rec = {"n": n, "K0": K.k0.to_dict(), "K1": K.k1.to_dict(), "rank": K.rank}
        match = ""
        if n in golden:
            g0, g1, ga = golden[n]
            ok = K.k0 == g0 and K.k1 == g1 and K.rank == ga
            rec["matches_golden"] = ok
            match = "yes" if ok else "NO"
            if not ok:
                status = max(status, VERIFY_FAILED)
        results.append(rec)
        rows.append({"n": n, "K0": str(K.k0), "K1": str(K.k1), "rank": K.rank, "golden": match})
    doc = _document("table", {"max_n": args.max_n, "budget": args.budget}, results,
                    timings if args.timings else None)
    _emit(doc, args.format, ["n", "K0", "K1", "rank", "golden"], rows, out)
    return status


def cmd_rank(args, out) -> int:
    n = args.n
    if n < 1:
        raise InputError("--n must be at least 1")
    methods = ["snf", "partition", "genfun"] if args.method == "all" else [args.method]
    values = {}
    try:
        for m in methods:
            if m == "snf":
                values[m] = rank_kgroups(anzai_matrix(n), args.budget)
            elif m == "partition":
                values[m] = rank_by_partitions(n)
            else:
                values[m] = rank_by_genfun(n)
    except BudgetExceeded as exc:
        doc = _document("rank", {"n": n, "method": args.method},
                        {"error": "budget exceeded", "block": exc.block, "values": values})
        _emit(doc, args.format, ["method", "value"],
              [{"method": "snf", "value": f"budget exceeded at r={exc.block}"}], out)
        return BUDGET_EXCEEDED
    agree = len(set(values.values())) == 1
    result = {"n": n, "values": values, "agree": agree}
    if "genfun" in values:
        result["asymptotic_ratio"] = asymptotic_ratio(n, 10)
    rows = [{"method": m, "value": v} for m, v in values.items()]
    if len(values) > 1:
        rows.append({"method": "agree", "value": "yes" if agree else "NO"})
    if "asymptotic_ratio" in result:
        rows.append({"method": "ratio a_n n^1.5 / 2^n", "value": result["asymptotic_ratio"]})
    _emit(_document("rank", {"n": n, "method": args.method}, result), args.format,
          ["method", "value"], rows, out)
    return OK if agree else VERIFY_FAILED


def _quotient_spec(path: str) -> QuotientSpec:
    try:
        return QuotientSpec.from_json_obj(_load_json(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_classify(args, out) -> int:
    s, t = _quotient_spec(args.spec1), _quotient_spec(args.spec2)
    verdict = quotients_isomorphic(s, t)

    def witness(q):
        tr = trace_range(q)
        return {"n_minus_i": q.n - q.i, "C": orbit_cardinality(q),
                "zeta": zeta_invariant(q).to_json_obj(), "trace_range": tr.to_dict(),
                "rank": rank_by_genfun(q.n - q.i)}

    w1, w2 = witness(s), witness(t)
    result = {"isomorphic": verdict, "first": w1, "second": w2}
    rows = []
    for key in ("n_minus_i", "C", "rank"):
        rows.append({"invariant": key, "first": w1[key], "second": w2[key]})
    rows.append({"invariant": "zeta", "first": json.dumps(w1["zeta"]), "second": json.dumps(w2["zeta"])})
    rows.append({"invariant": "isomorphic", "first": "yes" if verdict else "no", "second": ""})
    _emit(_document("classify", {"spec1": s.to_json_obj(), "spec2": t.to_json_obj()}, result),
          args.format, ["invariant", "first", "second"], rows, out)
    return OK


def cmd_verify(args, out) -> int:
    try:
        checks = run_suite(args.suite, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    results = [c.to_dict() for c in checks]
    rows = [{"check": c.name, "cases": c.cases, "passed": "pass" if c.passed else "FAIL",
             "seed": "" if c.seed is None else c.seed} for c in checks]
    _emit(_document("verify", {"suite": args.suite, "seed": args.seed}, results), args.format,
          ["check", "cases", "passed", "seed"], rows, out)
    return OK if all(c.passed for c in checks) else VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toruskt", description="K-theory of torus crossed products by Z.")
    p.add_argument("--version", action="version", version=f"toruskt {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, budget=True):
        sp.add_argument("--format", choices=["md", "json", "csv"], default="md")
        if budget:
            sp.add_argument("--budget", type=int, default=None,
                            help="max elimination steps per exterior block")
            sp.add_argument("--timings", action="store_true", help="include per-block timings")

    k = sub.add_parser("kgroups", help="K-groups for one linearization")
    src = k.add_mutually_exclusive_group(required=True)
    src.add_argument("--anzai", type=int, metavar="N")
    src.add_argument("--ascending", metavar="K1,K2,...")
    src.add_argument("--furstenberg", metavar="FILE")
    src.add_argument("--general", metavar="FILE")
    common(k)
    k.set_defaults(func=cmd_kgroups)

    t = sub.add_parser("table", help="K-groups of the Anzai maps for n = 1..max-n")
    t.add_argument("--max-n", type=int, default=11)
    common(t)
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("rank", help="rank of the K-groups by several methods")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--method", choices=["snf", "partition", "genfun", "all"], default="all")
    common(r)
    r.set_defaults(func=cmd_rank)

    c = sub.add_parser("classify", help="decide isomorphism of two quotients")
    c.add_argument("spec1")
    c.add_argument("spec2")
    common(c, budget=False)
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="run property sweeps")
    v.add_argument("--suite", default="all",
                   choices=["identities", "duality", "oracle", "unipotent", "symmetry", "groups", "all"])
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(v, budget=False)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "budget", None) is not None and args.budget < 0:
        print("toruskt: error: --budget must be nonnegative", file=sys.stderr)
        return INPUT_ERROR
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"toruskt: error: {exc}", file=sys.stderr)
        if getattr(args, "format", None) == "json":
            out.write(json.dumps({"tool": "toruskt", "version": __version__, "command": args.command,
                                  "error": {"kind": "input", "message": str(exc)}}, indent=2) + "\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
