"""Command-line interface: ``tstrx <command> [args] [--format text|json] [--field p] [--out path]``.

Exit codes: 0 on success (a rejected candidate is still a success), 2 on
usage, parse or precondition errors, 3 on internal inconsistency.
"""
from __future__ import annotations

import argparse
import os
import sys
import time

from tstrx import __version__
from tstrx.audit import example_audit
from tstrx.chainfile import parse_chain_file, parse_object, parse_tset, render_chain_file
from tstrx.distance import (
    compute_distance,
    construct_distance_n,
    lemma_sy_grid,
    symmetry_and_uniqueness_audit,
)
from tstrx.errors import InternalInconsistency, TstrxError
from tstrx.quiver_rep import enumerate_indecomposables, parse_quiver
from tstrx.report import Report
from tstrx.torsion import check_torsion_pair, enumerate_torsion_pairs, is_ext_split, labels
from tstrx.tstructure import Window, enumerate_chain_tstructures, present, truncate

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3


def _quiver(spec: str, field: int | None):
    q = parse_quiver(spec)
    return q.with_field(field) if field is not None else q


def _chain(path: str, field: int | None):
    with open(path, encoding="utf-8") as fh:
        return parse_chain_file(fh.read(), field)


def cmd_inds(args) -> Report:
    q = _quiver(args.quiver, args.field)
    rows = [
        {
            "dimvec": list(M.dimvec),
            "interval": [M.lo, M.hi],
            "projective": M.is_projective,
            "injective": M.is_injective,
            "simple": M.is_simple,
        }
        for M in enumerate_indecomposables(q)
    ]
    return Report("inds", {"quiver": q.spec}, "ok", data={"count": len(rows), "indecomposables": rows})


def cmd_torsion(args) -> Report:
    q = _quiver(args.quiver, args.field)
    if args.action == "enumerate":
        rows = []
        for tp in enumerate_torsion_pairs(q):
            rows.append({"T": labels(tp.tset), "F": labels(tp.fset),
                         "nontrivial": tp.nontrivial, "ext_split": bool(is_ext_split(tp))})
        return Report("torsion enumerate", {"quiver": q.spec}, "ok", data={"count": len(rows), "pairs": rows})
    if args.tset is None:
        raise TstrxError("torsion check needs a T-set such as S=0,1")
    tset = parse_tset(q, args.tset)
    r = check_torsion_pair(q, tset)
    inputs = {"quiver": q.spec, "tset": labels(tset)}
    if r:
        split = is_ext_split(r)
        return Report("torsion check", inputs, "valid",
                      data={"T": labels(r.tset), "F": labels(r.fset), "nontrivial": r.nontrivial,
                            "ext_split": bool(split)})
    witness = {"module": r.module.label if r.module else None, "closure": r.closure, "detail": r.detail,
               "trace": list(r.trace), "quotient": list(r.quotient)}
    return Report("torsion check", inputs, "rejected", witnesses=[witness])


def _validation_data(ts) -> dict:
    rep = ts.validated.to_dict()
    return {"chain": ts.chain.render(), "checks": rep["checks"]}


def cmd_tstruct(args) -> Report:
    if args.action == "enumerate":
        if len(args.rest) != 2:
            raise TstrxError("tstruct enumerate needs <lo> <hi>")
        q = _chain(args.target, args.field).quiver if os.path.isfile(args.target) else _quiver(args.target, args.field)
        window = Window(int(args.rest[0]), int(args.rest[1]))
        found = enumerate_chain_tstructures(q, window)
        return Report("tstruct enumerate", {"quiver": q.spec, "window": [window.lo, window.hi]}, "ok",
                      data={"count": len(found), "chains": [ts.chain.render() for ts in found]})
    chain = _chain(args.target, args.field)
    ts = present(chain)
    inputs = {"quiver": chain.quiver.spec, "window": [chain.window.lo, chain.window.hi], "chain": chain.render()}
    if args.action == "validate":
        return Report("tstruct validate", inputs, ts.validated.verdict.value,
                      witnesses=[dict(w) for w in ts.validated.witnesses], data=_validation_data(ts))
    if len(args.rest) != 1:
        raise TstrxError("tstruct truncate needs one object literal such as 1:1,1")
    X = parse_object(chain.quiver, args.rest[0])
    inputs["object"] = X.render()
    A, B = truncate(ts, X)
    return Report("tstruct truncate", inputs, "ok", data={"aisle_part": A.render(), "coaisle_part": B.render()})


def cmd_distance(args) -> Report:
    if args.action == "construct":
        if len(args.rest) != 2:
            raise TstrxError("distance construct needs <tset> <n>")
        q = _chain(args.target, args.field).quiver if os.path.isfile(args.target) else _quiver(args.target, args.field)
        tset = parse_tset(q, args.rest[0])
        n = int(args.rest[1])
        tp = check_torsion_pair(q, tset)
        if not tp:
            return Report("distance construct", {"quiver": q.spec, "tset": labels(tset), "n": n}, "rejected",
                          witnesses=[{"module": tp.module.label, "closure": tp.closure, "detail": tp.detail}])
        ts = construct_distance_n(tp, n)
        text = render_chain_file(ts.chain)
        if args.chain_out:
            with open(args.chain_out, "w", encoding="utf-8") as fh:
                fh.write(text)
        data = {"chain_file": text, "ext_split": bool(is_ext_split(tp)), **_validation_data(ts)}
        if ts.accepted:
            data["distance"] = compute_distance(ts).to_dict()
        return Report("distance construct", {"quiver": q.spec, "tset": labels(tset), "n": n},
                      ts.validated.verdict.value, witnesses=[dict(w) for w in ts.validated.witnesses], data=data)
    chain = _chain(args.target, args.field)
    ts = present(chain)
    inputs = {"quiver": chain.quiver.spec, "window": [chain.window.lo, chain.window.hi], "chain": chain.render()}
    if not ts.accepted:
        return Report(f"distance {args.action}", inputs, ts.validated.verdict.value,
                      witnesses=[dict(w) for w in ts.validated.witnesses], data=_validation_data(ts))
    if args.action == "compute":
        res = compute_distance(ts)
        return Report("distance compute", inputs, "ok", data={**res.to_dict(), "routes_agree": True})
    grid = lemma_sy_grid(ts)
    sym = symmetry_and_uniqueness_audit(ts)
    ok = all(r["agree"] for r in grid) and sym["symmetric"] and sym["unique"] and sym["bounds_hold"]
    data = {
        "equivalence_grid": [{"m": r["m"], "n": r["n"], "value": r["statements"]["1"], "agree": r["agree"]}
                             for r in grid],
        "symmetry": sym,
    }
    return Report("distance audit", inputs, "pass" if ok else "counterexample", data=data)


def cmd_paper_audit(args) -> Report:
    audit = example_audit(args.field or 2)
    split = audit["split_1_4"]
    literal = audit["literal_pair"]
    verdict = {
        "conventions_matched": all(v["matched"] == 6 for v in audit["conventions"].values()),
        "literal_pair_valid": any(v["valid"] for v in literal.values()),
        "split_1_4_count": len(split),
    }
    return Report("paper-audit", {"quiver": audit["quiver"]}, "ok", data={**audit, "summary": verdict})


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--field", type=int, default=None, help="override the field characteristic")
    common.add_argument("--out", default=None, help="write the report to a file")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")

    parser = argparse.ArgumentParser(prog="tstrx", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tstrx {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inds", parents=[common], help="list indecomposables")
    p.add_argument("quiver")
    p.set_defaults(func=cmd_inds)

    p = sub.add_parser("torsion", parents=[common], help="enumerate or check torsion pairs")
    p.add_argument("quiver")
    p.add_argument("action", choices=("enumerate", "check"))
    p.add_argument("tset", nargs="?")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("tstruct", parents=[common], help="validate, truncate or enumerate chains")
    p.add_argument("target", help="chain file, or a quiver spec for enumerate")
    p.add_argument("action", choices=("validate", "truncate", "enumerate"))
    p.add_argument("rest", nargs="*")
    p.set_defaults(func=cmd_tstruct)

    p = sub.add_parser("distance", parents=[common], help="distance to the standard t-structure")
    p.add_argument("target", help="chain file, or a quiver spec for construct")
    p.add_argument("action", choices=("compute", "audit", "construct"))
    p.add_argument("rest", nargs="*")
    p.add_argument("--chain-out", default=None, help="write the constructed chain file here")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("paper-audit", parents=[common], help="audit of the linear A3 example")
    p.set_defaults(func=cmd_paper_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except InternalInconsistency as exc:
        print(f"tstrx: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (TstrxError, ValueError, OSError) as exc:
        print(f"tstrx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timings:
        report.timings = {"seconds": round(time.perf_counter() - start, 4)}
    text = report.to_json(with_timings=args.timings) if args.format == "json" else report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
