"""Audit of the linear A3 example: labels, the stated torsion pair, and the distance-n pipeline."""
from __future__ import annotations

from tstrx.distance import compute_distance, construct_distance_n
from tstrx.quiver_rep import Quiver, enumerate_indecomposables, ind_from_dimvec, parse_quiver, sort_inds
from tstrx.torsion import check_torsion_pair, enumerate_torsion_pairs, is_ext_split, labels

# Columns of the example's table, read top to bottom, with the printed labels.
EXAMPLE_COLUMNS = (
    ("P3", (1, 1, 1)),
    ("P2", (0, 1, 1)),
    ("P1", (0, 0, 1)),
    ("I2", (1, 1, 0)),
    ("S1", (1, 0, 0)),
    ("S2", (0, 1, 0)),
)
EXAMPLE_T = ("P3",)
EXAMPLE_F = ("P2", "I2", "S1", "S2")

# Top row is vertex 1, or bottom row is vertex 1.
READINGS = {"top-down": lambda v: v, "bottom-up": lambda v: tuple(reversed(v))}


def _role(ind) -> list[str]:
    out = []
    if ind.is_projective:
        out.append("projective")
    if ind.is_injective:
        out.append("injective")
    if ind.is_simple:
        out.append("simple")
    return out


def convention_table(q: Quiver) -> dict:
    inds = {M.dimvec: M for M in enumerate_indecomposables(q)}
    out = {}
    for name, read in READINGS.items():
        rows = []
        for label, column in EXAMPLE_COLUMNS:
            dv = read(column)
            M = inds.get(dv)
            rows.append({"label": label, "dimvec": list(dv), "matched": M is not None,
                         "roles": _role(M) if M else []})
        out[name] = {"rows": rows, "matched": sum(r["matched"] for r in rows)}
    return out


def literal_pair_check(q: Quiver) -> dict:
    by_label = dict(EXAMPLE_COLUMNS)
    out = {}
    for name, read in READINGS.items():
        tset = {ind_from_dimvec(q, read(by_label[x])) for x in EXAMPLE_T}
        fset = {ind_from_dimvec(q, read(by_label[x])) for x in EXAMPLE_F}
        r = check_torsion_pair(q, tset, fset)
        entry = {"T": labels(tset), "F": labels(fset), "valid": bool(r)}
        if not r:
            entry.update({"closure": r.closure, "module": r.module.label if r.module else None,
                          "detail": r.detail})
        out[name] = entry
    return out


def distance_pipeline(tp, max_n: int = 3) -> list[dict]:
    rows = []
    for n in range(1, max_n + 1):
        ts = construct_distance_n(tp, n)
        row = {"n": n, "verdict": ts.validated.verdict.value}
        if ts.accepted:
            res = compute_distance(ts)
            row.update({"d": res.d, "m_d": res.m_d})
        else:
            row["witnesses"] = [dict(w) for w in ts.validated.witnesses]
        rows.append(row)
    return rows


def _pair_entry(tp, max_n: int) -> dict:
    split = is_ext_split(tp)
    entry = {"T": labels(tp.tset), "F": labels(tp.fset), "nontrivial": tp.nontrivial, "ext_split": bool(split)}
    if not split:
        entry["ext_witness"] = {"T": split.witness[0].label, "F": split.witness[1].label, "dim": split.dim}
    entry["pipeline"] = distance_pipeline(tp, max_n)
    return entry


def split_search(q: Quiver, t_size: int = 1, f_size: int = 4, max_n: int = 3) -> list[dict]:
    """Torsion pairs whose supports have sizes ``(t_size, f_size)``, each run through the pipeline."""
    hits = [tp for tp in enumerate_torsion_pairs(q) if len(tp.tset) == t_size and len(tp.fset) == f_size]
    return [_pair_entry(tp, max_n) for tp in hits]


def ext_split_pairs(q: Quiver, max_n: int = 3) -> list[dict]:
    """Every Ext-split non-trivial torsion pair, with the pipeline run for ``n <= max_n``."""
    return [_pair_entry(tp, max_n) for tp in enumerate_torsion_pairs(q) if tp.nontrivial and is_ext_split(tp)]


def example_audit(field: int = 2) -> dict:
    q = parse_quiver(f"A3:RR@{field}")
    return {
        "quiver": q.spec,
        "conventions": convention_table(q),
        "literal_pair": literal_pair_check(q),
        "split_1_4": split_search(q),
        "ext_split_pairs": ext_split_pairs(q),
    }
